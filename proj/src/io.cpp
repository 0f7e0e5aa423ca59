#include "gcm/io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include <fmt/format.h>

namespace gcm {

namespace {

const Json& req(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(fmt::format("missing field '{}'", key));
    return j.at(key);
}

std::string as_str(const Json& j, const char* what) {
    if (!j.is_string()) throw SchemaError(fmt::format("{} must be a string", what));
    return j.get<std::string>();
}

int as_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) throw SchemaError(fmt::format("{} must be an integer", what));
    return j.get<int>();
}

const Json& as_array(const Json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(fmt::format("{} must be an array", what));
    return j;
}

std::vector<std::string> str_list(const Json& j, const char* what) {
    std::vector<std::string> out;
    for (const auto& e : as_array(j, what)) out.push_back(as_str(e, what));
    return out;
}

int lookup(const std::vector<std::string>& names, const Json& j, const char* what) {
    std::string s = as_str(j, what);
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw SchemaError(fmt::format("unknown {} '{}'", what, s));
    return (int)(it - names.begin());
}

// [key, value]
std::pair<const Json&, const Json&> pair_of(const Json& e, const char* what) {
    if (!e.is_array() || e.size() != 2) throw SchemaError(fmt::format("{} entries must be [key, value] pairs", what));
    return {e[0], e[1]};
}

Json pr(Json a, Json b) { return Json::array({std::move(a), std::move(b)}); }

std::vector<std::string> object_names(const FinGroupoid& g) { return g.cat.object_names; }

FinGroupoid lenient_groupoid(const FinCategory& cat) {
    FinGroupoid out;
    out.cat = cat;
    int m = cat.num_arrows();
    out.inv.assign(m, -1);
    bool well_formed = (int)cat.table.size() == m * m && (int)cat.identity.size() == cat.num_objects();
    if (!well_formed) return out;
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h)
            if (cat.compose(g, h) == cat.identity[cat.dst[g]] && cat.compose(h, g) == cat.identity[cat.src[g]]) {
                out.inv[g] = h;
                break;
            }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- envelope

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw SchemaError("document must be an object");
    std::string version = as_str(req(j, "format_version"), "format_version");
    if (version != kFormatVersion) throw SchemaError(fmt::format("unsupported format_version '{}'", version));
    Document d;
    d.kind = as_str(req(j, "kind"), "kind");
    static const std::vector<std::string> kinds{"category",          "groupoid",    "correspondence", "diagram",
                                                "complex_of_groups", "selfsimilar", "mn",             "action"};
    if (std::find(kinds.begin(), kinds.end(), d.kind) == kinds.end())
        throw SchemaError(fmt::format("unknown kind '{}'", d.kind));
    d.payload = req(j, "payload");
    return d;
}

Document read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(fmt::format("cannot read {}", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

std::string dump_json(const Json& j) { return j.dump(2, ' ', false) + "\n"; }

std::string dump_document(const Document& doc) {
    Json j;
    j["format_version"] = kFormatVersion;
    j["kind"] = doc.kind;
    j["payload"] = doc.payload;
    return dump_json(j);
}

// ---------------------------------------------------------------- categories, groups, groupoids

FinCategory category_from_json(const Json& j) {
    CategoryBuilder b;
    auto objects = str_list(req(j, "objects"), "objects");
    std::map<std::string, std::string> id_names;
    if (j.contains("identities"))
        for (const auto& e : as_array(j.at("identities"), "identities")) {
            auto [k, v] = pair_of(e, "identities");
            id_names[as_str(k, "object")] = as_str(v, "identity name");
        }
    for (const auto& o : objects) b.add_object(o, id_names.count(o) ? id_names[o] : "");
    FinCategory partial = b.build();
    std::vector<std::string> arrows = partial.arrow_names;
    if (j.contains("arrows"))
        for (const auto& a : as_array(j.at("arrows"), "arrows")) {
            std::string name = as_str(req(a, "name"), "arrow name");
            if (std::find(arrows.begin(), arrows.end(), name) != arrows.end())
                throw SchemaError(fmt::format("duplicate arrow '{}'", name));
            b.add_arrow(name, lookup(objects, req(a, "src"), "object"), lookup(objects, req(a, "dst"), "object"));
            arrows.push_back(name);
        }
    if (j.contains("compose"))
        for (const auto& e : as_array(j.at("compose"), "compose")) {
            auto [k, v] = pair_of(e, "compose");
            if (!k.is_array() || k.size() != 2) throw SchemaError("compose keys must be [g, h]");
            b.set_compose(lookup(arrows, k[0], "arrow"), lookup(arrows, k[1], "arrow"), lookup(arrows, v, "arrow"));
        }
    return b.build();
}

Json category_to_json(const FinCategory& c) {
    Json j;
    j["objects"] = c.object_names;
    Json ids = Json::array();
    for (int x = 0; x < c.num_objects(); ++x)
        if (c.arrow_names[c.identity[x]] != "1_" + c.object_names[x])
            ids.push_back(pr(c.object_names[x], c.arrow_names[c.identity[x]]));
    if (!ids.empty()) j["identities"] = ids;
    Json arrows = Json::array();
    for (int g = 0; g < c.num_arrows(); ++g)
        if (!c.is_identity(g))
            arrows.push_back({{"name", c.arrow_names[g]}, {"src", c.object_names[c.src[g]]}, {"dst", c.object_names[c.dst[g]]}});
    j["arrows"] = arrows;
    Json comp = Json::array();
    for (int g = 0; g < c.num_arrows(); ++g)
        for (int h = 0; h < c.num_arrows(); ++h) {
            int gh = c.compose(g, h);
            if (gh < 0 || c.is_identity(g) || c.is_identity(h)) continue;
            comp.push_back(pr(pr(c.arrow_names[g], c.arrow_names[h]), c.arrow_names[gh]));
        }
    j["compose"] = comp;
    return j;
}

FinGroup group_from_json(const Json& j) {
    auto names = str_list(req(j, "elements"), "elements");
    const Json& rows = as_array(req(j, "table"), "table");
    int n = (int)names.size();
    if ((int)rows.size() != n) throw SchemaError("group table must have one row per element");
    std::vector<int> table;
    for (const auto& row : rows) {
        if (!row.is_array() || (int)row.size() != n) throw SchemaError("group table rows must have one entry per element");
        for (const auto& e : row) table.push_back(lookup(names, e, "group element"));
    }
    try {
        return FinGroup::from_table(names, table);
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(e.what());
    }
}

Json group_to_json(const FinGroup& g) {
    Json rows = Json::array();
    for (int a = 0; a < g.order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.names[g.mul(a, b)]);
        rows.push_back(row);
    }
    return {{"elements", g.names}, {"table", rows}};
}

FinGroupoid groupoid_from_json(const Json& j) {
    if (j.contains("space")) return FinGroupoid::space(str_list(j.at("space"), "space"));
    if (j.contains("group")) {
        const Json& gj = j.at("group");
        auto names = str_list(req(gj, "elements"), "elements");
        const Json& rows = as_array(req(gj, "table"), "table");
        int n = (int)names.size();
        std::vector<int> table;
        if ((int)rows.size() != n) throw SchemaError("group table must have one row per element");
        for (const auto& row : rows) {
            if (!row.is_array() || (int)row.size() != n) throw SchemaError("group table rows must have one entry per element");
            for (const auto& e : row) table.push_back(lookup(names, e, "group element"));
        }
        FinCategory c = monoid_category(names, table);
        if (j.contains("object")) c.object_names = {as_str(j.at("object"), "object")};
        return lenient_groupoid(c);
    }
    return lenient_groupoid(category_from_json(j));
}

Json groupoid_to_json(const FinGroupoid& g) { return category_to_json(g.cat); }

// ---------------------------------------------------------------- correspondences

Correspondence correspondence_body_from_json(const Json& j, GroupoidPtr H, GroupoidPtr G) {
    std::vector<std::string> names;
    std::vector<int> r, s;
    auto hobj = object_names(*H), gobj = object_names(*G);
    for (const auto& e : as_array(req(j, "elements"), "elements")) {
        names.push_back(as_str(req(e, "name"), "element name"));
        r.push_back(lookup(hobj, req(e, "r"), "left object"));
        s.push_back(lookup(gobj, req(e, "s"), "right object"));
    }
    {
        auto sorted = names;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw SchemaError("duplicate element names");
    }
    int n = (int)names.size();
    std::map<std::pair<int, int>, int> left, right;
    auto read_table = [&](const char* key, const std::vector<std::string>& arrows, bool is_left,
                          std::map<std::pair<int, int>, int>& out) {
        if (!j.contains(key)) return;
        for (const auto& e : as_array(j.at(key), key)) {
            auto [k, v] = pair_of(e, key);
            if (!k.is_array() || k.size() != 2) throw SchemaError(fmt::format("{} keys must be pairs", key));
            int a = lookup(arrows, is_left ? k[0] : k[1], "arrow");
            int x = lookup(names, is_left ? k[1] : k[0], "element");
            out[{a, x}] = lookup(names, v, "element");
        }
    };
    read_table("left", H->cat.arrow_names, true, left);
    read_table("right", G->cat.arrow_names, false, right);
    Correspondence c = make_correspondence(
        H, G, names, r, s,
        [&](int h, int x) {
            auto it = left.find({h, x});
            if (it != left.end()) return it->second;
            return H->is_unit(h) ? x : -1;
        },
        [&](int x, int g) {
            auto it = right.find({g, x});
            if (it != right.end()) return it->second;
            return G->is_unit(g) ? x : -1;
        });
    (void)n;
    return c;
}

Json correspondence_body_to_json(const Correspondence& c) {
    Json els = Json::array();
    for (int x = 0; x < c.n; ++x)
        els.push_back({{"name", c.names[x]}, {"r", c.H->object_name(c.r[x])}, {"s", c.G->object_name(c.s[x])}});
    Json left = Json::array(), right = Json::array();
    for (int h = 0; h < c.H->num_arrows(); ++h) {
        if (c.H->is_unit(h)) continue;
        for (int x = 0; x < c.n; ++x) {
            int y = c.left(h, x);
            if (y >= 0) left.push_back(pr(pr(c.H->name(h), c.names[x]), c.names[y]));
        }
    }
    for (int g = 0; g < c.G->num_arrows(); ++g) {
        if (c.G->is_unit(g)) continue;
        for (int x = 0; x < c.n; ++x) {
            int y = c.right(x, g);
            if (y >= 0) right.push_back(pr(pr(c.names[x], c.G->name(g)), c.names[y]));
        }
    }
    return {{"elements", els}, {"left", left}, {"right", right}};
}

Correspondence correspondence_from_json(const Json& j) {
    auto H = std::make_shared<const FinGroupoid>(groupoid_from_json(req(j, "H")));
    auto G = std::make_shared<const FinGroupoid>(groupoid_from_json(req(j, "G")));
    return correspondence_body_from_json(j, H, G);
}

Json correspondence_to_json(const Correspondence& c) {
    Json j = correspondence_body_to_json(c);
    j["H"] = groupoid_to_json(*c.H);
    j["G"] = groupoid_to_json(*c.G);
    return j;
}

// ---------------------------------------------------------------- diagrams

namespace {

PresentedShape shape_from_json(const Json& j) {
    std::string kind = as_str(req(j, "kind"), "shape kind");
    int bound = j.contains("bound") ? as_int(j.at("bound"), "bound") : 3;
    if (bound < 0) throw SchemaError("bound must be nonnegative");
    if (kind == "free_monoid") return PresentedShape::free_monoid(str_list(req(j, "generators"), "generators"), bound);
    if (kind == "free_commutative")
        return PresentedShape::free_commutative(str_list(req(j, "generators"), "generators"), bound);
    if (kind == "path") {
        auto objects = str_list(req(j, "objects"), "objects");
        std::vector<std::string> edges;
        std::vector<int> src, dst;
        for (const auto& e : as_array(req(j, "edges"), "edges")) {
            edges.push_back(as_str(req(e, "name"), "edge name"));
            src.push_back(lookup(objects, req(e, "src"), "object"));
            dst.push_back(lookup(objects, req(e, "dst"), "object"));
        }
        return PresentedShape::path_category(objects, edges, src, dst, bound);
    }
    if (kind == "group") return PresentedShape::group(category_from_json(req(j, "category")));
    if (kind == "finite") return PresentedShape::finite(category_from_json(req(j, "category")));
    throw SchemaError(fmt::format("unknown shape kind '{}'", kind));
}

Json shape_to_json(const PresentedShape& s) {
    switch (s.kind) {
        case ShapeKind::FreeMonoid:
            return {{"kind", "free_monoid"}, {"generators", s.gen_names}, {"bound", s.length_bound}};
        case ShapeKind::FreeCommutative:
            return {{"kind", "free_commutative"}, {"generators", s.gen_names}, {"bound", s.length_bound}};
        case ShapeKind::PathCategory: {
            Json edges = Json::array();
            for (size_t i = 0; i < s.gen_names.size(); ++i)
                edges.push_back({{"name", s.gen_names[i]},
                                 {"src", s.object_names[s.gen_src[i]]},
                                 {"dst", s.object_names[s.gen_dst[i]]}});
            return {{"kind", "path"}, {"objects", s.object_names}, {"edges", edges}, {"bound", s.length_bound}};
        }
        case ShapeKind::Group:
            return {{"kind", "group"}, {"category", category_to_json(s.cat)}};
        case ShapeKind::Finite:
            return {{"kind", "finite"}, {"category", category_to_json(s.cat)}};
    }
    return {};
}

std::vector<std::string> arrow_names(const Diagram& d) {
    std::vector<std::string> out;
    for (int g = 0; g < d.num_arrows(); ++g) out.push_back(d.arrow_name(g));
    return out;
}

}  // namespace

Diagram diagram_from_json(const Json& j) {
    PresentedShape shape = shape_from_json(req(j, "shape"));
    std::vector<GroupoidPtr> groupoids(shape.num_objects());
    for (const auto& e : as_array(req(j, "groupoids"), "groupoids")) {
        auto [k, v] = pair_of(e, "groupoids");
        int x = lookup(shape.object_names, k, "shape object");
        groupoids[x] = std::make_shared<const FinGroupoid>(groupoid_from_json(v));
    }
    for (int x = 0; x < shape.num_objects(); ++x)
        if (!groupoids[x]) throw SchemaError(fmt::format("no groupoid at object '{}'", shape.object_names[x]));

    Diagram skel = diagram_skeleton(shape, groupoids);
    auto names = arrow_names(skel);
    std::map<int, Correspondence> corr;
    for (const auto& e : as_array(req(j, "correspondences"), "correspondences")) {
        auto [k, v] = pair_of(e, "correspondences");
        int g = lookup(names, k, "shape arrow");
        corr[g] = correspondence_body_from_json(v, groupoids[skel.dst(g)], groupoids[skel.src(g)]);
    }
    try {
        if (shape.is_free() || shape.kind == ShapeKind::FreeCommutative) {
            std::vector<Correspondence> gens;
            for (const auto& a : shape.generators()) {
                int g = skel.find(a);
                auto it = corr.find(g);
                if (it == corr.end()) throw SchemaError(fmt::format("no correspondence for generator '{}'", shape.name(a)));
                gens.push_back(it->second);
            }
            std::map<std::pair<int, int>, std::vector<int>> braid;
            if (j.contains("braid")) {
                for (const auto& e : as_array(j.at("braid"), "braid")) {
                    auto [k, v] = pair_of(e, "braid");
                    if (!k.is_array() || k.size() != 2) throw SchemaError("braid keys must be [j, i]");
                    int gj = lookup(shape.gen_names, k[0], "generator");
                    int gi = lookup(shape.gen_names, k[1], "generator");
                    Composite from = compose(gens[gj], gens[gi]), to = compose(gens[gi], gens[gj]);
                    std::vector<int> map(from.c.n, -1);
                    for (const auto& p : as_array(v, "braid map")) {
                        auto [a, b] = pair_of(p, "braid map");
                        map[lookup(from.c.names, a, "composite element")] = lookup(to.c.names, b, "composite element");
                    }
                    braid[{gj, gi}] = map;
                }
            }
            return extend_from_generators(shape, groupoids, gens, braid);
        }
        std::map<std::pair<int, int>, std::vector<int>> mu;
        if (j.contains("mu"))
            for (const auto& e : as_array(j.at("mu"), "mu")) {
                auto [k, v] = pair_of(e, "mu");
                if (!k.is_array() || k.size() != 2) throw SchemaError("mu keys must be [g, h]");
                int g = lookup(names, k[0], "shape arrow"), h = lookup(names, k[1], "shape arrow");
                int gh = skel.compose(g, h);
                if (gh < 0) throw SchemaError("mu given for a non-composable pair");
                auto cg = corr.count(g) ? corr.at(g) : skel.corr[g];
                auto ch = corr.count(h) ? corr.at(h) : skel.corr[h];
                auto cgh = corr.count(gh) ? corr.at(gh) : skel.corr[gh];
                std::vector<int> t((size_t)cg.n * ch.n, -1);
                for (const auto& p : as_array(v, "mu table")) {
                    auto [a, b] = pair_of(p, "mu table");
                    if (!a.is_array() || a.size() != 2) throw SchemaError("mu table keys must be [ξ, η]");
                    int xi = lookup(cg.names, a[0], "element"), eta = lookup(ch.names, a[1], "element");
                    t[(size_t)xi * ch.n + eta] = lookup(cgh.names, b, "element");
                }
                mu[{g, h}] = t;
            }
        return diagram_from_tables(shape, groupoids, corr, mu);
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        throw SchemaError(e.what());
    }
}

Json diagram_to_json(const Diagram& d) {
    Json j;
    j["shape"] = shape_to_json(d.shape);
    Json gs = Json::array();
    for (int x = 0; x < d.shape.num_objects(); ++x) gs.push_back(pr(d.shape.object_names[x], groupoid_to_json(*d.groupoids[x])));
    j["groupoids"] = gs;
    Json cs = Json::array();
    if (d.shape.is_free() || d.shape.kind == ShapeKind::FreeCommutative) {
        for (const auto& a : d.shape.generators()) {
            int g = d.find(a);
            cs.push_back(pr(d.arrow_name(g), correspondence_body_to_json(d.corr[g])));
        }
        if (d.shape.kind == ShapeKind::FreeCommutative && !d.braid.empty()) {
            Json bs = Json::array();
            for (const auto& [key, map] : d.braid) {
                auto [gj, gi] = key;
                Composite from = compose(d.gen_corr[gj], d.gen_corr[gi]), to = compose(d.gen_corr[gi], d.gen_corr[gj]);
                Json pairs = Json::array();
                for (size_t a = 0; a < map.size(); ++a)
                    if (map[a] >= 0) pairs.push_back(pr(from.c.names[a], to.c.names[map[a]]));
                bs.push_back(pr(pr(d.shape.gen_names[gj], d.shape.gen_names[gi]), pairs));
            }
            j["braid"] = bs;
        }
    } else {
        for (int g = 0; g < d.num_arrows(); ++g)
            if (!d.is_identity(g)) cs.push_back(pr(d.arrow_name(g), correspondence_body_to_json(d.corr[g])));
        Json ms = Json::array();
        for (const auto& [key, t] : d.mu) {
            auto [g, h] = key;
            if (d.is_identity(g) || d.is_identity(h)) continue;
            int gh = d.compose(g, h);
            const Correspondence &X = d.corr[g], &Y = d.corr[h], &Z = d.corr[gh];
            Json pairs = Json::array();
            for (int xi = 0; xi < X.n; ++xi)
                for (int eta = 0; eta < Y.n; ++eta) {
                    int z = t[(size_t)xi * Y.n + eta];
                    if (z >= 0) pairs.push_back(pr(pr(X.names[xi], Y.names[eta]), Z.names[z]));
                }
            ms.push_back(pr(pr(d.arrow_name(g), d.arrow_name(h)), pairs));
        }
        j["mu"] = ms;
    }
    j["correspondences"] = cs;
    return j;
}

// ---------------------------------------------------------------- complexes of groups

ComplexOfGroups cgx_from_json(const Json& j) {
    ComplexOfGroups c;
    c.C = category_from_json(req(j, "category"));
    c.groups.assign(c.C.num_objects(), FinGroup::trivial());
    std::vector<char> seen(c.C.num_objects(), 0);
    for (const auto& e : as_array(req(j, "groups"), "groups")) {
        auto [k, v] = pair_of(e, "groups");
        int x = lookup(c.C.object_names, k, "object");
        c.groups[x] = group_from_json(v);
        seen[x] = 1;
    }
    for (int x = 0; x < c.C.num_objects(); ++x)
        if (!seen[x]) throw SchemaError(fmt::format("no group at object '{}'", c.C.object_names[x]));
    c.phi.assign(c.C.num_arrows(), {});
    for (int g = 0; g < c.C.num_arrows(); ++g)
        if (c.C.is_identity(g)) {
            c.phi[g].resize(c.groups[c.C.src[g]].order());
            std::iota(c.phi[g].begin(), c.phi[g].end(), 0);
        }
    if (j.contains("phi"))
        for (const auto& e : as_array(j.at("phi"), "phi")) {
            auto [k, v] = pair_of(e, "phi");
            int g = lookup(c.C.arrow_names, k, "arrow");
            const FinGroup &from = c.groups[c.C.dst[g]], &to = c.groups[c.C.src[g]];
            std::vector<int> map(from.order(), -1);
            for (const auto& p : as_array(v, "phi map")) {
                auto [a, b] = pair_of(p, "phi map");
                map[lookup(from.names, a, "group element")] = lookup(to.names, b, "group element");
            }
            c.phi[g] = map;
        }
    for (int g = 0; g < c.C.num_arrows(); ++g)
        if (c.phi[g].empty()) throw SchemaError(fmt::format("no homomorphism for arrow '{}'", c.C.arrow_names[g]));
    if (j.contains("twist"))
        for (const auto& e : as_array(j.at("twist"), "twist")) {
            auto [k, v] = pair_of(e, "twist");
            if (!k.is_array() || k.size() != 2) throw SchemaError("twist keys must be [g, h]");
            int g = lookup(c.C.arrow_names, k[0], "arrow"), h = lookup(c.C.arrow_names, k[1], "arrow");
            c.twist[{g, h}] = lookup(c.groups[c.C.src[h]].names, v, "group element");
        }
    return c;
}

Json cgx_to_json(const ComplexOfGroups& c) {
    Json j;
    j["category"] = category_to_json(c.C);
    Json gs = Json::array();
    for (int x = 0; x < c.C.num_objects(); ++x) gs.push_back(pr(c.C.object_names[x], group_to_json(c.groups[x])));
    j["groups"] = gs;
    Json ps = Json::array();
    for (int g = 0; g < c.C.num_arrows(); ++g) {
        if (c.C.is_identity(g)) continue;
        const FinGroup &from = c.groups[c.C.dst[g]], &to = c.groups[c.C.src[g]];
        Json pairs = Json::array();
        for (int a = 0; a < from.order(); ++a)
            if (c.phi[g][a] >= 0) pairs.push_back(pr(from.names[a], to.names[c.phi[g][a]]));
        ps.push_back(pr(c.C.arrow_names[g], pairs));
    }
    j["phi"] = ps;
    Json ts = Json::array();
    for (const auto& [key, u] : c.twist)
        if (u != 0)
            ts.push_back(pr(pr(c.C.arrow_names[key.first], c.C.arrow_names[key.second]), c.groups[c.C.src[key.second]].names[u]));
    j["twist"] = ts;
    return j;
}

// ---------------------------------------------------------------- self-similar data

SelfSimilar selfsim_from_json(const Json& j) {
    if (j.contains("letters")) {
        FinGroup g = group_from_json(req(j, "group"));
        auto letters = str_list(j.at("letters"), "letters");
        int A = (int)letters.size();
        std::vector<int> act((size_t)g.order() * A, -1), res((size_t)g.order() * A, -1);
        for (const auto& e : as_array(req(j, "action"), "action")) {
            auto [k, v] = pair_of(e, "action");
            if (!k.is_array() || k.size() != 2 || !v.is_array() || v.size() != 2)
                throw SchemaError("action entries must be [[g, a], [b, h]]");
            int x = lookup(g.names, k[0], "group element"), a = lookup(letters, k[1], "letter");
            act[(size_t)x * A + a] = lookup(letters, v[0], "letter");
            res[(size_t)x * A + a] = lookup(g.names, v[1], "group element");
        }
        for (int a = 0; a < A; ++a) {
            if (act[a] < 0) act[a] = a;
            if (res[a] < 0) res[a] = 0;
        }
        return selfsim_from_group(g, letters, act, res);
    }
    SelfSimilar s;
    s.G = std::make_shared<const FinGroupoid>(groupoid_from_json(req(j, "groupoid")));
    auto verts = s.G->cat.object_names;
    for (const auto& e : as_array(req(j, "edges"), "edges")) {
        s.edge_names.push_back(as_str(req(e, "name"), "edge name"));
        s.er.push_back(lookup(verts, req(e, "range"), "vertex"));
        s.es.push_back(lookup(verts, req(e, "source"), "vertex"));
    }
    int E = s.num_edges();
    s.act.assign((size_t)s.G->num_arrows() * E, -1);
    s.res.assign((size_t)s.G->num_arrows() * E, -1);
    for (const auto& e : as_array(req(j, "action"), "action")) {
        auto [k, v] = pair_of(e, "action");
        if (!k.is_array() || k.size() != 2 || !v.is_array() || v.size() != 2)
            throw SchemaError("action entries must be [[g, e], [f, h]]");
        int g = lookup(s.G->cat.arrow_names, k[0], "arrow"), x = lookup(s.edge_names, k[1], "edge");
        s.act[(size_t)g * E + x] = lookup(s.edge_names, v[0], "edge");
        s.res[(size_t)g * E + x] = lookup(s.G->cat.arrow_names, v[1], "arrow");
    }
    // units act trivially unless stated
    for (int x = 0; x < s.G->num_objects(); ++x) {
        int u = s.G->unit(x);
        for (int e = 0; e < E; ++e)
            if (s.er[e] == x && s.act[(size_t)u * E + e] < 0) {
                s.act[(size_t)u * E + e] = e;
                s.res[(size_t)u * E + e] = s.G->unit(s.es[e]);
            }
    }
    return s;
}

Json selfsim_to_json(const SelfSimilar& s) {
    Json j;
    j["groupoid"] = groupoid_to_json(*s.G);
    Json edges = Json::array();
    for (int e = 0; e < s.num_edges(); ++e)
        edges.push_back({{"name", s.edge_names[e]}, {"range", s.G->object_name(s.er[e])}, {"source", s.G->object_name(s.es[e])}});
    j["edges"] = edges;
    Json act = Json::array();
    for (int g = 0; g < s.G->num_arrows(); ++g) {
        if (s.G->is_unit(g)) continue;
        for (int e = 0; e < s.num_edges(); ++e) {
            int f = s.act_on(g, e);
            if (f < 0) continue;
            act.push_back(pr(pr(s.G->name(g), s.edge_names[e]), pr(s.edge_names[f], s.G->name(s.restrict_to(g, e)))));
        }
    }
    j["action"] = act;
    return j;
}

// ---------------------------------------------------------------- (m,n) and actions

MNDocument mn_from_json(const Json& j) {
    MNDocument d;
    d.m = as_int(req(j, "m"), "m");
    d.n = as_int(req(j, "n"), "n");
    if (d.m < 1 || d.n < 1) throw SchemaError("m and n must be positive");
    for (const auto& p : as_array(req(j, "points"), "points")) {
        d.names.push_back(as_str(req(p, "name"), "point name"));
        d.action.part.push_back(as_int(req(p, "part"), "part"));
    }
    d.action.size = (int)d.names.size();
    auto read_maps = [&](const char* key, int count) {
        const Json& arr = as_array(req(j, key), key);
        if ((int)arr.size() != count) throw SchemaError(fmt::format("expected {} maps in '{}'", count, key));
        std::vector<std::vector<int>> out;
        for (const auto& m : arr) {
            std::vector<int> f(d.action.size, -1);
            for (const auto& p : as_array(m, key)) {
                auto [a, b] = pair_of(p, key);
                f[lookup(d.names, a, "point")] = lookup(d.names, b, "point");
            }
            out.push_back(f);
        }
        return out;
    };
    d.action.h = read_maps("h", d.n);
    d.action.v = read_maps("v", d.m);
    return d;
}

Json mn_to_json(const MNDocument& d) {
    Json pts = Json::array();
    for (int y = 0; y < d.action.size; ++y) pts.push_back({{"name", d.names[y]}, {"part", d.action.part[y]}});
    auto maps = [&](const std::vector<std::vector<int>>& fs) {
        Json out = Json::array();
        for (const auto& f : fs) {
            Json pairs = Json::array();
            for (int y = 0; y < (int)f.size(); ++y)
                if (f[y] >= 0) pairs.push_back(pr(d.names[y], d.names[f[y]]));
            out.push_back(pairs);
        }
        return out;
    };
    return {{"m", d.m}, {"n", d.n}, {"points", pts}, {"h", maps(d.action.h)}, {"v", maps(d.action.v)}};
}

ActionDocument action_from_json(const Json& j) {
    ActionDocument a;
    a.diagram = diagram_from_json(req(j, "diagram"));
    const Diagram& d = a.diagram;
    FAction& f = a.action;
    for (const auto& p : as_array(req(j, "points"), "points")) {
        a.names.push_back(as_str(req(p, "name"), "point name"));
        int x = lookup(d.shape.object_names, req(p, "piece"), "shape object");
        f.piece.push_back(x);
        f.anchor.push_back(lookup(d.groupoids[x]->cat.object_names, req(p, "anchor"), "object"));
    }
    f.n = (int)a.names.size();
    f.alpha.assign(d.num_arrows(), {});
    auto names = arrow_names(d);
    for (const auto& e : as_array(req(j, "alpha"), "alpha")) {
        auto [k, v] = pair_of(e, "alpha");
        int g = lookup(names, k, "shape arrow");
        auto& al = f.alpha[g];
        al.assign((size_t)d.corr[g].n * f.n, -1);
        for (const auto& p : as_array(v, "alpha map")) {
            auto [key, z] = pair_of(p, "alpha map");
            if (!key.is_array() || key.size() != 2) throw SchemaError("alpha keys must be [ξ, y]");
            int xi = lookup(d.corr[g].names, key[0], "element"), y = lookup(a.names, key[1], "point");
            al[(size_t)xi * f.n + y] = lookup(a.names, z, "point");
        }
    }
    // the G_x action is implicit on trivial groupoids
    for (int x = 0; x < d.shape.num_objects(); ++x) {
        int g = d.identity(x);
        if (!f.alpha[g].empty()) continue;
        if (d.groupoids[x]->num_arrows() != d.groupoids[x]->num_objects())
            throw SchemaError(fmt::format("alpha for identity at '{}' is required", d.shape.object_names[x]));
        const Correspondence& X = d.corr[g];
        f.alpha[g].assign((size_t)X.n * f.n, -1);
        for (int y = 0; y < f.n; ++y)
            if (f.piece[y] == x) f.alpha[g][(size_t)d.groupoids[x]->unit(f.anchor[y]) * f.n + y] = y;
    }
    for (int g : d.generating_arrows())
        if (f.alpha[g].empty()) throw SchemaError(fmt::format("alpha for '{}' is required", d.arrow_name(g)));
    if (auto full = complete_action(d, f)) f = *full;
    return a;
}

Json action_to_json(const ActionDocument& a) {
    const Diagram& d = a.diagram;
    const FAction& f = a.action;
    Json pts = Json::array();
    for (int y = 0; y < f.n; ++y)
        pts.push_back({{"name", a.names[y]},
                       {"piece", d.shape.object_names[f.piece[y]]},
                       {"anchor", d.groupoids[f.piece[y]]->object_name(f.anchor[y])}});
    Json al = Json::array();
    for (int g : d.generating_arrows()) {
        const Correspondence& X = d.corr[g];
        Json pairs = Json::array();
        for (int xi = 0; xi < X.n; ++xi)
            for (int y = 0; y < f.n; ++y) {
                int z = f.act(g, xi, y);
                if (z >= 0) pairs.push_back(pr(pr(X.names[xi], a.names[y]), a.names[z]));
            }
        al.push_back(pr(d.arrow_name(g), pairs));
    }
    return {{"diagram", diagram_to_json(d)}, {"points", pts}, {"alpha", al}};
}

}  // namespace gcm
