#include "gcm/fincat.hpp"

#include <algorithm>
#include <set>

namespace gcm {

int FinCategory::find_object(const std::string& name) const {
    auto it = std::find(object_names.begin(), object_names.end(), name);
    return it == object_names.end() ? -1 : (int)(it - object_names.begin());
}

int FinCategory::find_arrow(const std::string& name) const {
    auto it = std::find(arrow_names.begin(), arrow_names.end(), name);
    return it == arrow_names.end() ? -1 : (int)(it - arrow_names.begin());
}

int CategoryBuilder::add_object(const std::string& name, const std::string& identity_name) {
    int x = (int)cat_.object_names.size();
    cat_.object_names.push_back(name);
    cat_.identity.push_back(add_arrow(identity_name.empty() ? "1_" + name : identity_name, x, x));
    return x;
}

int CategoryBuilder::add_arrow(const std::string& name, int src, int dst) {
    cat_.arrow_names.push_back(name);
    cat_.src.push_back(src);
    cat_.dst.push_back(dst);
    return (int)cat_.arrow_names.size() - 1;
}

void CategoryBuilder::set_compose(int g, int h, int gh) { products_[{g, h}] = gh; }

FinCategory CategoryBuilder::build() const {
    FinCategory c = cat_;
    int m = c.num_arrows();
    c.table.assign((size_t)m * m, -1);
    for (int g = 0; g < m; ++g) {
        c.table[(size_t)c.identity[c.dst[g]] * m + g] = g;
        c.table[(size_t)g * m + c.identity[c.src[g]]] = g;
    }
    for (const auto& [gh, v] : products_) c.table[(size_t)gh.first * m + gh.second] = v;
    return c;
}

Report validate_category(const FinCategory& cat) {
    Report rep;
    int m = cat.num_arrows();
    int n = cat.num_objects();
    if ((int)cat.src.size() != m || (int)cat.dst.size() != m || (int)cat.identity.size() != n ||
        (int)cat.table.size() != m * m) {
        rep.add("malformed category data");
        return rep;
    }
    for (int x = 0; x < n; ++x) {
        int e = cat.identity[x];
        if (e < 0 || e >= m || cat.src[e] != x || cat.dst[e] != x)
            rep.add("identity of object " + cat.object_names[x] + " has wrong endpoints");
    }
    if (!rep.ok()) return rep;
    for (int g = 0; g < m; ++g) {
        for (int h = 0; h < m; ++h) {
            int gh = cat.compose(g, h);
            bool composable = cat.src[g] == cat.dst[h];
            if (composable != (gh >= 0)) {
                rep.add("composition of (" + cat.arrow_names[g] + "," + cat.arrow_names[h] + ") " +
                        (composable ? "undefined" : "defined for non-composable pair"));
                continue;
            }
            if (gh >= 0 && (cat.src[gh] != cat.src[h] || cat.dst[gh] != cat.dst[g]))
                rep.add("endpoint mismatch for (" + cat.arrow_names[g] + "," + cat.arrow_names[h] + ")");
        }
        if (cat.compose(g, cat.identity[cat.src[g]]) != g || cat.compose(cat.identity[cat.dst[g]], g) != g)
            rep.add("identity law fails for " + cat.arrow_names[g]);
    }
    if (!rep.ok()) return rep;
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h) {
            int gh = cat.compose(g, h);
            if (gh < 0) continue;
            for (int k = 0; k < m; ++k) {
                int hk = cat.compose(h, k);
                if (hk < 0) continue;
                if (cat.compose(gh, k) != cat.compose(g, hk))
                    rep.add("associativity fails on (" + cat.arrow_names[g] + "," + cat.arrow_names[h] + "," +
                            cat.arrow_names[k] + ")");
            }
        }
    return rep;
}

FinCategory terminal_category() {
    CategoryBuilder b;
    b.add_object("*");
    return b.build();
}

FinCategory monoid_category(const std::vector<std::string>& names, const std::vector<int>& table) {
    FinCategory c;
    c.object_names = {"*"};
    c.arrow_names = names;
    int m = (int)names.size();
    c.src.assign(m, 0);
    c.dst.assign(m, 0);
    c.identity = {0};
    c.table = table;
    return c;
}

// ---------------------------------------------------------------- shapes

PresentedShape PresentedShape::free_monoid(const std::vector<std::string>& gens, int bound) {
    PresentedShape s;
    s.kind = ShapeKind::FreeMonoid;
    s.object_names = {"*"};
    s.gen_names = gens;
    s.gen_src.assign(gens.size(), 0);
    s.gen_dst.assign(gens.size(), 0);
    s.length_bound = bound;
    return s;
}

PresentedShape PresentedShape::path_category(const std::vector<std::string>& vertices,
                                             const std::vector<std::string>& edges,
                                             const std::vector<int>& src, const std::vector<int>& dst,
                                             int bound) {
    PresentedShape s;
    s.kind = ShapeKind::PathCategory;
    s.object_names = vertices;
    s.gen_names = edges;
    s.gen_src = src;
    s.gen_dst = dst;
    s.length_bound = bound;
    return s;
}

PresentedShape PresentedShape::free_commutative(const std::vector<std::string>& gens, int bound) {
    PresentedShape s = free_monoid(gens, bound);
    s.kind = ShapeKind::FreeCommutative;
    return s;
}

PresentedShape PresentedShape::group(const FinCategory& cat) {
    PresentedShape s = finite(cat);
    s.kind = ShapeKind::Group;
    return s;
}

PresentedShape PresentedShape::finite(const FinCategory& cat) {
    PresentedShape s;
    s.kind = ShapeKind::Finite;
    s.object_names = cat.object_names;
    s.cat = cat;
    s.length_bound = 1;
    return s;
}

ShapeArrow PresentedShape::identity(int x) const {
    switch (kind) {
        case ShapeKind::FreeCommutative:
            return {x, x, std::vector<int>(gen_names.size(), 0)};
        case ShapeKind::Group:
        case ShapeKind::Finite:
            return {x, x, {cat.identity[x]}};
        default:
            return {x, x, {}};
    }
}

bool PresentedShape::is_identity(const ShapeArrow& a) const { return a == identity(a.src); }

std::optional<ShapeArrow> PresentedShape::compose(const ShapeArrow& g, const ShapeArrow& h) const {
    if (g.src != h.dst) return std::nullopt;
    ShapeArrow r{h.src, g.dst, {}};
    switch (kind) {
        case ShapeKind::FreeCommutative:
            r.word = g.word;
            for (size_t i = 0; i < r.word.size(); ++i) r.word[i] += h.word[i];
            break;
        case ShapeKind::Group:
        case ShapeKind::Finite: {
            int c = cat.compose(g.word[0], h.word[0]);
            if (c < 0) return std::nullopt;
            r.word = {c};
            break;
        }
        default:
            r.word = g.word;
            r.word.insert(r.word.end(), h.word.begin(), h.word.end());
    }
    return r;
}

int PresentedShape::length(const ShapeArrow& a) const {
    switch (kind) {
        case ShapeKind::FreeCommutative: {
            int s = 0;
            for (int e : a.word) s += e;
            return s;
        }
        case ShapeKind::Group:
        case ShapeKind::Finite:
            return cat.is_identity(a.word[0]) ? 0 : 1;
        default:
            return (int)a.word.size();
    }
}

std::vector<int> PresentedShape::expansion(const ShapeArrow& a) const {
    if (kind == ShapeKind::FreeCommutative) {
        std::vector<int> out;
        for (size_t i = 0; i < a.word.size(); ++i) out.insert(out.end(), a.word[i], (int)i);
        return out;
    }
    if ((kind == ShapeKind::Group || kind == ShapeKind::Finite) && length(a) == 0) return {};
    return a.word;
}

bool PresentedShape::shortlex_less(const ShapeArrow& a, const ShapeArrow& b) const {
    int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    auto ea = expansion(a), eb = expansion(b);
    if (ea != eb) return ea < eb;
    return std::pair(a.src, a.dst) < std::pair(b.src, b.dst);
}

std::vector<ShapeArrow> PresentedShape::enumerate(int bound) const {
    std::vector<ShapeArrow> out;
    switch (kind) {
        case ShapeKind::Group:
        case ShapeKind::Finite:
            for (int g = 0; g < cat.num_arrows(); ++g) out.push_back({cat.src[g], cat.dst[g], {g}});
            break;
        case ShapeKind::FreeCommutative: {
            int k = (int)gen_names.size();
            std::vector<int> e(k, 0);
            // all exponent vectors with sum ≤ bound
            auto rec = [&](auto&& self, int i, int left) -> void {
                if (i == k) {
                    out.push_back({0, 0, e});
                    return;
                }
                for (int v = 0; v <= left; ++v) {
                    e[i] = v;
                    self(self, i + 1, left - v);
                }
                e[i] = 0;
            };
            rec(rec, 0, bound);
            break;
        }
        default: {
            std::vector<ShapeArrow> layer;
            for (int x = 0; x < num_objects(); ++x) layer.push_back(identity(x));
            out = layer;
            for (int len = 1; len <= bound; ++len) {
                std::vector<ShapeArrow> next;
                for (const auto& w : layer)
                    for (int e = 0; e < (int)gen_names.size(); ++e) {
                        if (gen_dst[e] != w.src) continue;
                        ShapeArrow a = w;
                        a.word.push_back(e);
                        a.src = gen_src[e];
                        next.push_back(a);
                    }
                out.insert(out.end(), next.begin(), next.end());
                layer = std::move(next);
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [this](const ShapeArrow& a, const ShapeArrow& b) { return shortlex_less(a, b); });
    return out;
}

ShapeArrow PresentedShape::generator(int i) const {
    if (kind == ShapeKind::FreeCommutative) {
        std::vector<int> e(gen_names.size(), 0);
        e[i] = 1;
        return {0, 0, e};
    }
    return {gen_src[i], gen_dst[i], {i}};
}

std::vector<ShapeArrow> PresentedShape::generators() const {
    std::vector<ShapeArrow> out;
    if (kind != ShapeKind::Group && kind != ShapeKind::Finite) {
        for (int i = 0; i < (int)gen_names.size(); ++i) out.push_back(generator(i));
        return out;
    }
    int m = cat.num_arrows();
    std::vector<char> reached(m, 0);
    for (int x = 0; x < cat.num_objects(); ++x) reached[cat.identity[x]] = 1;
    for (int g = 0; g < m; ++g) {
        if (reached[g]) continue;
        out.push_back({cat.src[g], cat.dst[g], {g}});
        reached[g] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    if (!reached[a] || !reached[b]) continue;
                    int ab = cat.compose(a, b);
                    if (ab >= 0 && !reached[ab]) reached[ab] = 1, grew = true;
                }
        }
    }
    return out;
}

std::string PresentedShape::name(const ShapeArrow& a) const {
    if (kind == ShapeKind::Group || kind == ShapeKind::Finite) return cat.arrow_names[a.word[0]];
    if (is_identity(a)) return "1_" + object_names[a.src];
    std::string out;
    if (kind == ShapeKind::FreeCommutative) {
        for (size_t i = 0; i < a.word.size(); ++i) {
            if (!a.word[i]) continue;
            if (!out.empty()) out += ".";
            out += gen_names[i];
            if (a.word[i] > 1) out += "^" + std::to_string(a.word[i]);
        }
        return out;
    }
    for (size_t i = 0; i < a.word.size(); ++i) {
        if (i) out += ".";
        out += gen_names[a.word[i]];
    }
    return out;
}

// ---------------------------------------------------------------- Ore

std::string OreResult::describe(const PresentedShape& shape) const {
    switch (status) {
        case IsOre:
            return "IsOre";
        case Unknown:
            return "Unknown";
        default: {
            std::vector<std::string> w;
            for (const auto& a : witness) w.push_back(shape.name(a));
            return "NotOre(condition " + std::to_string(condition) + ", witness (" + join(w, ",") + "))";
        }
    }
}

namespace {

bool is_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

OreResult ore_finite(const PresentedShape& shape) {
    const FinCategory& c = shape.cat;
    int m = c.num_arrows();
    auto arrow = [&](int g) { return ShapeArrow{c.src[g], c.dst[g], {g}}; };
    for (int g1 = 0; g1 < m; ++g1)
        for (int g2 = 0; g2 < m; ++g2) {
            if (c.dst[g1] != c.dst[g2]) continue;
            bool found = false;
            for (int h1 = 0; h1 < m && !found; ++h1) {
                int a = c.compose(g1, h1);
                if (a < 0) continue;
                for (int h2 = 0; h2 < m && !found; ++h2) found = c.compose(g2, h2) == a;
            }
            if (!found) return {OreResult::NotOre, 1, {arrow(g1), arrow(g2)}};
        }
    for (int g = 0; g < m; ++g)
        for (int h1 = 0; h1 < m; ++h1)
            for (int h2 = 0; h2 < m; ++h2) {
                int a = c.compose(g, h1);
                if (a < 0 || c.compose(g, h2) != a) continue;
                bool found = false;
                for (int k = 0; k < m && !found; ++k) {
                    int b = c.compose(h1, k);
                    found = b >= 0 && c.compose(h2, k) == b;
                }
                if (!found) return {OreResult::NotOre, 2, {arrow(g), arrow(h1), arrow(h2)}};
            }
    return {OreResult::IsOre, 0, {}};
}

}  // namespace

OreResult ore_check(const PresentedShape& shape, int search_depth) {
    if (search_depth < 1) throw Error("ore_check: search_depth must be at least 1");
    switch (shape.kind) {
        case ShapeKind::Group:
        case ShapeKind::FreeCommutative:
            return {OreResult::IsOre, 0, {}};
        case ShapeKind::Finite:
            return ore_finite(shape);
        default:
            break;
    }
    // free categories are left cancellative, so condition 2 holds; condition 1 holds for a
    // coterminal pair iff one word is a prefix of the other
    auto arrows = shape.enumerate(search_depth);
    for (const auto& g1 : arrows)
        for (const auto& g2 : arrows) {
            if (g1.dst != g2.dst) continue;
            if (!is_prefix(g1.word, g2.word) && !is_prefix(g2.word, g1.word))
                return {OreResult::NotOre, 1, {g1, g2}};
        }
    std::vector<int> indegree(shape.num_objects(), 0);
    for (int d : shape.gen_dst) ++indegree[d];
    bool certified = std::all_of(indegree.begin(), indegree.end(), [](int k) { return k <= 1; });
    return {certified ? OreResult::IsOre : OreResult::Unknown, 0, {}};
}

// ---------------------------------------------------------------- completion

GroupoidCompletion::GroupoidCompletion(const PresentedShape& shape, int bound)
    : shape_(shape), bound_(bound) {
    arrows_ = shape_.enumerate(bound);
    for (int i = 0; i < (int)arrows_.size(); ++i) arrow_index_[arrows_[i]] = i;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < (int)arrows_.size(); ++i)
        for (int j = 0; j < (int)arrows_.size(); ++j)
            if (arrows_[i].src == arrows_[j].src) pairs.push_back({i, j});
    auto key = [&](const std::pair<int, int>& p) {
        return std::tuple(shape_.length(arrows_[p.first]) + shape_.length(arrows_[p.second]), p.first, p.second);
    };
    std::sort(pairs.begin(), pairs.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
    for (int z = 0; z < (int)pairs.size(); ++z) {
        zigzags_.push_back({arrows_[pairs[z].first], arrows_[pairs[z].second]});
        zigzag_index_[pairs[z]] = z;
    }
    UnionFind uf((int)pairs.size());
    for (int z = 0; z < (int)pairs.size(); ++z) {
        const auto& [g, h] = zigzags_[z];
        for (const auto& k : arrows_) {
            if (k.dst != g.src) continue;
            auto gk = shape_.compose(g, k);
            auto hk = shape_.compose(h, k);
            if (!gk || !hk) continue;
            auto ig = arrow_index_.find(*gk);
            auto ih = arrow_index_.find(*hk);
            if (ig == arrow_index_.end() || ih == arrow_index_.end()) continue;
            uf.unite(z, zigzag_index_.at({ig->second, ih->second}));
        }
    }
    class_of_zigzag_.assign(pairs.size(), -1);
    std::map<int, int> root_class;
    for (int z = 0; z < (int)pairs.size(); ++z) {
        int root = uf.find(z);
        auto it = root_class.find(root);
        if (it == root_class.end()) {
            it = root_class.emplace(root, (int)reps_.size()).first;
            reps_.push_back(zigzags_[z]);
            members_.emplace_back();
        }
        class_of_zigzag_[z] = it->second;
        members_[it->second].push_back(z);
    }
}

int GroupoidCompletion::class_of(const ShapeArrow& g, const ShapeArrow& h) const {
    auto ig = arrow_index_.find(g);
    auto ih = arrow_index_.find(h);
    if (ig == arrow_index_.end() || ih == arrow_index_.end()) return -1;
    auto it = zigzag_index_.find({ig->second, ih->second});
    return it == zigzag_index_.end() ? -1 : class_of_zigzag_[it->second];
}

int GroupoidCompletion::unit(int x) const { return class_of(shape_.identity(x), shape_.identity(x)); }

int GroupoidCompletion::inverse(int c) const { return class_of(reps_[c].bwd, reps_[c].fwd); }

int GroupoidCompletion::embed(const ShapeArrow& g) const { return class_of(g, shape_.identity(g.src)); }

int GroupoidCompletion::multiply(int c1, int c2) const {
    if (src(c1) != dst(c2)) throw Error("completion: classes are not composable");
    for (int z1 : members_[c1])
        for (int z2 : members_[c2]) {
            const auto& [g1, h1] = zigzags_[z1];
            const auto& [g2, h2] = zigzags_[z2];
            for (const auto& k1 : arrows_) {
                if (k1.dst != h1.src) continue;
                auto a = shape_.compose(h1, k1);
                for (const auto& k2 : arrows_) {
                    if (k2.dst != g2.src) continue;
                    if (shape_.compose(g2, k2) != a) continue;
                    int c = class_of(*shape_.compose(g1, k1), *shape_.compose(h2, k2));
                    if (c >= 0) return c;
                }
            }
        }
    throw BoundExceeded("completion product " + name(c1) + " * " + name(c2) + " needs a common multiple beyond bound " +
                        std::to_string(bound_));
}

std::string GroupoidCompletion::name(int c) const {
    return shape_.name(reps_[c].fwd) + "(" + shape_.name(reps_[c].bwd) + ")^-1";
}

GroupoidCompletion groupoid_completion(const PresentedShape& shape, int bound) {
    return GroupoidCompletion(shape, bound);
}

SliceCategory slice_category(const PresentedShape& shape, int x, int bound) {
    SliceCategory out;
    auto all = shape.enumerate(bound);
    for (const auto& g : all)
        if (g.dst == x) out.objects.push_back(g);
    for (int i = 0; i < (int)out.objects.size(); ++i)
        for (int j = 0; j < (int)out.objects.size(); ++j)
            for (const auto& h : all) {
                if (h.dst != out.objects[j].src || h.src != out.objects[i].src) continue;
                if (shape.compose(out.objects[j], h) == out.objects[i]) out.arrows.push_back({i, j, h});
            }
    return out;
}

}  // namespace gcm
