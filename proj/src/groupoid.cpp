#include "gcm/groupoid.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace gcm {

// ---------------------------------------------------------------- groups

int FinGroup::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : (int)(it - names.begin());
}

FinGroup FinGroup::from_table(std::vector<std::string> names, std::vector<int> table) {
    FinGroup g;
    g.names = std::move(names);
    g.table = std::move(table);
    int n = g.order();
    if ((int)g.table.size() != n * n) throw Error("group table has wrong size");
    g.inverses.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mul(a, b) == 0 && g.mul(b, a) == 0) g.inverses[a] = b;
    return g;
}

FinGroup FinGroup::trivial() { return from_table({"1"}, {0}); }

FinGroup FinGroup::cyclic(int n, const std::string& gen) {
    std::vector<std::string> names;
    std::vector<int> table((size_t)n * n);
    for (int i = 0; i < n; ++i) {
        names.push_back(i == 0 ? "1" : i == 1 ? gen : gen + "^" + std::to_string(i));
        for (int j = 0; j < n; ++j) table[(size_t)i * n + j] = (i + j) % n;
    }
    return from_table(names, table);
}

FinGroup FinGroup::product(const FinGroup& a, const FinGroup& b) {
    int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<std::string> names;
    std::vector<int> table((size_t)n * n);
    for (int i = 0; i < n; ++i) names.push_back("(" + a.names[i / nb] + "," + b.names[i % nb] + ")");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[(size_t)i * n + j] = a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    return from_table(names, table);
}

Report validate_group(const FinGroup& g) {
    Report rep;
    int n = g.order();
    if (n == 0) {
        rep.add("empty group");
        return rep;
    }
    for (int a = 0; a < n; ++a) {
        if (g.mul(0, a) != a || g.mul(a, 0) != a) rep.add("element 0 is not an identity at " + g.names[a]);
        if (g.inverses[a] < 0) rep.add("no inverse for " + g.names[a]);
        for (int b = 0; b < n; ++b) {
            int ab = g.mul(a, b);
            if (ab < 0 || ab >= n) {
                rep.add("product out of range");
                return rep;
            }
        }
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
                    rep.add("associativity fails on (" + g.names[a] + "," + g.names[b] + "," + g.names[c] + ")");
    return rep;
}

// ---------------------------------------------------------------- groupoids

FinGroupoid FinGroupoid::from_group(const FinGroup& g, const std::string& object) {
    FinGroupoid out;
    out.cat = monoid_category(g.names, g.table);
    out.cat.object_names = {object};
    out.inv = g.inverses;
    return out;
}

FinGroupoid FinGroupoid::space(const std::vector<std::string>& points) {
    CategoryBuilder b;
    for (const auto& p : points) b.add_object(p, p);
    FinGroupoid out;
    out.cat = b.build();
    out.inv.resize(points.size());
    std::iota(out.inv.begin(), out.inv.end(), 0);
    return out;
}

FinGroupoid FinGroupoid::pair(const std::vector<std::string>& points) {
    std::vector<std::pair<int, int>> arrows;
    std::vector<std::string> labels;
    int n = (int)points.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            arrows.push_back({x, y});
            labels.push_back(x == y ? points[x] : "(" + points[y] + "<-" + points[x] + ")");
        }
    return relation_groupoid(points, arrows, labels);
}

FinGroupoid FinGroupoid::transformation(const FinGroup& g, const std::vector<std::string>& points,
                                        const std::vector<int>& action) {
    int nv = (int)points.size(), ng = g.order(), m = ng * nv;
    FinGroupoid out;
    FinCategory& c = out.cat;
    c.object_names = points;
    c.identity.resize(nv);
    for (int a = 0; a < ng; ++a)
        for (int v = 0; v < nv; ++v) {
            c.arrow_names.push_back(a == 0 ? points[v] : "(" + g.names[a] + "," + points[v] + ")");
            c.src.push_back(v);
            c.dst.push_back(action[(size_t)a * nv + v]);
        }
    for (int v = 0; v < nv; ++v) c.identity[v] = v;
    c.table.assign((size_t)m * m, -1);
    out.inv.resize(m);
    for (int x = 0; x < m; ++x) {
        int a = x / nv, v = x % nv;
        out.inv[x] = g.inv(a) * nv + c.dst[x];
        for (int y = 0; y < m; ++y) {
            int b = y / nv, w = y % nv;
            if (c.src[x] == c.dst[y]) c.table[(size_t)x * m + y] = g.mul(a, b) * nv + w;
        }
        (void)v;
    }
    return out;
}

FinGroupoid FinGroupoid::disjoint_union(const std::vector<FinGroupoid>& parts, const std::vector<std::string>& prefixes) {
    FinGroupoid out;
    FinCategory& c = out.cat;
    std::vector<int> obj_off, arr_off;
    int total = 0;
    for (const auto& p : parts) {
        obj_off.push_back(c.num_objects());
        arr_off.push_back(total);
        total += p.num_arrows();
        for (int x = 0; x < p.num_objects(); ++x) c.object_names.push_back(prefixes.empty() ? p.object_name(x) : prefixes[obj_off.size() - 1] + p.object_name(x));
    }
    c.table.assign((size_t)total * total, -1);
    for (size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        for (int x = 0; x < p.num_objects(); ++x) c.identity.push_back(arr_off[i] + p.unit(x));
        for (int g = 0; g < p.num_arrows(); ++g) {
            c.arrow_names.push_back(prefixes.empty() ? p.name(g) : prefixes[i] + p.name(g));
            c.src.push_back(obj_off[i] + p.src(g));
            c.dst.push_back(obj_off[i] + p.dst(g));
            out.inv.push_back(arr_off[i] + p.inv[g]);
            for (int h = 0; h < p.num_arrows(); ++h) {
                int gh = p.mul(g, h);
                if (gh >= 0) c.table[(size_t)(arr_off[i] + g) * total + arr_off[i] + h] = arr_off[i] + gh;
            }
        }
    }
    return out;
}

FinGroupoid FinGroupoid::from_category(const FinCategory& cat) {
    FinGroupoid out;
    out.cat = cat;
    int m = cat.num_arrows();
    out.inv.assign(m, -1);
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h)
            if (cat.compose(g, h) == cat.identity[cat.dst[g]] && cat.compose(h, g) == cat.identity[cat.src[g]]) {
                out.inv[g] = h;
                break;
            }
    for (int g = 0; g < m; ++g)
        if (out.inv[g] < 0) throw Error("arrow " + cat.arrow_names[g] + " is not invertible");
    return out;
}

Report validate_groupoid(const FinGroupoid& g) {
    Report rep = validate_category(g.cat);
    if (!rep.ok()) return rep;
    if ((int)g.inv.size() != g.num_arrows()) {
        rep.add("inverse map has wrong size");
        return rep;
    }
    for (int a = 0; a < g.num_arrows(); ++a) {
        int b = g.inv[a];
        if (b < 0 || b >= g.num_arrows()) {
            rep.add("inverse of " + g.name(a) + " out of range");
            continue;
        }
        if (g.mul(a, b) != g.unit(g.dst(a)) || g.mul(b, a) != g.unit(g.src(a)))
            rep.add("inverse law fails for " + g.name(a));
        if (g.inv[b] != a) rep.add("inverse is not an involution at " + g.name(a));
    }
    return rep;
}

FinGroupoid relation_groupoid(const std::vector<std::string>& points, const std::vector<std::pair<int, int>>& arrows,
                              const std::vector<std::string>& labels) {
    FinGroupoid out;
    FinCategory& c = out.cat;
    c.object_names = points;
    int m = (int)arrows.size();
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < m; ++i) {
        index[arrows[i]] = i;
        c.arrow_names.push_back(labels[i]);
        c.src.push_back(arrows[i].first);
        c.dst.push_back(arrows[i].second);
    }
    c.identity.assign(points.size(), -1);
    for (int x = 0; x < (int)points.size(); ++x) {
        auto it = index.find({x, x});
        if (it == index.end()) throw Error("relation groupoid lacks a unit at " + points[x]);
        c.identity[x] = it->second;
    }
    c.table.assign((size_t)m * m, -1);
    out.inv.assign(m, -1);
    for (int g = 0; g < m; ++g) {
        auto iv = index.find({arrows[g].second, arrows[g].first});
        if (iv == index.end()) throw Error("relation is not symmetric");
        out.inv[g] = iv->second;
        for (int h = 0; h < m; ++h) {
            if (arrows[h].second != arrows[g].first) continue;
            auto it = index.find({arrows[h].first, arrows[g].second});
            if (it == index.end()) throw Error("relation is not transitive");
            c.table[(size_t)g * m + h] = it->second;
        }
    }
    return out;
}

// ---------------------------------------------------------------- actions

Report validate_action(const GroupoidAction& a) {
    Report rep;
    const FinGroupoid& G = *a.G;
    int n = a.carrier;
    bool left = a.side == Side::Left;
    if ((int)a.anchor.size() != n || (int)a.table.size() != G.num_arrows() * n) {
        rep.add("malformed action data");
        return rep;
    }
    for (int y = 0; y < n; ++y)
        if (a.anchor[y] < 0 || a.anchor[y] >= G.num_objects()) {
            rep.add("anchor of point " + std::to_string(y) + " out of range");
            return rep;
        }
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int y = 0; y < n; ++y) {
            int from = left ? G.src(g) : G.dst(g);
            int to = left ? G.dst(g) : G.src(g);
            int gy = a.act(g, y);
            bool should = a.anchor[y] == from;
            if (should != (gy >= 0)) {
                rep.add("action of " + G.name(g) + " on point " + std::to_string(y) + (should ? " undefined" : " defined off its anchor"));
                continue;
            }
            if (gy < 0) continue;
            if (gy >= n || a.anchor[gy] != to) rep.add("anchor not respected by " + G.name(g) + " at point " + std::to_string(y));
            if (G.is_unit(g) && gy != y) rep.add("unit " + G.name(g) + " moves point " + std::to_string(y));
        }
    if (!rep.ok()) return rep;
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h = 0; h < G.num_arrows(); ++h) {
            int gh = G.mul(g, h);
            if (gh < 0) continue;
            for (int y = 0; y < n; ++y) {
                // left: g·(h·y) = (gh)·y; right: (y·g)·h = y·(gh)
                int first = left ? h : g, second = left ? g : h;
                int t = a.act(first, y);
                if (t < 0) continue;
                if (a.act(second, t) != a.act(gh, y))
                    rep.add("associativity fails for (" + G.name(g) + "," + G.name(h) + ") at point " + std::to_string(y));
            }
        }
    return rep;
}

std::optional<std::pair<int, int>> check_basic(const GroupoidAction& a) {
    for (int y = 0; y < a.carrier; ++y)
        for (int g = 0; g < a.G->num_arrows(); ++g)
            if (!a.G->is_unit(g) && a.act(g, y) == y) return std::pair{y, g};
    return std::nullopt;
}

OrbitSpace orbit_space(const GroupoidAction& a) {
    UnionFind uf(a.carrier);
    for (int g = 0; g < a.G->num_arrows(); ++g)
        for (int y = 0; y < a.carrier; ++y) {
            int gy = a.act(g, y);
            if (gy >= 0) uf.unite(y, gy);
        }
    OrbitSpace out;
    out.proj.assign(a.carrier, -1);
    std::map<int, int> cls;
    for (int y = 0; y < a.carrier; ++y) {
        int r = uf.find(y);
        auto it = cls.find(r);
        if (it == cls.end()) {
            it = cls.emplace(r, out.size()).first;
            out.reps.push_back(y);
        }
        out.proj[y] = it->second;
    }
    return out;
}

// ---------------------------------------------------------------- partial bijections

PartialBijection PartialBijection::identity(int n) {
    PartialBijection p;
    p.map.resize(n);
    std::iota(p.map.begin(), p.map.end(), 0);
    return p;
}

PartialBijection PartialBijection::empty(int n) { return {std::vector<int>(n, -1)}; }

PartialBijection PartialBijection::restricted_identity(int n, const std::vector<int>& domain) {
    PartialBijection p = empty(n);
    for (int y : domain) p.map[y] = y;
    return p;
}

PartialBijection PartialBijection::compose(const PartialBijection& g) const {
    PartialBijection out = empty(size());
    for (int y = 0; y < size(); ++y) {
        int gy = g.map[y];
        if (gy >= 0) out.map[y] = map[gy];
    }
    return out;
}

PartialBijection PartialBijection::inverse() const {
    PartialBijection out = empty(size());
    for (int y = 0; y < size(); ++y)
        if (map[y] >= 0) out.map[map[y]] = y;
    return out;
}

std::vector<int> PartialBijection::domain() const {
    std::vector<int> out;
    for (int y = 0; y < size(); ++y)
        if (map[y] >= 0) out.push_back(y);
    return out;
}

std::vector<int> PartialBijection::image() const {
    std::vector<int> out;
    for (int v : map)
        if (v >= 0) out.push_back(v);
    std::sort(out.begin(), out.end());
    return out;
}

bool PartialBijection::is_injective() const {
    auto im = image();
    return std::adjacent_find(im.begin(), im.end()) == im.end();
}

bool PartialBijection::is_empty() const {
    return std::all_of(map.begin(), map.end(), [](int v) { return v < 0; });
}

bool PartialBijection::extends(const PartialBijection& g) const {
    for (int y = 0; y < size(); ++y)
        if (g.map[y] >= 0 && map[y] != g.map[y]) return false;
    return true;
}

std::string PartialBijection::str() const {
    std::vector<std::string> parts;
    for (int y = 0; y < size(); ++y)
        if (map[y] >= 0) parts.push_back(std::to_string(y) + "->" + std::to_string(map[y]));
    return "{" + join(parts, ",") + "}";
}

std::vector<LabeledMap> pseudogroup_closure(const std::vector<LabeledMap>& gens, int n) {
    std::vector<LabeledMap> out;
    std::map<std::vector<int>, int> seen;
    auto add = [&](const std::string& label, const PartialBijection& p) {
        if (seen.count(p.map)) return;
        seen[p.map] = (int)out.size();
        out.push_back({label, p});
    };
    add("0", PartialBijection::empty(n));
    for (const auto& g : gens) {
        if (!g.map.is_injective()) throw Error("generator " + g.label + " is not injective");
        add(g.label, g.map);
    }
    for (const auto& g : gens) add(g.label + "*", g.map.inverse());
    for (size_t i = 0; i < out.size(); ++i) {
        auto inv = out[i].map.inverse();
        add(out[i].label + "*", inv);
        for (size_t j = 0; j <= i; ++j) {
            LabeledMap a = out[i], b = out[j];
            add(a.label + "." + b.label, a.map.compose(b.map));
            add(b.label + "." + a.label, b.map.compose(a.map));
        }
    }
    return out;
}

namespace {
bool label_less(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}
}  // namespace

GermGroupoid germ_groupoid(const std::vector<LabeledMap>& gens, int n, const std::vector<std::string>& points) {
    auto closure = pseudogroup_closure(gens, n);
    std::map<std::pair<int, int>, std::string> germs;
    for (int y = 0; y < n; ++y) germs[{y, y}] = "1";
    for (const auto& f : closure)
        for (int y = 0; y < n; ++y) {
            int fy = f.map(y);
            if (fy < 0 || fy == y) continue;
            auto it = germs.find({y, fy});
            if (it == germs.end() || label_less(f.label, it->second)) germs[{y, fy}] = f.label;
        }
    std::vector<std::pair<int, int>> arrows;
    std::vector<std::string> labels;
    std::vector<std::string> names = points;
    if (names.empty())
        for (int y = 0; y < n; ++y) names.push_back(std::to_string(y));
    for (const auto& [k, label] : germs) {
        arrows.push_back(k);
        labels.push_back(k.first == k.second ? names[k.first] : "[" + label + "," + names[k.first] + "]");
    }
    GermGroupoid out{relation_groupoid(names, arrows, labels), {}};
    for (const auto& [k, label] : germs) out.labels.push_back(label);
    return out;
}

// ---------------------------------------------------------------- transformation groupoids

TransformationGroupoid transformation_groupoid(const GermCalculus& calc) {
    struct Arrow {
        int t, x, y;
    };
    std::vector<Arrow> arrows;
    std::vector<std::vector<int>> at_point(calc.num_points);
    auto ask = [&](int t, int u, int x) {
        auto r = calc.same_germ(t, u, x);
        if (!r) throw OracleIncomplete("germ oracle declined (" + calc.labels[t] + "," + calc.labels[u] + ") at " + calc.point_names[x]);
        return *r;
    };
    auto locate = [&](int s, int x) -> int {
        auto y = calc.apply(s, x);
        if (!y) return -1;
        for (int a : at_point[x])
            if (arrows[a].y == *y && ask(s, arrows[a].t, x)) return a;
        return -1;
    };
    for (int x = 0; x < calc.num_points; ++x)
        for (int t = 0; t < (int)calc.labels.size(); ++t) {
            auto y = calc.apply(t, x);
            if (!y) continue;
            if (locate(t, x) >= 0) continue;
            at_point[x].push_back((int)arrows.size());
            arrows.push_back({t, x, *y});
        }
    int m = (int)arrows.size();
    FinGroupoid G;
    FinCategory& c = G.cat;
    c.object_names = calc.point_names;
    c.table.assign((size_t)m * m, -1);
    for (const auto& a : arrows) {
        c.arrow_names.push_back("[" + calc.labels[a.t] + "," + calc.point_names[a.x] + "]");
        c.src.push_back(a.x);
        c.dst.push_back(a.y);
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            // arrows[i] ∘ arrows[j]
            if (arrows[j].y != arrows[i].x) continue;
            auto s = calc.product_germ(arrows[i].t, arrows[j].t, arrows[j].x);
            if (!s) throw OracleIncomplete("product of " + c.arrow_names[i] + " and " + c.arrow_names[j] + " not available");
            int k = locate(*s, arrows[j].x);
            if (k < 0) throw OracleIncomplete("product of " + c.arrow_names[i] + " and " + c.arrow_names[j] + " not among the arrows");
            c.table[(size_t)i * m + j] = k;
        }
    c.identity.assign(calc.num_points, -1);
    for (int i = 0; i < m; ++i)
        if (arrows[i].x == arrows[i].y && c.table[(size_t)i * m + i] == i) c.identity[arrows[i].x] = i;
    for (int x = 0; x < calc.num_points; ++x)
        if (c.identity[x] < 0) throw OracleIncomplete("no unit germ at " + calc.point_names[x]);
    G.inv.assign(m, -1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (c.table[(size_t)j * m + i] == c.identity[arrows[i].x] && c.table[(size_t)i * m + j] == c.identity[arrows[i].y]) {
                G.inv[i] = j;
                break;
            }
    for (int i = 0; i < m; ++i)
        if (G.inv[i] < 0) throw OracleIncomplete("no inverse germ for " + c.arrow_names[i]);
    TransformationGroupoid out{std::move(G), {}};
    for (const auto& a : arrows) out.rep.push_back({a.t, a.x});
    return out;
}

GermCalculus pointwise_calculus(const std::vector<LabeledMap>& elems, int n) {
    GermCalculus calc;
    calc.num_points = n;
    for (int y = 0; y < n; ++y) calc.point_names.push_back(std::to_string(y));
    for (const auto& e : elems) calc.labels.push_back(e.label);
    auto maps = std::make_shared<std::vector<PartialBijection>>();
    for (const auto& e : elems) maps->push_back(e.map);
    calc.apply = [maps](int t, int x) -> std::optional<int> {
        int y = (*maps)[t](x);
        return y < 0 ? std::nullopt : std::optional<int>(y);
    };
    calc.same_germ = [maps](int t, int u, int x) -> std::optional<bool> { return (*maps)[t](x) == (*maps)[u](x); };
    calc.product_germ = [maps](int u, int t, int x) -> std::optional<int> {
        int tx = (*maps)[t](x);
        if (tx < 0) return std::nullopt;
        int target = (*maps)[u](tx);
        for (int s = 0; s < (int)maps->size(); ++s)
            if ((*maps)[s](x) == target) return s;
        return std::nullopt;
    };
    return calc;
}

IsgRoundTrip isg_action_vs_groupoid_action(const std::vector<PartialBijection>& on_y,
                                           const std::vector<PartialBijection>& on_x, const std::vector<int>& f) {
    if (on_y.size() != on_x.size()) throw Error("generator lists differ in length");
    int ny = (int)f.size();
    int nx = on_x.empty() ? 0 : on_x[0].size();
    for (size_t t = 0; t < on_y.size(); ++t)
        for (int y = 0; y < ny; ++y) {
            bool dy = on_y[t].defined(y), dx = on_x[t].defined(f[y]);
            if (dy != dx || (dy && f[on_y[t](y)] != on_x[t](f[y])))
                throw NotEquivariant((int)t, y, "map does not intertwine generator " + std::to_string(t) + " at point " + std::to_string(y));
        }
    // concrete S acting jointly on Y ⊔ X
    int n = ny + nx;
    std::vector<LabeledMap> gens;
    for (size_t t = 0; t < on_y.size(); ++t) {
        PartialBijection j = PartialBijection::empty(n);
        for (int y = 0; y < ny; ++y)
            if (on_y[t].defined(y)) j.map[y] = on_y[t](y);
        for (int x = 0; x < nx; ++x)
            if (on_x[t].defined(x)) j.map[ny + x] = ny + on_x[t](x);
        gens.push_back({"s" + std::to_string(t), j});
    }
    auto S = pseudogroup_closure(gens, n);
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < (int)S.size(); ++i) index[S[i].map.map] = i;
    std::vector<int> idempotents;
    for (int i = 0; i < (int)S.size(); ++i)
        if (S[i].map.compose(S[i].map) == S[i].map) idempotents.push_back(i);

    GermCalculus calc;
    calc.num_points = nx;
    for (int x = 0; x < nx; ++x) calc.point_names.push_back(std::to_string(x));
    for (const auto& s : S) calc.labels.push_back(s.label);
    calc.apply = [&](int t, int x) -> std::optional<int> {
        int v = S[t].map(ny + x);
        return v < 0 ? std::nullopt : std::optional<int>(v - ny);
    };
    calc.same_germ = [&](int t, int u, int x) -> std::optional<bool> {
        for (int e : idempotents) {
            if (!S[e].map.defined(ny + x)) continue;
            if (S[t].map.compose(S[e].map) == S[u].map.compose(S[e].map)) return true;
        }
        return false;
    };
    calc.product_germ = [&](int u, int t, int) -> std::optional<int> {
        return index.at(S[u].map.compose(S[t].map).map);
    };
    auto tg = transformation_groupoid(calc);

    IsgRoundTrip out;
    out.groupoid = tg.groupoid;
    auto G = std::make_shared<const FinGroupoid>(tg.groupoid);
    out.action.G = G;
    out.action.side = Side::Left;
    out.action.carrier = ny;
    out.action.anchor = f;
    out.action.table.assign((size_t)G->num_arrows() * ny, -1);
    for (int a = 0; a < G->num_arrows(); ++a) {
        auto [t, x] = tg.rep[a];
        for (int y = 0; y < ny; ++y) {
            if (f[y] != x) continue;
            int v = S[t].map(y);
            // every element with the same germ must agree on y
            for (int u = 0; u < (int)S.size(); ++u) {
                auto ux = calc.apply(u, x);
                if (ux && *ux == G->dst(a) && *calc.same_germ(t, u, x) && S[u].map(y) != v)
                    throw Error("induced action is not well defined");
            }
            out.action.table[(size_t)a * ny + y] = v;
        }
    }
    auto locate = [&](int t, int x) {
        for (int a = 0; a < G->num_arrows(); ++a)
            if (G->src(a) == x && G->dst(a) == *calc.apply(t, x) && *calc.same_germ(t, tg.rep[a].first, x)) return a;
        return -1;
    };
    out.round_trip = validate_action(out.action).ok();
    for (size_t t = 0; t < on_y.size(); ++t) {
        int s = index.at(gens[t].map.map);
        PartialBijection rec = PartialBijection::empty(ny);
        for (int y = 0; y < ny; ++y) {
            if (!calc.apply(s, f[y])) continue;
            int a = locate(s, f[y]);
            if (a >= 0) rec.map[y] = out.action.act(a, y);
        }
        out.recovered.push_back(rec);
        if (rec != on_y[t]) out.round_trip = false;
    }
    return out;
}

}  // namespace gcm
