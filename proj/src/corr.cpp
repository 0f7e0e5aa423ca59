#include "gcm/corr.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gcm/presentation.hpp"

namespace gcm {

int Correspondence::find(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    return it == names.end() ? -1 : (int)(it - names.begin());
}

GroupoidAction left_action(const Correspondence& c) {
    return GroupoidAction{c.H, Side::Left, c.n, c.r, c.lact};
}

GroupoidAction right_action(const Correspondence& c) {
    return GroupoidAction{c.G, Side::Right, c.n, c.s, c.ract};
}

OrbitSpace right_orbits(const Correspondence& c) { return orbit_space(right_action(c)); }

Report validate_correspondence(const Correspondence& c) {
    Report rep;
    if ((int)c.r.size() != c.n || (int)c.s.size() != c.n || (int)c.names.size() != c.n ||
        (int)c.lact.size() != c.H->num_arrows() * c.n || (int)c.ract.size() != c.G->num_arrows() * c.n) {
        rep.add("malformed correspondence data");
        return rep;
    }
    rep.merge(validate_action(left_action(c)), "left action: ");
    rep.merge(validate_action(right_action(c)), "right action: ");
    if (!rep.ok()) return rep;
    const FinGroupoid &H = *c.H, &G = *c.G;
    for (int x = 0; x < c.n; ++x) {
        for (int h = 0; h < H.num_arrows(); ++h) {
            int hx = c.left(h, x);
            if (hx < 0) continue;
            if (c.s[hx] != c.s[x]) rep.add("s(" + H.name(h) + "·" + c.name(x) + ") differs from s(" + c.name(x) + ")");
            for (int g = 0; g < G.num_arrows(); ++g) {
                int xg = c.right(x, g);
                if (xg < 0) continue;
                if (c.right(hx, g) != c.left(h, xg))
                    rep.add("actions do not commute at (" + H.name(h) + ", " + c.name(x) + ", " + G.name(g) + ")");
            }
        }
        for (int g = 0; g < G.num_arrows(); ++g) {
            int xg = c.right(x, g);
            if (xg >= 0 && c.r[xg] != c.r[x]) rep.add("r(" + c.name(x) + "·" + G.name(g) + ") differs from r(" + c.name(x) + ")");
        }
    }
    if (auto w = check_basic(right_action(c)))
        rep.add("right action is not basic: " + G.name(w->second) + " fixes " + c.name(w->first));
    return rep;
}

int inner_product(const Correspondence& c, int x1, int x2) {
    for (int g = 0; g < c.G->num_arrows(); ++g)
        if (c.right(x1, g) == x2) return g;
    throw NotCoOrbital(c.name(x1) + " and " + c.name(x2) + " lie in different orbits");
}

Correspondence make_correspondence(GroupoidPtr H, GroupoidPtr G, std::vector<std::string> names, std::vector<int> r,
                                   std::vector<int> s, const std::function<int(int, int)>& left,
                                   const std::function<int(int, int)>& right) {
    Correspondence c;
    c.n = (int)names.size();
    c.names = std::move(names);
    c.r = std::move(r);
    c.s = std::move(s);
    c.lact.assign((size_t)H->num_arrows() * c.n, -1);
    c.ract.assign((size_t)G->num_arrows() * c.n, -1);
    for (int h = 0; h < H->num_arrows(); ++h)
        for (int x = 0; x < c.n; ++x)
            if (H->src(h) == c.r[x]) c.lact[(size_t)h * c.n + x] = left(h, x);
    for (int g = 0; g < G->num_arrows(); ++g)
        for (int x = 0; x < c.n; ++x)
            if (G->dst(g) == c.s[x]) c.ract[(size_t)g * c.n + x] = right(x, g);
    c.H = std::move(H);
    c.G = std::move(G);
    return c;
}

Correspondence identity_correspondence(GroupoidPtr G) {
    const FinGroupoid& g = *G;
    std::vector<std::string> names;
    std::vector<int> r, s;
    for (int a = 0; a < g.num_arrows(); ++a) {
        names.push_back(g.name(a));
        r.push_back(g.dst(a));
        s.push_back(g.src(a));
    }
    return make_correspondence(
        G, G, names, r, s, [&](int h, int x) { return g.mul(h, x); }, [&](int x, int k) { return g.mul(x, k); });
}

Correspondence from_map(GroupoidPtr W, GroupoidPtr V, const std::vector<int>& f) {
    std::vector<std::string> names;
    std::vector<int> r;
    for (int w = 0; w < W->num_objects(); ++w) {
        names.push_back(W->object_name(w));
        r.push_back(w);
    }
    // only units act
    auto left = [&](int h, int x) { return W->is_unit(h) ? x : -1; };
    auto right = [&](int x, int g) { return V->is_unit(g) ? x : -1; };
    return make_correspondence(W, V, names, r, f, left, right);
}

Composite compose(const Correspondence& x, const Correspondence& y) {
    const FinGroupoid& G = *x.G;
    Composite out;
    out.ny = y.n;
    out.index.assign((size_t)x.n * y.n, -1);
    // pairs are visited in increasing order, so the first pair of each orbit is least
    for (int a = 0; a < x.n; ++a)
        for (int b = 0; b < y.n; ++b) {
            if (x.s[a] != y.r[b] || out.of(a, b) >= 0) continue;
            int e = (int)out.pair_of.size();
            out.pair_of.push_back({a, b});
            for (int g = 0; g < G.num_arrows(); ++g) {
                if (G.src(g) != y.r[b]) continue;
                int a2 = x.right(a, G.inv[g]), b2 = y.left(g, b);
                out.index[(size_t)a2 * y.n + b2] = e;
            }
        }
    std::vector<std::string> names;
    std::vector<int> r, s;
    for (auto [a, b] : out.pair_of) {
        names.push_back("[" + x.name(a) + "," + y.name(b) + "]");
        r.push_back(x.r[a]);
        s.push_back(y.s[b]);
    }
    out.c = make_correspondence(
        x.H, y.G, names, r, s,
        [&](int h, int e) {
            auto [a, b] = out.pair_of[e];
            int ha = x.left(h, a);
            return ha < 0 ? -1 : out.of(ha, b);
        },
        [&](int e, int k) {
            auto [a, b] = out.pair_of[e];
            int bk = y.right(b, k);
            return bk < 0 ? -1 : out.of(a, bk);
        });
    return out;
}

std::vector<int> right_unitor(const Correspondence& x, const Composite& xg) {
    std::vector<int> f;
    for (auto [a, g] : xg.pair_of) f.push_back(x.right(a, g));
    return f;
}

std::vector<int> left_unitor(const Correspondence& x, const Composite& hx) {
    std::vector<int> f;
    for (auto [h, a] : hx.pair_of) f.push_back(x.left(h, a));
    return f;
}

std::vector<int> associator(const Composite& xy_z, const Composite& xy, const Composite& x_yz, const Composite& yz) {
    std::vector<int> f;
    for (auto [e, z] : xy_z.pair_of) {
        auto [x, y] = xy.pair_of[e];
        f.push_back(x_yz.of(x, yz.of(y, z)));
    }
    return f;
}

Report check_isomorphism(const Correspondence& a, const Correspondence& b, const std::vector<int>& f) {
    Report rep;
    if ((int)f.size() != a.n || a.n != b.n) {
        rep.add("carrier sizes differ");
        return rep;
    }
    std::vector<int> seen(b.n, 0);
    for (int x = 0; x < a.n; ++x) {
        if (f[x] < 0 || f[x] >= b.n || seen[f[x]]++) {
            rep.add("map is not a bijection at " + a.name(x));
            return rep;
        }
    }
    for (int x = 0; x < a.n; ++x) {
        if (a.r[x] != b.r[f[x]] || a.s[x] != b.s[f[x]]) rep.add("anchors differ at " + a.name(x));
        for (int h = 0; h < a.H->num_arrows(); ++h) {
            int hx = a.left(h, x);
            if (hx >= 0 && f[hx] != b.left(h, f[x])) rep.add("left action differs at (" + a.H->name(h) + ", " + a.name(x) + ")");
        }
        for (int g = 0; g < a.G->num_arrows(); ++g) {
            int xg = a.right(x, g);
            if (xg >= 0 && f[xg] != b.right(f[x], g)) rep.add("right action differs at (" + a.name(x) + ", " + a.G->name(g) + ")");
        }
    }
    return rep;
}

namespace {

std::vector<std::vector<int>> rows(const std::vector<int>& table, int arrows, int n) {
    std::vector<std::vector<int>> out;
    for (int g = 0; g < arrows; ++g) out.emplace_back(table.begin() + (size_t)g * n, table.begin() + (size_t)(g + 1) * n);
    return out;
}

std::vector<std::vector<int>> action_rows(const Correspondence& c) {
    auto out = rows(c.lact, c.H->num_arrows(), c.n);
    auto rr = rows(c.ract, c.G->num_arrows(), c.n);
    out.insert(out.end(), rr.begin(), rr.end());
    return out;
}

std::vector<int> anchor_colors(const Correspondence& c) {
    std::vector<int> col;
    for (int x = 0; x < c.n; ++x) col.push_back(c.r[x] * c.G->num_objects() + c.s[x]);
    return col;
}

}  // namespace

std::vector<std::vector<int>> isomorphisms(const Correspondence& a, const Correspondence& b) {
    if (a.n != b.n) return {};
    auto maps = equivariant_maps_generic(anchor_colors(a), anchor_colors(b), action_rows(a), action_rows(b));
    std::vector<std::vector<int>> out;
    for (auto& f : maps) {
        std::vector<int> sorted = f;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) out.push_back(f);
    }
    return out;
}

Classification classify(const Correspondence& c) {
    OrbitSpace orb = right_orbits(c);
    std::vector<int> hits(c.H->num_objects(), 0);
    for (int rep : orb.reps) ++hits[c.r[rep]];
    Classification out;
    out.regular = std::all_of(hits.begin(), hits.end(), [](int k) { return k >= 1; });
    out.tight = std::all_of(hits.begin(), hits.end(), [](int k) { return k == 1; });
    return out;
}

bool morita_check(const Correspondence& c, std::string* reason) {
    auto fail = [&](const std::string& why) {
        if (reason) *reason = why;
        return false;
    };
    if (auto w = check_basic(right_action(c))) return fail("right action fixes " + c.name(w->first));
    if (auto w = check_basic(left_action(c))) return fail("left action fixes " + c.name(w->first));
    OrbitSpace ro = orbit_space(right_action(c)), lo = orbit_space(left_action(c));
    std::vector<int> hits_r(c.H->num_objects(), 0), hits_s(c.G->num_objects(), 0);
    for (int x : ro.reps) ++hits_r[c.r[x]];
    for (int x : lo.reps) ++hits_s[c.s[x]];
    for (int k : hits_r)
        if (k != 1) return fail("X/G → H⁰ is not a bijection");
    for (int k : hits_s)
        if (k != 1) return fail("H\\X → G⁰ is not a bijection");
    return true;
}

// ---------------------------------------------------------------- slices

bool is_groupoid_slice(const FinGroupoid& G, const Slice& u) {
    std::set<int> srcs, dsts;
    for (int g : u)
        if (!srcs.insert(G.src(g)).second || !dsts.insert(G.dst(g)).second) return false;
    return true;
}

bool is_slice(const Correspondence& c, const Slice& u) {
    OrbitSpace orb = right_orbits(c);
    std::set<int> srcs, orbits;
    for (int x : u)
        if (!srcs.insert(c.s[x]).second || !orbits.insert(orb.proj[x]).second) return false;
    return true;
}

namespace {

Slice normalize(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

Slice groupoid_star(const FinGroupoid& G, const Slice& u) {
    std::vector<int> out;
    for (int g : u) out.push_back(G.inv[g]);
    return normalize(out);
}

Slice groupoid_mul(const FinGroupoid& G, const Slice& u, const Slice& v) {
    std::vector<int> out;
    for (int g : u)
        for (int h : v)
            if (G.mul(g, h) >= 0) out.push_back(G.mul(g, h));
    return normalize(out);
}

Slice slice_left(const Correspondence& c, const Slice& u, const Slice& v) {
    std::vector<int> out;
    for (int h : u)
        for (int x : v)
            if (c.left(h, x) >= 0) out.push_back(c.left(h, x));
    return normalize(out);
}

Slice slice_right(const Correspondence& c, const Slice& u, const Slice& v) {
    std::vector<int> out;
    for (int x : u)
        for (int g : v)
            if (c.right(x, g) >= 0) out.push_back(c.right(x, g));
    return normalize(out);
}

Slice slice_mul(const Composite& xy, const Slice& u, const Slice& v) {
    std::vector<int> out;
    for (int x : u)
        for (int y : v)
            if (xy.of(x, y) >= 0) out.push_back(xy.of(x, y));
    return normalize(out);
}

Slice braket(const Correspondence& c, const Slice& u, const Slice& v) {
    OrbitSpace orb = right_orbits(c);
    std::vector<int> out;
    for (int x : u)
        for (int y : v)
            if (orb.proj[x] == orb.proj[y]) out.push_back(inner_product(c, x, y));
    return normalize(out);
}

Correspondence disjoint_union_lift(const Correspondence& c) {
    const FinGroupoid &H = *c.H, &G = *c.G;
    auto K = std::make_shared<const FinGroupoid>(FinGroupoid::disjoint_union({H, G}, {}));
    int ho = H.num_objects(), ha = H.num_arrows();
    std::vector<int> s;
    for (int x : c.s) s.push_back(ho + x);
    return make_correspondence(
        K, K, c.names, c.r, s, [&](int k, int x) { return k < ha ? c.left(k, x) : -1; },
        [&](int x, int k) { return k >= ha ? c.right(x, k - ha) : -1; });
}

}  // namespace gcm
