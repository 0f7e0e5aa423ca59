#include "gcm/model.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gcm {

namespace {

std::string action_str(const Diagram& d, const FAction& a) {
    std::string out = std::to_string(a.n) + " points;";
    for (int g : d.generating_arrows()) {
        if (d.is_identity(g) && d.groupoids[d.src(g)]->num_arrows() == d.groupoids[d.src(g)]->num_objects()) continue;
        const Correspondence& X = d.corr[g];
        out += " " + d.arrow_name(g) + ":";
        for (int xi = 0; xi < X.n; ++xi)
            for (int y = 0; y < a.n; ++y) {
                int v = a.act(g, xi, y);
                if (v >= 0) out += " " + X.name(xi) + "·" + std::to_string(y) + "=" + std::to_string(v);
            }
    }
    return out;
}

std::vector<std::vector<int>> sorted(std::vector<std::vector<int>> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

FAction translate_action(const Diagram& d, const GroupoidModel& m, const PresAction& b) {
    FAction a;
    a.n = b.n;
    for (int y = 0; y < b.n; ++y) {
        a.piece.push_back(m.object_to_piece[b.anchor[y]].first);
        a.anchor.push_back(m.object_to_piece[b.anchor[y]].second);
    }
    a.alpha.resize(d.num_arrows());
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        a.alpha[g].assign((size_t)X.n * a.n, -1);
        for (int xi = 0; xi < X.n; ++xi)
            for (int y = 0; y < a.n; ++y)
                if (a.piece[y] == d.src(g) && a.anchor[y] == X.s[xi])
                    a.alpha[g][(size_t)xi * a.n + y] = apply_word(b, m.psi(g, xi, b.anchor[y]), y);
    }
    return a;
}

VerifyStats verify_model(const Diagram& d, const GroupoidModel& m, int n) {
    VerifyStats st;
    auto us = enumerate_presentation_actions(m.U, n);
    auto fs = enumerate_actions(d, n);
    std::vector<FAction> tr;
    std::set<FAction> image;
    for (const auto& b : us) {
        FAction a = translate_action(d, m, b);
        Report rep = validate_action(d, a);
        if (!rep.ok()) throw Mismatch("a model action translates to an invalid action", rep.str());
        if (!image.insert(canonical_form(a)).second)
            throw Mismatch("two model actions give isomorphic actions", action_str(d, a));
        tr.push_back(a);
    }
    std::set<FAction> all;
    for (const auto& a : fs) all.insert(canonical_form(a));
    for (const auto& a : all)
        if (!image.count(a)) throw Mismatch("action not reached from the model", action_str(d, a));
    for (const auto& a : image)
        if (!all.count(a)) throw Mismatch("model action missing from the enumeration", action_str(d, a));
    st.classes = (int)all.size();
    for (size_t i = 0; i < us.size(); ++i)
        for (size_t j = 0; j < us.size(); ++j) {
            auto mu = sorted(presentation_equivariant_maps(us[i], us[j]));
            auto mf = sorted(equivariant_maps(d, tr[i], tr[j]));
            if (mu != mf)
                throw Mismatch("equivariant maps differ", action_str(d, tr[i]) + " → " + action_str(d, tr[j]));
            ++st.hom_pairs;
        }
    for (size_t i = 0; i < us.size(); ++i) {
        int k = us[i].n;
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::vector<int> f(k);
            for (int y = 0; y < k; ++y) f[y] = (mask >> y) & 1;
            if (presentation_invariant(us[i], f) != invariant_check(d, tr[i], f))
                throw Mismatch("invariant maps differ", action_str(d, tr[i]));
        }
    }
    return st;
}

FinGroupoid model_discrete_shape(const Diagram& d) {
    for (int g = 0; g < d.num_arrows(); ++g)
        if (!d.is_identity(g)) throw NotSupported("shape has nonidentity arrows");
    std::vector<FinGroupoid> parts;
    std::vector<std::string> prefixes;
    for (int x = 0; x < d.shape.num_objects(); ++x) {
        parts.push_back(*d.groupoids[x]);
        prefixes.push_back(d.shape.num_objects() > 1 ? d.shape.object_names[x] + ":" : "");
    }
    return FinGroupoid::disjoint_union(parts, prefixes);
}

GroupoidModel discrete_model(const Diagram& d) {
    auto L = std::make_shared<FinGroupoid>(model_discrete_shape(d));
    GroupoidModel m;
    m.U = presentation_of(*L);
    std::vector<int> arr_off;
    int total = 0;
    for (int x = 0; x < d.shape.num_objects(); ++x) {
        arr_off.push_back(total);
        total += d.groupoids[x]->num_arrows();
        for (int u = 0; u < d.groupoids[x]->num_objects(); ++u) m.object_to_piece.push_back({x, u});
    }
    std::vector<int> src;
    for (int g = 0; g < d.num_arrows(); ++g) src.push_back(d.src(g));
    m.psi = [L, arr_off, src](int g, int xi, int) { return word_of_arrow(*L, arr_off[src[g]] + xi); };
    return m;
}

GroupoidModel free_point_model(const Diagram& d) {
    if (!d.shape.is_free()) throw NotSupported("free point model needs a free monoid or path shape");
    for (const auto& G : d.groupoids)
        if (G->num_arrows() != 1) throw NotSupported("free point model needs point groupoids");
    for (const auto& a : d.shape.generators())
        if (d.corr[d.find(a)].n != 1) throw NotSupported("free point model needs singleton correspondences");
    GroupoidModel m;
    m.U.object_names = d.shape.object_names;
    m.U.gen_names = d.shape.gen_names;
    m.U.gen_src = d.shape.gen_src;
    m.U.gen_dst = d.shape.gen_dst;
    for (int x = 0; x < d.shape.num_objects(); ++x) m.object_to_piece.push_back({x, 0});
    std::vector<Word> words;
    for (const auto& a : d.arrows) {
        Word w;
        for (int gen : a.word) w.push_back({gen, 1});
        words.push_back(w);
    }
    m.psi = [words](int g, int, int) { return words[g]; };
    return m;
}

GradedGroupoid model_group_shape(const Diagram& d) {
    if (d.shape.kind != ShapeKind::Group) throw NotSupported("not a group shape");
    const FinGroupoid& G = *d.groupoids[0];
    for (int g = 0; g < d.num_arrows(); ++g) {
        std::string why;
        if (!morita_check(d.corr[g], &why))
            throw NotEquivalence(g, "X_" + d.arrow_name(g) + " is not an equivalence: " + why);
    }
    GradedGroupoid out;
    std::vector<int> off;
    for (int g = 0; g < d.num_arrows(); ++g) {
        off.push_back((int)out.grade.size());
        for (int xi = 0; xi < d.corr[g].n; ++xi) {
            out.grade.push_back(g);
            out.elem.push_back(xi);
        }
    }
    int total = (int)out.grade.size();
    FinCategory& c = out.L.cat;
    for (int o = 0; o < G.num_objects(); ++o) c.object_names.push_back(G.object_name(o));
    int one = d.identity(0);
    for (int o = 0; o < G.num_objects(); ++o) c.identity.push_back(off[one] + G.unit(o));
    c.table.assign((size_t)total * total, -1);
    for (int i = 0; i < total; ++i) {
        const Correspondence& X = d.corr[out.grade[i]];
        int xi = out.elem[i];
        c.arrow_names.push_back(out.grade[i] == one ? X.name(xi) : d.arrow_name(out.grade[i]) + ":" + X.name(xi));
        c.src.push_back(X.s[xi]);
        c.dst.push_back(X.r[xi]);
    }
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j) {
            if (c.src[i] != c.dst[j]) continue;
            int g = out.grade[i], h = out.grade[j];
            int m = d.mul(g, h, out.elem[i], out.elem[j]);
            if (m >= 0) c.table[(size_t)i * total + j] = off[d.compose(g, h)] + m;
        }
    Report rep = validate_category(c);
    if (!rep.ok()) throw Error("graded groupoid fails: " + rep.str());
    FinGroupoid L = FinGroupoid::from_category(c);
    out.L = L;
    return out;
}

GroupoidModel graded_model(const Diagram& d, const GradedGroupoid& g) {
    auto L = std::make_shared<FinGroupoid>(g.L);
    std::map<std::pair<int, int>, int> index;
    for (int i = 0; i < (int)g.grade.size(); ++i) index[{g.grade[i], g.elem[i]}] = i;
    GroupoidModel m;
    m.U = presentation_of(*L);
    for (int o = 0; o < L->num_objects(); ++o) m.object_to_piece.push_back({0, o});
    (void)d;
    m.psi = [L, index](int a, int xi, int) { return word_of_arrow(*L, index.at({a, xi})); };
    return m;
}

FAction tight_universal_action(const Diagram& d) {
    for (int g = 0; g < d.num_arrows(); ++g)
        if (!classify(d.corr[g]).tight) throw NotTight(g, "X_" + d.arrow_name(g) + " is not tight");
    FAction u;
    std::vector<int> off;
    for (int x = 0; x < d.shape.num_objects(); ++x) {
        off.push_back(u.n);
        for (int o = 0; o < d.groupoids[x]->num_objects(); ++o) {
            u.piece.push_back(x);
            u.anchor.push_back(o);
            ++u.n;
        }
    }
    u.alpha.resize(d.num_arrows());
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        u.alpha[g].assign((size_t)X.n * u.n, -1);
        for (int xi = 0; xi < X.n; ++xi)
            u.alpha[g][(size_t)xi * u.n + off[d.src(g)] + X.s[xi]] = off[d.dst(g)] + X.r[xi];
    }
    return u;
}

Report terminality_check(const Diagram& d, const FAction& u, int n) {
    Report rep;
    for (const auto& a : enumerate_actions(d, n)) {
        size_t k = equivariant_maps(d, a, u).size();
        if (k != 1) rep.add(std::to_string(k) + " equivariant maps from " + action_str(d, a));
    }
    return rep;
}

GermGroupoid effective_quotient(const Diagram& d) {
    FAction u = tight_universal_action(d);
    std::vector<LabeledMap> gens;
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        for (int xi = 0; xi < X.n; ++xi) {
            PartialBijection p = PartialBijection::empty(u.n);
            for (int y = 0; y < u.n; ++y) p.map[y] = u.act(g, xi, y);
            gens.push_back({d.arrow_name(g) + ":" + X.name(xi), p});
        }
    }
    std::vector<std::string> names;
    for (int y = 0; y < u.n; ++y)
        names.push_back(d.shape.num_objects() > 1 ? d.shape.object_names[u.piece[y]] + ":" +
                                                        d.groupoids[u.piece[y]]->object_name(u.anchor[y])
                                                  : d.groupoids[0]->object_name(u.anchor[y]));
    return germ_groupoid(gens, u.n, names);
}

// ---------------------------------------------------------------- Ore shapes

namespace {

int generator_arrow(const Diagram& d) {
    if (d.shape.kind != ShapeKind::FreeMonoid || d.shape.gen_names.size() != 1)
        throw NotSupported("Ore construction is implemented for the free monoid on one generator");
    return d.find(d.shape.generator(0));
}

std::string edge_name(const Correspondence& X, int rep) {
    const FinGroupoid& G = *X.G;
    std::string name = X.name(rep), suffix = "." + G.name(G.unit(X.s[rep]));
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return name;
}

}  // namespace

SelfSimilar ore_section(const Diagram& d) {
    const Correspondence& X = d.corr[generator_arrow(d)];
    const FinGroupoid& G = *d.groupoids[0];
    OrbitSpace orb = right_orbits(X);
    SelfSimilar s;
    s.G = d.groupoids[0];
    int ne = orb.size();
    for (int e = 0; e < ne; ++e) {
        s.edge_names.push_back(edge_name(X, orb.reps[e]));
        s.er.push_back(X.r[orb.reps[e]]);
        s.es.push_back(X.s[orb.reps[e]]);
    }
    s.act.assign((size_t)G.num_arrows() * ne, -1);
    s.res.assign((size_t)G.num_arrows() * ne, -1);
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int e = 0; e < ne; ++e) {
            if (G.src(g) != s.er[e]) continue;
            int moved = X.left(g, orb.reps[e]);
            int ge = orb.proj[moved];
            s.act[(size_t)g * ne + e] = ge;
            s.res[(size_t)g * ne + e] = inner_product(X, orb.reps[ge], moved);
        }
    return s;
}

OreUniversal ore_universal_action(const Diagram& d, int max_pre, int max_period) {
    OreUniversal o{d, ore_section(d), {}, false};
    o.points = rational_points(o.s, max_pre, max_period);
    o.exact = rational_points(o.s, max_pre + 1, max_period + 1).size() == o.points.size();
    return o;
}

RationalPoint ore_act(const OreUniversal& o, int xi, const RationalPoint& z) {
    const Correspondence& X = o.d.corr[generator_arrow(o.d)];
    OrbitSpace orb = right_orbits(X);
    int e = orb.proj[xi];
    int k = inner_product(X, orb.reps[e], xi);
    RationalPoint moved = act_point_by(o.s, k, z).first;
    moved.pre = concat(Path{o.s.er[e], {e}}, moved.pre);
    return normalize_point(o.s, moved);
}

Report tightness_scan(const OreUniversal& o) {
    Report rep;
    const Correspondence& X = o.d.corr[generator_arrow(o.d)];
    OrbitSpace orb = right_orbits(X);
    std::map<RationalPoint, std::set<std::pair<int, RationalPoint>>> classes;
    for (const auto& z : o.points)
        for (int xi = 0; xi < X.n; ++xi) {
            if (X.s[xi] != z.pre.range) continue;
            int e = orb.proj[xi];
            int k = inner_product(X, orb.reps[e], xi);
            RationalPoint y = ore_act(o, xi, z);
            classes[y].insert({e, act_point_by(o.s, k, z).first});
        }
    for (const auto& y : o.points) {
        size_t c = classes.count(y) ? classes[y].size() : 0;
        if (c != 1) rep.add("point " + point_str(o.s, y) + " has " + std::to_string(c) + " preimage classes");
    }
    return rep;
}

Diagram tighten(const OreUniversal& o) {
    const FinGroupoid& G = *o.s.G;
    const Correspondence& X = o.d.corr[generator_arrow(o.d)];
    const auto& P = o.points;
    std::map<RationalPoint, int> pidx;
    for (int i = 0; i < (int)P.size(); ++i) pidx[P[i]] = i;
    auto find_point = [&](const RationalPoint& z) {
        auto it = pidx.find(z);
        if (it == pidx.end()) throw OracleIncomplete("point " + point_str(o.s, z) + " lies outside the chosen set");
        return it->second;
    };
    // G⋉Ω with arrows (g, z), src(g) = r(z)
    std::vector<std::pair<int, int>> arrows;
    std::map<std::pair<int, int>, int> aidx;
    std::vector<int> moved;
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int i = 0; i < (int)P.size(); ++i)
            if (G.src(g) == P[i].pre.range) {
                aidx[{g, i}] = (int)arrows.size();
                arrows.push_back({g, i});
                moved.push_back(find_point(act_point_by(o.s, g, P[i]).first));
            }
    FinCategory c;
    int na = (int)arrows.size();
    for (const auto& z : P) c.object_names.push_back(point_str(o.s, z));
    for (int i = 0; i < (int)P.size(); ++i) c.identity.push_back(aidx.at({G.unit(P[i].pre.range), i}));
    for (int a = 0; a < na; ++a) {
        c.arrow_names.push_back(G.name(arrows[a].first) + "@" + c.object_names[arrows[a].second]);
        c.src.push_back(arrows[a].second);
        c.dst.push_back(moved[a]);
    }
    c.table.assign((size_t)na * na, -1);
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < na; ++b)
            if (c.src[a] == c.dst[b])
                c.table[(size_t)a * na + b] = aidx.at({G.mul(arrows[a].first, arrows[b].first), arrows[b].second});
    auto GO = std::make_shared<const FinGroupoid>(FinGroupoid::from_category(c));
    // XΩ: pairs (ξ, z) with s(ξ) = r(z)
    std::vector<std::pair<int, int>> elems;
    std::map<std::pair<int, int>, int> eidx;
    std::vector<std::string> names;
    std::vector<int> r, s;
    for (int xi = 0; xi < X.n; ++xi)
        for (int i = 0; i < (int)P.size(); ++i)
            if (X.s[xi] == P[i].pre.range) {
                eidx[{xi, i}] = (int)elems.size();
                elems.push_back({xi, i});
                names.push_back(X.name(xi) + "@" + c.object_names[i]);
                r.push_back(find_point(ore_act(o, xi, P[i])));
                s.push_back(i);
            }
    auto left = [&](int h, int x) {
        auto [xi, i] = elems[x];
        return eidx.at({X.left(arrows[h].first, xi), i});
    };
    auto right = [&](int x, int k) {
        auto [xi, i] = elems[x];
        (void)i;
        return eidx.at({X.right(xi, arrows[k].first), arrows[k].second});
    };
    Correspondence XO = make_correspondence(GO, GO, names, r, s, left, right);
    return extend_from_generators(o.d.shape, {GO}, {XO});
}

// ---------------------------------------------------------------- pair model

PairModel::PairModel(const OreUniversal& o) : o_(o) {
    X_ = o_.d.corr[generator_arrow(o_.d)];
    OrbitSpace orb = right_orbits(X_);
    sigma_ = orb.reps;
    orbit_ = orb.proj;
    int m = o_.s.G->num_arrows();
    state_bound_ = m * m;
}

std::pair<int, int> PairModel::step(int g, int e) const {
    int moved = X_.left(g, sigma_[e]);
    int ge = orbit_[moved];
    return {ge, inner_product(X_, sigma_[ge], moved)};
}

RationalPoint PairModel::act(int g, const RationalPoint& z) const {
    RationalPoint out;
    out.pre.range = o_.s.G->dst(g);
    for (int e : z.pre.edges) {
        auto [ge, h] = step(g, e);
        out.pre.edges.push_back(ge);
        g = h;
    }
    std::map<int, int> seen;
    std::vector<std::vector<int>> blocks;
    while (!seen.count(g)) {
        seen[g] = (int)blocks.size();
        std::vector<int> img;
        for (int e : z.period) {
            auto [ge, h] = step(g, e);
            img.push_back(ge);
            g = h;
        }
        blocks.push_back(img);
    }
    int c = seen[g];
    for (int i = 0; i < c; ++i) out.pre.edges.insert(out.pre.edges.end(), blocks[i].begin(), blocks[i].end());
    for (int i = c; i < (int)blocks.size(); ++i) out.period.insert(out.period.end(), blocks[i].begin(), blocks[i].end());
    return normalize_point(o_.s, out);
}

RationalPoint PairModel::source(const PairArrow& p) const {
    RationalPoint z = p.z;
    z.pre = concat(p.w2, z.pre);
    return normalize_point(o_.s, z);
}

RationalPoint PairModel::range(const PairArrow& p) const {
    RationalPoint z = act(p.g, p.z);
    z.pre = concat(p.w1, z.pre);
    return normalize_point(o_.s, z);
}

PairArrow PairModel::extend(const PairArrow& p) const {
    int e = point_letter(p.z, 0);
    auto [ge, h] = step(p.g, e);
    PairArrow q = p;
    q.w1.edges.push_back(ge);
    q.w2.edges.push_back(e);
    q.g = h;
    q.z = drop_prefix(o_.s, p.z, 1);
    return q;
}

bool PairModel::equal(const PairArrow& p0, const PairArrow& q0) const {
    if (source(p0) != source(q0) || grade(p0) != grade(q0)) return false;
    PairArrow p = p0, q = q0;
    while (p.w2.edges.size() < q.w2.edges.size()) p = extend(p);
    while (q.w2.edges.size() < p.w2.edges.size()) q = extend(q);
    int limit = (int)p.z.pre.edges.size() + (int)p.z.period.size() * state_bound_;
    for (int i = 0;; ++i) {
        if (p.w1 != q.w1) return false;
        if (p.g == q.g) return true;
        if (i >= limit) return false;
        p = extend(p);
        q = extend(q);
    }
}

PairArrow PairModel::mul(const PairArrow& p0, const PairArrow& q0) const {
    if (source(p0) != range(q0)) throw Error("pair arrows are not composable");
    PairArrow p = p0, q = q0;
    while (p.w2.edges.size() < q.w1.edges.size()) p = extend(p);
    while (q.w1.edges.size() < p.w2.edges.size()) q = extend(q);
    return PairArrow{p.w1, o_.s.G->mul(p.g, q.g), q.z, q.w2};
}

PairArrow PairModel::inverse(const PairArrow& p) const {
    return PairArrow{p.w2, o_.s.G->inv[p.g], act(p.g, p.z), p.w1};
}

PairArrow PairModel::unit(const RationalPoint& z) const {
    int v = z.pre.range;
    return PairArrow{Path{v, {}}, o_.s.G->unit(v), z, Path{v, {}}};
}

std::vector<PairArrow> PairModel::arrows(int depth) const {
    const FinGroupoid& G = *o_.s.G;
    std::vector<Path> paths;
    for (int k = 0; k <= depth; ++k) {
        auto layer = all_paths(o_.s, k);
        paths.insert(paths.end(), layer.begin(), layer.end());
    }
    std::vector<PairArrow> out;
    for (const auto& y : o_.points) {
        std::map<std::pair<int, Path>, std::vector<PairArrow>> buckets;
        for (int k = 0; k <= depth; ++k) {
            Path w2{y.pre.range, {}};
            for (int i = 0; i < k; ++i) w2.edges.push_back(point_letter(y, i));
            RationalPoint z = drop_prefix(o_.s, y, k);
            for (int g = 0; g < G.num_arrows(); ++g) {
                if (G.src(g) != z.pre.range) continue;
                for (const auto& w1 : paths) {
                    if (path_source(o_.s, w1) != G.dst(g)) continue;
                    PairArrow p{w1, g, z, w2};
                    PairArrow key = p;
                    while ((int)key.w2.edges.size() < depth) key = extend(key);
                    auto& bucket = buckets[{grade(p), key.w1}];
                    bool fresh = std::none_of(bucket.begin(), bucket.end(), [&](const PairArrow& q) { return equal(p, q); });
                    if (fresh) {
                        bucket.push_back(p);
                        out.push_back(p);
                    }
                }
            }
        }
    }
    return out;
}

std::string PairModel::str(const PairArrow& p) const {
    return "[" + path_str(o_.s, p.w1) + "," + o_.s.G->name(p.g) + "," + point_str(o_.s, p.z) + "," +
           path_str(o_.s, p.w2) + "]";
}

std::pair<NormalForm, RationalPoint> PairModel::germ(const PairArrow& p) const {
    return {NormalForm{false, p.w1, p.g, p.w2}, source(p)};
}

int pair_completion_class(const GroupoidCompletion& comp, const PairArrow& p) {
    ShapeArrow a{0, 0, std::vector<int>(p.w1.edges.size(), 0)};
    ShapeArrow b{0, 0, std::vector<int>(p.w2.edges.size(), 0)};
    int c = comp.class_of(a, b);
    if (c < 0) throw BoundExceeded("pair arrow lies outside the completion bound");
    return c;
}

}  // namespace gcm
