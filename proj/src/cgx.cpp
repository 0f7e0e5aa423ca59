#include "gcm/cgx.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gcm {

int ComplexOfGroups::u(int g, int h) const {
    auto it = twist.find({g, h});
    return it == twist.end() ? 0 : it->second;
}

Report validate_cgx(const ComplexOfGroups& c) {
    Report rep;
    const FinCategory& C = c.C;
    if ((int)c.groups.size() != C.num_objects() || (int)c.phi.size() != C.num_arrows()) {
        rep.add("malformed complex: one group per object and one homomorphism per arrow");
        return rep;
    }
    for (int g = 0; g < C.num_arrows(); ++g) {
        const FinGroup &R = c.groups[C.dst[g]], &S = c.groups[C.src[g]];
        if ((int)c.phi[g].size() != R.order()) {
            rep.add("φ_" + C.arrow_names[g] + " has the wrong domain");
            return rep;
        }
        for (int v : c.phi[g])
            if (v < 0 || v >= S.order()) {
                rep.add("φ_" + C.arrow_names[g] + " leaves its codomain");
                return rep;
            }
    }
    for (const auto& [gh, v] : c.twist) {
        auto [g, h] = gh;
        if (g < 0 || h < 0 || g >= C.num_arrows() || h >= C.num_arrows() || C.compose(g, h) < 0) {
            rep.add("twist given for a non-composable pair");
            return rep;
        }
        if (v < 0 || v >= c.groups[C.src[h]].order()) {
            rep.add("twist u(" + C.arrow_names[g] + "," + C.arrow_names[h] + ") out of range");
            return rep;
        }
    }
    for (int g = 0; g < C.num_arrows(); ++g) {
        const FinGroup &R = c.groups[C.dst[g]], &S = c.groups[C.src[g]];
        const std::string& gn = C.arrow_names[g];
        if (C.is_identity(g)) {
            for (int a = 0; a < R.order(); ++a)
                if (c.phi[g][a] != a) {
                    rep.add("φ_" + gn + " is not the identity");
                    break;
                }
        }
        bool hom = true;
        for (int a = 0; a < R.order() && hom; ++a)
            for (int b = 0; b < R.order() && hom; ++b)
                hom = c.phi[g][R.mul(a, b)] == S.mul(c.phi[g][a], c.phi[g][b]);
        if (!hom) rep.add("φ_" + gn + " is not a homomorphism");
        if (c.u(g, C.identity[C.src[g]]) != 0 || c.u(C.identity[C.dst[g]], g) != 0)
            rep.add("normalization fails for " + gn);
    }
    if (!rep.ok()) return rep;
    for (int g = 0; g < C.num_arrows(); ++g)
        for (int h = 0; h < C.num_arrows(); ++h) {
            int gh = C.compose(g, h);
            if (gh < 0) continue;
            const FinGroup& Z = c.groups[C.src[h]];
            int u = c.u(g, h);
            for (int a = 0; a < c.groups[C.dst[g]].order(); ++a)
                if (Z.mul(Z.mul(u, c.phi[h][c.phi[g][a]]), Z.inv(u)) != c.phi[gh][a]) {
                    rep.add("Ad(u) φ_" + C.arrow_names[h] + " φ_" + C.arrow_names[g] + " ≠ φ_" + C.arrow_names[gh]);
                    break;
                }
            for (int k = 0; k < C.num_arrows(); ++k) {
                int hk = C.compose(h, k);
                if (hk < 0) continue;
                const FinGroup& W = c.groups[C.src[k]];
                if (W.mul(c.u(gh, k), c.phi[k][u]) != W.mul(c.u(g, hk), c.u(h, k)))
                    rep.add("cocycle fails at (" + C.arrow_names[g] + ", " + C.arrow_names[h] + ", " +
                            C.arrow_names[k] + ")");
            }
        }
    return rep;
}

bool is_bridson_haefliger(const ComplexOfGroups& c) {
    const FinCategory& C = c.C;
    for (int g = 0; g < C.num_arrows(); ++g) {
        if (C.is_identity(g)) continue;
        if (C.src[g] == C.dst[g]) return false;
        std::set<int> image(c.phi[g].begin(), c.phi[g].end());
        if (image.size() != c.phi[g].size()) return false;
        for (int h = 0; h < C.num_arrows(); ++h) {
            int gh = C.compose(g, h);
            if (gh >= 0 && C.is_identity(gh)) return false;
        }
    }
    return true;
}

Diagram cgx_diagram(const ComplexOfGroups& c) {
    const FinCategory& C = c.C;
    std::vector<GroupoidPtr> groupoids;
    for (int x = 0; x < C.num_objects(); ++x)
        groupoids.push_back(std::make_shared<const FinGroupoid>(FinGroupoid::from_group(c.groups[x], C.object_names[x])));
    PresentedShape shape = PresentedShape::finite(C);
    Diagram skel = diagram_skeleton(shape, groupoids);
    std::vector<int> darrow(C.num_arrows());
    for (int g = 0; g < C.num_arrows(); ++g) darrow[g] = skel.find(ShapeArrow{C.src[g], C.dst[g], {g}});
    std::map<int, Correspondence> corr;
    for (int g = 0; g < C.num_arrows(); ++g) {
        if (C.is_identity(g)) continue;
        const FinGroup& S = c.groups[C.src[g]];
        std::vector<std::string> names = S.names;
        std::vector<int> zero(S.order(), 0);
        const auto& phi = c.phi[g];
        corr.emplace(darrow[g], make_correspondence(
                                    groupoids[C.dst[g]], groupoids[C.src[g]], names, zero, zero,
                                    [&](int h, int x) { return S.mul(phi[h], x); },
                                    [&](int x, int k) { return S.mul(x, k); }));
    }
    std::map<std::pair<int, int>, std::vector<int>> mu;
    for (int g = 0; g < C.num_arrows(); ++g)
        for (int h = 0; h < C.num_arrows(); ++h) {
            if (C.is_identity(g) || C.is_identity(h) || C.compose(g, h) < 0) continue;
            const FinGroup &Y = c.groups[C.src[g]], &Z = c.groups[C.src[h]];
            std::vector<int> t((size_t)Y.order() * Z.order());
            for (int a = 0; a < Y.order(); ++a)
                for (int b = 0; b < Z.order(); ++b)
                    t[(size_t)a * Z.order() + b] = Z.mul(Z.mul(c.u(g, h), c.phi[h][a]), b);
            mu[{darrow[g], darrow[h]}] = t;
        }
    return diagram_from_tables(shape, groupoids, corr, mu);
}

namespace {

struct GenIndex {
    std::vector<int> arrow;              // per arrow, -1 for identities
    std::vector<std::vector<int>> elem;  // per object and element, -1 for the unit
};

GenIndex build_presentation(const ComplexOfGroups& c, Presentation& p, bool groupoid) {
    const FinCategory& C = c.C;
    p = Presentation{};
    p.object_names = groupoid ? C.object_names : std::vector<std::string>{"*"};
    GenIndex gi;
    int nontrivial = 0;
    for (const auto& G : c.groups) nontrivial += G.order() > 1;
    std::set<std::string> arrow_names(C.arrow_names.begin(), C.arrow_names.end());
    bool bare = nontrivial <= 1;
    for (int x = 0; x < C.num_objects(); ++x)
        for (int a = 1; a < c.groups[x].order(); ++a) bare = bare && !arrow_names.count(c.groups[x].names[a]);
    for (int x = 0; x < C.num_objects(); ++x) {
        gi.elem.emplace_back(c.groups[x].order(), -1);
        for (int a = 1; a < c.groups[x].order(); ++a) {
            std::string name = bare ? c.groups[x].names[a] : c.groups[x].names[a] + "@" + C.object_names[x];
            int o = groupoid ? x : 0;
            gi.elem[x][a] = p.add_gen(name, o, o);
        }
    }
    gi.arrow.assign(C.num_arrows(), -1);
    for (int g = 0; g < C.num_arrows(); ++g)
        if (!C.is_identity(g))
            gi.arrow[g] = p.add_gen(C.arrow_names[g], groupoid ? C.src[g] : 0, groupoid ? C.dst[g] : 0);

    auto letter = [](Word& w, int gen, int exp) {
        if (gen >= 0) w.push_back({gen, exp});
    };
    std::vector<Word> rels;
    for (int x = 0; x < C.num_objects(); ++x) {
        const FinGroup& G = c.groups[x];
        for (int a = 1; a < G.order(); ++a)
            for (int b = 1; b < G.order(); ++b) {
                Word w;
                letter(w, gi.elem[x][a], 1);
                letter(w, gi.elem[x][b], 1);
                letter(w, gi.elem[x][G.mul(a, b)], -1);
                rels.push_back(w);
            }
    }
    for (int g = 0; g < C.num_arrows(); ++g) {
        if (C.is_identity(g)) continue;
        for (int a = 1; a < c.groups[C.dst[g]].order(); ++a) {
            Word w;
            letter(w, gi.arrow[g], 1);
            letter(w, gi.elem[C.src[g]][c.phi[g][a]], 1);
            letter(w, gi.arrow[g], -1);
            letter(w, gi.elem[C.dst[g]][a], -1);
            rels.push_back(w);
        }
    }
    for (int g = 0; g < C.num_arrows(); ++g)
        for (int h = 0; h < C.num_arrows(); ++h) {
            int gh = C.compose(g, h);
            if (gh < 0 || C.is_identity(g) || C.is_identity(h)) continue;
            Word w;
            letter(w, gi.elem[C.src[h]][c.u(g, h)], -1);
            letter(w, gi.arrow[gh], -1);
            letter(w, gi.arrow[g], 1);
            letter(w, gi.arrow[h], 1);
            rels.push_back(w);
        }
    std::set<Word> seen;
    for (const auto& r : rels) {
        Word w = free_reduce(r);
        if (!w.empty() && seen.insert(w).second) p.relators.push_back(w);
    }
    return gi;
}

}  // namespace

Presentation fundamental_group(const ComplexOfGroups& c) {
    Presentation p;
    build_presentation(c, p, false);
    return p;
}

Presentation model_presentation(const ComplexOfGroups& c) {
    Presentation p;
    build_presentation(c, p, true);
    return p;
}

GroupoidModel cgx_model(const ComplexOfGroups& c) {
    GroupoidModel m;
    GenIndex gi = build_presentation(c, m.U, true);
    for (int x = 0; x < c.C.num_objects(); ++x) m.object_to_piece.push_back({x, 0});
    Diagram d = cgx_diagram(c);
    std::vector<int> carrow;
    for (const auto& a : d.arrows) carrow.push_back(a.word[0]);
    const FinCategory C = c.C;
    m.psi = [gi, carrow, C](int dg, int xi, int) {
        int g = carrow[dg];
        Word w;
        if (gi.arrow[g] >= 0) w.push_back({gi.arrow[g], 1});
        if (gi.elem[C.src[g]][xi] >= 0) w.push_back({gi.elem[C.src[g]][xi], 1});
        return w;
    };
    return m;
}

ComplexOfGroups cone_extend(const ComplexOfGroups& c) {
    const FinCategory& C = c.C;
    int m = C.num_arrows(), k = C.num_objects();
    ComplexOfGroups out;
    FinCategory& D = out.C;
    D.object_names = C.object_names;
    D.object_names.push_back("∞");
    int inf = k, id_inf = 2 * m;
    D.arrow_names = C.arrow_names;
    D.src = C.src;
    D.dst = C.dst;
    for (int g = 0; g < m; ++g) {
        D.arrow_names.push_back("(" + C.arrow_names[g] + ",∞)");
        D.src.push_back(C.src[g]);
        D.dst.push_back(inf);
    }
    D.arrow_names.push_back("1_∞");
    D.src.push_back(inf);
    D.dst.push_back(inf);
    D.identity = C.identity;
    D.identity.push_back(id_inf);
    int n = 2 * m + 1;
    D.table.assign((size_t)n * n, -1);
    for (int g = 0; g < m; ++g)
        for (int h = 0; h < m; ++h) {
            int gh = C.compose(g, h);
            if (gh < 0) continue;
            D.table[(size_t)g * n + h] = gh;
            D.table[(size_t)(m + g) * n + h] = m + gh;
        }
    for (int g = 0; g < m; ++g) D.table[(size_t)id_inf * n + m + g] = m + g;
    D.table[(size_t)id_inf * n + id_inf] = id_inf;

    out.groups = c.groups;
    out.groups.push_back(FinGroup::trivial());
    out.phi = c.phi;
    for (int g = 0; g < m; ++g) out.phi.push_back({0});
    out.phi.push_back({0});
    for (const auto& [gh, v] : c.twist) {
        out.twist[gh] = v;
        out.twist[{m + gh.first, gh.second}] = v;
    }
    return out;
}

Presentation canonical_renaming(const Presentation& p) {
    int n = p.num_gens();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return p.gen_names[a] < p.gen_names[b]; });
    std::vector<int> pos(n);
    Presentation out;
    out.object_names = p.object_names;
    for (int i = 0; i < n; ++i) {
        pos[order[i]] = i;
        out.add_gen(p.gen_names[order[i]], p.gen_src[order[i]], p.gen_dst[order[i]]);
    }
    for (const auto& r : p.relators) {
        Word w;
        for (const auto& l : r) w.push_back({pos[l.gen], l.exp});
        out.relators.push_back(w);
    }
    return canonical(out);
}

Presentation isotropy_at_infinity(const ComplexOfGroups& c) {
    ComplexOfGroups cone = cone_extend(c);
    Presentation P = model_presentation(cone);
    int root = c.C.num_objects();
    std::vector<Word> tree(root + 1);
    for (int x = 0; x < root; ++x) {
        int gen = P.find_gen("(" + c.C.arrow_names[c.C.identity[x]] + ",∞)");
        tree[x] = {{gen, 1}};
    }
    Presentation V = vertex_group(P, root, tree);
    std::vector<char> removable(V.num_gens(), 0);
    for (int g = 0; g < c.C.num_arrows(); ++g) {
        int gen = V.find_gen("(" + c.C.arrow_names[g] + ",∞)");
        if (gen >= 0) removable[gen] = 1;
    }
    Presentation out = tietze_eliminate(V, removable);
    out.object_names = {"*"};
    return out;
}

long long count_homs(const Presentation& p, int n) {
    if (p.object_names.size() != 1) throw NotSupported("hom counting needs a group presentation");
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(base);
    while (std::next_permutation(base.begin(), base.end()));
    int np = (int)perms.size();
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < np; ++i) index[perms[i]] = i;
    // mul[a*np+b] = a∘b
    std::vector<int> mul((size_t)np * np), inv(np);
    for (int a = 0; a < np; ++a)
        for (int b = 0; b < np; ++b) {
            std::vector<int> ab(n);
            for (int y = 0; y < n; ++y) ab[y] = perms[a][perms[b][y]];
            mul[(size_t)a * np + b] = index[ab];
            if (index[ab] == 0) inv[a] = b;
        }
    int k = p.num_gens();
    // greedy order: complete as many relators as early as possible
    std::vector<std::set<int>> gens_of;
    for (const auto& r : p.relators) {
        std::set<int> s;
        for (const auto& l : r) s.insert(l.gen);
        gens_of.push_back(s);
    }
    std::vector<int> order;
    std::vector<char> placed(k, 0);
    for (int step = 0; step < k; ++step) {
        int best = -1, best_score = -1;
        for (int g = 0; g < k; ++g) {
            if (placed[g]) continue;
            int score = 0;
            for (const auto& s : gens_of) {
                if (!s.count(g)) continue;
                bool rest = std::all_of(s.begin(), s.end(), [&](int h) { return h == g || placed[h]; });
                score += rest ? 1000 : 1;
            }
            if (score > best_score) best = g, best_score = score;
        }
        placed[best] = 1;
        order.push_back(best);
    }
    std::vector<int> depth_of(k);
    for (int i = 0; i < k; ++i) depth_of[order[i]] = i;
    std::vector<std::vector<int>> check(k);
    for (int r = 0; r < (int)p.relators.size(); ++r) {
        int d = 0;
        for (int g : gens_of[r]) d = std::max(d, depth_of[g]);
        if (!gens_of[r].empty()) check[d].push_back(r);
    }
    std::vector<int> img(k, 0);
    long long count = 0;
    auto holds = [&](int r) {
        int acc = 0;
        for (const auto& l : p.relators[r]) acc = mul[(size_t)acc * np + (l.exp > 0 ? img[l.gen] : inv[img[l.gen]])];
        return acc == 0;
    };
    std::function<void(int)> rec = [&](int d) {
        if (d == k) {
            ++count;
            return;
        }
        for (int v = 0; v < np; ++v) {
            img[order[d]] = v;
            if (std::all_of(check[d].begin(), check[d].end(), holds)) rec(d + 1);
        }
    };
    rec(0);
    return count;
}

Report morphism_check(const ComplexOfGroups& c1, const ComplexOfGroups& c2, const CgxMorphism& m) {
    Report rep;
    const FinCategory& C = c1.C;
    if (C.num_arrows() != c2.C.num_arrows() || C.table != c2.C.table) {
        rep.add("complexes live over different categories");
        return rep;
    }
    if ((int)m.psi.size() != C.num_objects() || (int)m.v.size() != C.num_arrows()) {
        rep.add("malformed morphism data");
        return rep;
    }
    for (int x = 0; x < C.num_objects(); ++x) {
        const FinGroup &G1 = c1.groups[x], &G2 = c2.groups[x];
        if ((int)m.psi[x].size() != G2.order()) {
            rep.add("ψ_" + C.object_names[x] + " has the wrong domain");
            return rep;
        }
        for (int a = 0; a < G2.order(); ++a)
            for (int b = 0; b < G2.order(); ++b)
                if (m.psi[x][G2.mul(a, b)] != G1.mul(m.psi[x][a], m.psi[x][b])) {
                    rep.add("ψ_" + C.object_names[x] + " is not a homomorphism");
                    a = b = G2.order();
                }
    }
    for (int g = 0; g < C.num_arrows(); ++g) {
        const FinGroup& S = c1.groups[C.src[g]];
        if (m.v[g] < 0 || m.v[g] >= S.order()) {
            rep.add("v_" + C.arrow_names[g] + " out of range");
            return rep;
        }
        if (C.is_identity(g) && m.v[g] != 0) rep.add("v_" + C.arrow_names[g] + " ≠ 1");
        for (int a = 0; a < c2.groups[C.dst[g]].order(); ++a) {
            int lhs = S.mul(S.mul(m.v[g], m.psi[C.src[g]][c2.phi[g][a]]), S.inv(m.v[g]));
            if (lhs != c1.phi[g][m.psi[C.dst[g]][a]]) {
                rep.add("Ad(v_" + C.arrow_names[g] + ") ψ φ² ≠ φ¹ ψ");
                break;
            }
        }
    }
    if (!rep.ok()) return rep;
    for (int g = 0; g < C.num_arrows(); ++g)
        for (int h = 0; h < C.num_arrows(); ++h) {
            int gh = C.compose(g, h);
            if (gh < 0) continue;
            int z = C.src[h];
            const FinGroup& Z = c1.groups[z];
            int lhs = Z.mul(Z.mul(c1.u(g, h), c1.phi[h][m.v[g]]), m.v[h]);
            int rhs = Z.mul(m.v[gh], m.psi[z][c2.u(g, h)]);
            if (lhs != rhs) rep.add("square fails at (" + C.arrow_names[g] + ", " + C.arrow_names[h] + ")");
        }
    return rep;
}

CgxMorphism identity_morphism(const ComplexOfGroups& c) {
    CgxMorphism m;
    for (const auto& G : c.groups) {
        std::vector<int> id(G.order());
        std::iota(id.begin(), id.end(), 0);
        m.psi.push_back(id);
    }
    m.v.assign(c.C.num_arrows(), 0);
    return m;
}

CgxMorphism compose_morphisms(const ComplexOfGroups& c1, const CgxMorphism& m12, const CgxMorphism& m23) {
    CgxMorphism out;
    for (size_t x = 0; x < m12.psi.size(); ++x) {
        std::vector<int> f;
        for (int a : m23.psi[x]) f.push_back(m12.psi[x][a]);
        out.psi.push_back(f);
    }
    for (int g = 0; g < c1.C.num_arrows(); ++g) {
        int s = c1.C.src[g];
        out.v.push_back(c1.groups[s].mul(m12.v[g], m12.psi[s][m23.v[g]]));
    }
    return out;
}

Report homotopy_check(const ComplexOfGroups& c1, const ComplexOfGroups& c2, const CgxMorphism& m1,
                      const CgxMorphism& m2, const std::vector<int>& w) {
    Report rep;
    const FinCategory& C = c1.C;
    if ((int)w.size() != C.num_objects()) {
        rep.add("one element per object expected");
        return rep;
    }
    for (int x = 0; x < C.num_objects(); ++x) {
        const FinGroup& G = c1.groups[x];
        if (w[x] < 0 || w[x] >= G.order()) {
            rep.add("w_" + C.object_names[x] + " out of range");
            return rep;
        }
        for (int a = 0; a < c2.groups[x].order(); ++a)
            if (G.mul(G.mul(w[x], m1.psi[x][a]), G.inv(w[x])) != m2.psi[x][a]) {
                rep.add("Ad(w_" + C.object_names[x] + ") ψ¹ ≠ ψ²");
                break;
            }
    }
    for (int g = 0; g < C.num_arrows(); ++g) {
        const FinGroup& S = c1.groups[C.src[g]];
        int lhs = S.mul(c1.phi[g][w[C.dst[g]]], m1.v[g]);
        int rhs = S.mul(m2.v[g], w[C.src[g]]);
        if (lhs != rhs) rep.add("square fails at " + C.arrow_names[g]);
    }
    return rep;
}

}  // namespace gcm
