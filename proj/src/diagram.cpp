#include "gcm/diagram.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

#include "gcm/presentation.hpp"

namespace gcm {

bool same_groupoid(const FinGroupoid& a, const FinGroupoid& b) {
    return &a == &b || (a.cat.src == b.cat.src && a.cat.dst == b.cat.dst && a.cat.identity == b.cat.identity &&
                        a.cat.table == b.cat.table && a.inv == b.inv);
}

int Diagram::find(const ShapeArrow& a) const {
    auto it = arrow_index.find(a);
    return it == arrow_index.end() ? -1 : it->second;
}

int Diagram::compose(int g, int h) const {
    auto c = shape.compose(arrows[g], arrows[h]);
    return c ? find(*c) : -1;
}

int Diagram::mul(int g, int h, int xi, int eta) const {
    return mu.at({g, h})[(size_t)xi * corr[h].n + eta];
}

std::vector<int> Diagram::generating_arrows() const {
    std::vector<int> out;
    for (int x = 0; x < shape.num_objects(); ++x) out.push_back(identity(x));
    for (const auto& a : shape.generators()) {
        int i = find(a);
        if (i >= 0) out.push_back(i);
    }
    return out;
}

Diagram diagram_skeleton(const PresentedShape& shape, const std::vector<GroupoidPtr>& groupoids) {
    if ((int)groupoids.size() != shape.num_objects()) throw Error("one groupoid per object expected");
    Diagram d;
    d.shape = shape;
    d.groupoids = groupoids;
    d.arrows = shape.enumerate();
    for (int i = 0; i < d.num_arrows(); ++i) d.arrow_index[d.arrows[i]] = i;
    d.corr.resize(d.arrows.size());
    for (int x = 0; x < shape.num_objects(); ++x) d.corr[d.identity(x)] = identity_correspondence(groupoids[x]);
    return d;
}

void fill_unit_mu(Diagram& d) {
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        if (X.n == 0 && !X.H) continue;
        int u = d.identity(d.src(g)), v = d.identity(d.dst(g));
        const FinGroupoid &Gs = *d.groupoids[d.src(g)], &Gr = *d.groupoids[d.dst(g)];
        if (!d.mu.count({g, u})) {
            std::vector<int> t((size_t)X.n * Gs.num_arrows(), -1);
            for (int xi = 0; xi < X.n; ++xi)
                for (int k = 0; k < Gs.num_arrows(); ++k) t[(size_t)xi * Gs.num_arrows() + k] = X.right(xi, k);
            d.mu[{g, u}] = t;
        }
        if (!d.mu.count({v, g})) {
            std::vector<int> t((size_t)Gr.num_arrows() * X.n, -1);
            for (int h = 0; h < Gr.num_arrows(); ++h)
                for (int xi = 0; xi < X.n; ++xi) t[(size_t)h * X.n + xi] = X.left(h, xi);
            d.mu[{v, g}] = t;
        }
    }
}

Diagram diagram_from_tables(const PresentedShape& shape, const std::vector<GroupoidPtr>& groupoids,
                            const std::map<int, Correspondence>& corr,
                            const std::map<std::pair<int, int>, std::vector<int>>& mu) {
    Diagram d = diagram_skeleton(shape, groupoids);
    for (const auto& [g, c] : corr) {
        if (g < 0 || g >= d.num_arrows()) throw Error("arrow index out of range");
        if (d.is_identity(g)) continue;
        d.corr[g] = c;
    }
    for (int g = 0; g < d.num_arrows(); ++g)
        if (!d.corr[g].H) throw Error("no correspondence for arrow " + d.arrow_name(g));
    d.mu = mu;
    fill_unit_mu(d);
    return d;
}

namespace {

bool same_correspondence_data(const Correspondence& a, const Correspondence& b) {
    return a.n == b.n && a.r == b.r && a.s == b.s && a.lact == b.lact && a.ract == b.ract;
}

}  // namespace

Report validate_diagram(const Diagram& d) {
    Report rep;
    for (int x = 0; x < d.shape.num_objects(); ++x)
        rep.merge(validate_groupoid(*d.groupoids[x]), "groupoid at " + d.shape.object_names[x] + ": ");
    if (!rep.ok()) return rep;
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        std::string an = d.arrow_name(g);
        if (!X.H || !X.G) {
            rep.add("no correspondence for " + an);
            continue;
        }
        if (!same_groupoid(*X.H, *d.groupoids[d.dst(g)]) || !same_groupoid(*X.G, *d.groupoids[d.src(g)])) {
            rep.add("correspondence for " + an + " has the wrong groupoids");
            continue;
        }
        rep.merge(validate_correspondence(X), "X_" + an + ": ");
        if (d.is_identity(g) && !same_correspondence_data(X, identity_correspondence(d.groupoids[d.src(g)])))
            rep.add("X_" + an + " is not the identity correspondence");
    }
    if (!rep.ok()) return rep;

    for (int g = 0; g < d.num_arrows(); ++g)
        for (int h = 0; h < d.num_arrows(); ++h) {
            int gh = d.compose(g, h);
            if (gh < 0) continue;
            std::string pn = "(" + d.arrow_name(g) + ", " + d.arrow_name(h) + ")";
            auto it = d.mu.find({g, h});
            if (it == d.mu.end()) {
                rep.add("μ missing for " + pn);
                continue;
            }
            const Correspondence &X = d.corr[g], &Y = d.corr[h], &Z = d.corr[gh];
            const auto& t = it->second;
            if ((int)t.size() != X.n * Y.n) {
                rep.add("μ" + pn + " has the wrong size");
                continue;
            }
            auto at = [&](int a, int b) { return t[(size_t)a * Y.n + b]; };
            bool defined_ok = true;
            for (int a = 0; a < X.n; ++a)
                for (int b = 0; b < Y.n; ++b) {
                    bool should = X.s[a] == Y.r[b];
                    int v = at(a, b);
                    if (should != (v >= 0) || v >= Z.n) {
                        rep.add("μ" + pn + " defined incorrectly at (" + X.name(a) + ", " + Y.name(b) + ")");
                        defined_ok = false;
                    }
                }
            if (!defined_ok) continue;
            const FinGroupoid& M = *X.G;
            for (int a = 0; a < X.n; ++a)
                for (int k = 0; k < M.num_arrows(); ++k) {
                    int ak = X.right(a, k);
                    if (ak < 0) continue;
                    for (int b = 0; b < Y.n; ++b) {
                        int kb = Y.left(k, b);
                        if (kb >= 0 && at(ak, b) != at(a, kb))
                            rep.add("μ" + pn + " is not balanced at (" + X.name(a) + ", " + M.name(k) + ", " + Y.name(b) + ")");
                    }
                }
            for (int a = 0; a < X.n; ++a)
                for (int b = 0; b < Y.n; ++b) {
                    int v = at(a, b);
                    if (v < 0) continue;
                    for (int h2 = 0; h2 < X.H->num_arrows(); ++h2) {
                        int ha = X.left(h2, a);
                        if (ha >= 0 && at(ha, b) != Z.left(h2, v))
                            rep.add("μ" + pn + " is not left equivariant at (" + X.H->name(h2) + ", " + X.name(a) + ")");
                    }
                    for (int k = 0; k < Y.G->num_arrows(); ++k) {
                        int bk = Y.right(b, k);
                        if (bk >= 0 && at(a, bk) != Z.right(v, k))
                            rep.add("μ" + pn + " is not right equivariant at (" + Y.name(b) + ", " + Y.G->name(k) + ")");
                    }
                }
            Composite xy = compose(X, Y);
            std::vector<int> hit(Z.n, 0);
            for (auto [a, b] : xy.pair_of) ++hit[at(a, b)];
            for (int z = 0; z < Z.n; ++z)
                if (hit[z] != 1) {
                    rep.add("μ" + pn + " is not a bijection on orbits at " + Z.name(z));
                    break;
                }
            if (d.is_identity(g) || d.is_identity(h)) {
                for (int a = 0; a < X.n; ++a)
                    for (int b = 0; b < Y.n; ++b) {
                        int v = at(a, b);
                        if (v < 0) continue;
                        int want = d.is_identity(h) ? X.right(a, b) : Y.left(a, b);
                        if (v != want) {
                            rep.add("μ" + pn + " differs from the unitor");
                            a = X.n;
                            break;
                        }
                    }
            }
        }
    if (!rep.ok()) return rep;

    for (int g = 0; g < d.num_arrows(); ++g)
        for (int h = 0; h < d.num_arrows(); ++h) {
            int gh = d.compose(g, h);
            if (gh < 0) continue;
            for (int k = 0; k < d.num_arrows(); ++k) {
                int hk = d.compose(h, k);
                if (hk < 0) continue;
                int ghk = d.compose(gh, k);
                if (ghk < 0 || !d.mu.count({gh, k}) || !d.mu.count({g, hk})) continue;
                const Correspondence &X = d.corr[g], &Y = d.corr[h], &Z = d.corr[k];
                bool bad = false;
                for (int a = 0; a < X.n && !bad; ++a)
                    for (int b = 0; b < Y.n && !bad; ++b) {
                        int ab = d.mul(g, h, a, b);
                        if (ab < 0) continue;
                        for (int c = 0; c < Z.n && !bad; ++c) {
                            int bc = d.mul(h, k, b, c);
                            if (bc < 0) continue;
                            if (d.mul(gh, k, ab, c) != d.mul(g, hk, a, bc)) {
                                rep.add("associativity fails on (" + d.arrow_name(g) + ", " + d.arrow_name(h) + ", " +
                                        d.arrow_name(k) + ") at (" + X.name(a) + ", " + Y.name(b) + ", " + Z.name(c) + ")");
                                bad = true;
                            }
                        }
                    }
            }
        }
    if (d.shape.kind == ShapeKind::FreeCommutative && !d.gen_corr.empty()) rep.merge(check_braiding(d.gen_corr, d.braid));
    return rep;
}

// ---------------------------------------------------------------- free extension

namespace {

// Tuples (ξ1,…,ξk) over a chain of correspondences, normalized so that every
// entry but the last is the least element of its right orbit.
struct ChainData {
    std::vector<int> rep;     // per element, least element of its orbit
    std::vector<int> offset;  // x = rep·offset
    std::vector<int> reps;
};

ChainData chain_data(const Correspondence& c) {
    ChainData out;
    OrbitSpace orb = right_orbits(c);
    out.reps = orb.reps;
    for (int x = 0; x < c.n; ++x) {
        int r = orb.reps[orb.proj[x]];
        out.rep.push_back(r);
        out.offset.push_back(inner_product(c, r, x));
    }
    return out;
}

struct Chains {
    std::vector<Correspondence> gens;
    std::vector<ChainData> data;

    bool normalize(const std::vector<int>& word, std::vector<int>& t) const {
        for (size_t i = 0; i + 1 < t.size(); ++i) {
            const ChainData& cd = data[word[i]];
            int g = cd.offset[t[i]];
            t[i] = cd.rep[t[i]];
            t[i + 1] = gens[word[i + 1]].left(g, t[i + 1]);
            if (t[i + 1] < 0) return false;
        }
        return true;
    }

    std::vector<std::vector<int>> tuples(const std::vector<int>& word) const {
        std::vector<std::vector<int>> out;
        std::vector<int> t(word.size());
        std::function<void(size_t, int)> rec = [&](size_t i, int need) {
            if (i == word.size()) {
                out.push_back(t);
                return;
            }
            const Correspondence& c = gens[word[i]];
            if (i + 1 < word.size()) {
                for (int x : data[word[i]].reps)
                    if (need < 0 || c.r[x] == need) t[i] = x, rec(i + 1, c.s[x]);
            } else {
                for (int x = 0; x < c.n; ++x)
                    if (need < 0 || c.r[x] == need) t[i] = x, rec(i + 1, c.s[x]);
            }
        };
        rec(0, -1);
        return out;
    }
};

struct ArrowChain {
    std::vector<int> word;
    std::vector<std::vector<int>> tuples;
    std::map<std::vector<int>, int> index;
};

Correspondence chain_correspondence(const Chains& ch, ArrowChain& ac, GroupoidPtr H, GroupoidPtr G) {
    ac.tuples = ch.tuples(ac.word);
    for (int i = 0; i < (int)ac.tuples.size(); ++i) ac.index[ac.tuples[i]] = i;
    std::vector<std::string> names;
    std::vector<int> r, s;
    for (const auto& t : ac.tuples) {
        std::vector<std::string> parts;
        for (size_t i = 0; i < t.size(); ++i) parts.push_back(ch.gens[ac.word[i]].name(t[i]));
        names.push_back(join(parts, "."));
        r.push_back(ch.gens[ac.word.front()].r[t.front()]);
        s.push_back(ch.gens[ac.word.back()].s[t.back()]);
    }
    auto left = [&](int h, int e) {
        std::vector<int> t = ac.tuples[e];
        t[0] = ch.gens[ac.word[0]].left(h, t[0]);
        if (t[0] < 0 || !ch.normalize(ac.word, t)) return -1;
        return ac.index.at(t);
    };
    auto right = [&](int e, int k) {
        std::vector<int> t = ac.tuples[e];
        t.back() = ch.gens[ac.word.back()].right(t.back(), k);
        if (t.back() < 0) return -1;
        return ac.index.at(t);
    };
    return make_correspondence(H, G, names, r, s, left, right);
}

// Σ applied at position p of a tuple; the word letters at p, p+1 are swapped
struct Braider {
    const Chains& ch;
    std::map<std::pair<int, int>, Composite> comps;
    const std::map<std::pair<int, int>, std::vector<int>>& braid;

    Braider(const Chains& c, const std::map<std::pair<int, int>, std::vector<int>>& b) : ch(c), braid(b) {
        int k = (int)ch.gens.size();
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                if (i != j) comps.emplace(std::pair{j, i}, compose(ch.gens[j], ch.gens[i]));
    }

    void swap_at(std::vector<int>& word, std::vector<int>& t, size_t p) const {
        int j = word[p], i = word[p + 1];
        const Composite& from = comps.at({j, i});
        const Composite& to = comps.at({i, j});
        int e = from.of(t[p], t[p + 1]);
        int f = j > i ? braid.at({j, i})[e] : inverse_at(i, j, e);
        auto [a, b] = to.pair_of[f];
        t[p] = a;
        t[p + 1] = b;
        std::swap(word[p], word[p + 1]);
    }

    int inverse_at(int i, int j, int e) const {
        // Σ_{i,j} for i < j is the inverse of Σ_{j,i}
        const auto& m = braid.at({j, i});
        auto it = std::find(m.begin(), m.end(), e);
        return (int)(it - m.begin());
    }

    void sort(std::vector<int>& word, std::vector<int>& t) const {
        bool swapped = true;
        while (swapped) {
            swapped = false;
            for (size_t p = 0; p + 1 < word.size(); ++p)
                if (word[p] > word[p + 1]) {
                    swap_at(word, t, p);
                    swapped = true;
                }
        }
        ch.normalize(word, t);
    }
};

std::vector<int> commutative_word(const std::vector<int>& exps) {
    std::vector<int> w;
    for (int i = 0; i < (int)exps.size(); ++i) w.insert(w.end(), exps[i], i);
    return w;
}

}  // namespace

namespace {

std::optional<std::array<int, 3>> hexagon_failure(const Chains& ch, const Braider& br) {
    int k = (int)ch.gens.size();
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int c = b + 1; c < k; ++c) {
                std::vector<int> word = {c, b, a};
                for (auto t : ch.tuples(word)) {
                    std::vector<int> w1 = word, t1 = t, w2 = word, t2 = t;
                    for (size_t p : {0, 1, 0}) br.swap_at(w1, t1, p);
                    for (size_t p : {1, 0, 1}) br.swap_at(w2, t2, p);
                    ch.normalize(w1, t1);
                    ch.normalize(w2, t2);
                    if (t1 != t2) return std::array<int, 3>{a, b, c};
                }
            }
    return std::nullopt;
}

std::string hexagon_message(const std::vector<Correspondence>&, const std::array<int, 3>& t) {
    return "hexagon fails for generators (" + std::to_string(t[0]) + ", " + std::to_string(t[1]) + ", " +
           std::to_string(t[2]) + ")";
}

}  // namespace

Report check_braiding(const std::vector<Correspondence>& gens, const std::map<std::pair<int, int>, std::vector<int>>& braid) {
    Report rep;
    int k = (int)gens.size();
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < j; ++i) {
            auto it = braid.find({j, i});
            if (it == braid.end()) {
                rep.add("Σ missing for generators " + std::to_string(j) + "," + std::to_string(i));
                continue;
            }
            Composite a = compose(gens[j], gens[i]), b = compose(gens[i], gens[j]);
            rep.merge(check_isomorphism(a.c, b.c, it->second),
                      "Σ(" + std::to_string(j) + "," + std::to_string(i) + "): ");
        }
    if (!rep.ok()) return rep;
    Chains ch{gens, {}};
    for (const auto& g : gens) ch.data.push_back(chain_data(g));
    Braider br(ch, braid);
    if (auto t = hexagon_failure(ch, br)) rep.add(hexagon_message(gens, *t));
    return rep;
}

Diagram extend_from_generators(const PresentedShape& shape, const std::vector<GroupoidPtr>& groupoids,
                               const std::vector<Correspondence>& gens,
                               const std::map<std::pair<int, int>, std::vector<int>>& braid) {
    if (shape.kind == ShapeKind::Group || shape.kind == ShapeKind::Finite)
        throw NotSupported("extension from generators needs a free or commutative shape");
    if (gens.size() != shape.gen_names.size()) throw Error("one correspondence per generator expected");
    bool commutative = shape.kind == ShapeKind::FreeCommutative;
    if (commutative) {
        Report br = check_braiding(gens, braid);
        if (!br.ok()) {
            Chains c{gens, {}};
            for (const auto& g : gens) c.data.push_back(chain_data(g));
            if (auto t = hexagon_failure(c, Braider(c, braid))) throw HexagonViolation((*t)[0], (*t)[1], (*t)[2], hexagon_message(gens, *t));
            throw Error(br.str());
        }
    }
    Diagram d = diagram_skeleton(shape, groupoids);
    if (commutative) {
        d.gen_corr = gens;
        d.braid = braid;
    }
    Chains ch{gens, {}};
    for (const auto& g : gens) ch.data.push_back(chain_data(g));
    std::vector<ArrowChain> chains(d.num_arrows());
    for (int a = 0; a < d.num_arrows(); ++a) {
        if (d.is_identity(a)) continue;
        chains[a].word = commutative ? commutative_word(d.arrows[a].word) : d.arrows[a].word;
        d.corr[a] = chain_correspondence(ch, chains[a], groupoids[d.dst(a)], groupoids[d.src(a)]);
    }
    std::optional<Braider> br;
    if (commutative) br.emplace(ch, braid);
    for (int g = 0; g < d.num_arrows(); ++g)
        for (int h = 0; h < d.num_arrows(); ++h) {
            if (d.is_identity(g) || d.is_identity(h)) continue;
            int gh = d.compose(g, h);
            if (gh < 0) continue;
            const Correspondence &X = d.corr[g], &Y = d.corr[h];
            std::vector<int> t((size_t)X.n * Y.n, -1);
            for (int a = 0; a < X.n; ++a)
                for (int b = 0; b < Y.n; ++b) {
                    if (X.s[a] != Y.r[b]) continue;
                    std::vector<int> word = chains[g].word, tup = chains[g].tuples[a];
                    word.insert(word.end(), chains[h].word.begin(), chains[h].word.end());
                    tup.insert(tup.end(), chains[h].tuples[b].begin(), chains[h].tuples[b].end());
                    if (commutative)
                        br->sort(word, tup);
                    else
                        ch.normalize(word, tup);
                    t[(size_t)a * Y.n + b] = chains[gh].index.at(tup);
                }
            d.mu[{g, h}] = t;
        }
    fill_unit_mu(d);
    return d;
}

// ---------------------------------------------------------------- actions

int act_groupoid(const Diagram& d, const FAction& a, int gamma, int y) {
    return a.act(d.identity(a.piece[y]), gamma, y);
}

Report validate_action(const Diagram& d, const FAction& a) {
    Report rep;
    int n = a.n;
    if ((int)a.piece.size() != n || (int)a.anchor.size() != n || (int)a.alpha.size() != d.num_arrows()) {
        rep.add("malformed action data");
        return rep;
    }
    for (int y = 0; y < n; ++y)
        if (a.piece[y] < 0 || a.piece[y] >= d.shape.num_objects() || a.anchor[y] < 0 ||
            a.anchor[y] >= d.groupoids[a.piece[y]]->num_objects()) {
            rep.add("point " + std::to_string(y) + " has an invalid piece or anchor");
            return rep;
        }
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        std::string an = d.arrow_name(g);
        if ((int)a.alpha[g].size() != X.n * n) {
            rep.add("α_" + an + " has the wrong size");
            return rep;
        }
        std::vector<char> hit(n, 0);
        for (int xi = 0; xi < X.n; ++xi)
            for (int y = 0; y < n; ++y) {
                bool should = a.piece[y] == d.src(g) && a.anchor[y] == X.s[xi];
                int v = a.act(g, xi, y);
                if (should != (v >= 0) || v >= n) {
                    rep.add("α_" + an + " defined incorrectly at (" + X.name(xi) + ", " + std::to_string(y) + ")");
                    continue;
                }
                if (v < 0) continue;
                hit[v] = 1;
                if (a.piece[v] != d.dst(g) || a.anchor[v] != X.r[xi])
                    rep.add("α_" + an + " breaks anchors at (" + X.name(xi) + ", " + std::to_string(y) + ")");
            }
        for (int y = 0; y < n; ++y)
            if (a.piece[y] == d.dst(g) && !hit[y]) rep.add("α_" + an + " misses point " + std::to_string(y));
    }
    if (!rep.ok()) return rep;
    for (int y = 0; y < n; ++y) {
        const FinGroupoid& G = *d.groupoids[a.piece[y]];
        if (act_groupoid(d, a, G.unit(a.anchor[y]), y) != y) rep.add("unit does not fix point " + std::to_string(y));
    }
    for (const auto& [gh_pair, t] : d.mu) {
        auto [g, h] = gh_pair;
        int gh = d.compose(g, h);
        if (gh < 0) continue;
        const Correspondence &X = d.corr[g], &Y = d.corr[h];
        for (int xi = 0; xi < X.n; ++xi)
            for (int eta = 0; eta < Y.n; ++eta) {
                int m = t[(size_t)xi * Y.n + eta];
                if (m < 0) continue;
                for (int y = 0; y < n; ++y) {
                    int ey = a.act(h, eta, y);
                    if (ey < 0) continue;
                    if (a.act(g, xi, ey) != a.act(gh, m, y)) {
                        rep.add("associativity fails for (" + d.arrow_name(g) + ", " + d.arrow_name(h) + ") at (" +
                                X.name(xi) + ", " + Y.name(eta) + ", " + std::to_string(y) + ")");
                        xi = X.n, eta = Y.n;
                        break;
                    }
                }
            }
    }
    if (!rep.ok()) return rep;
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        OrbitSpace orb = right_orbits(X);
        std::map<int, std::pair<int, int>> first;
        for (int xi = 0; xi < X.n; ++xi)
            for (int y = 0; y < n; ++y) {
                int v = a.act(g, xi, y);
                if (v < 0) continue;
                auto [it, fresh] = first.emplace(v, std::pair{xi, y});
                if (fresh) continue;
                auto [xi0, y0] = it->second;
                if (orb.proj[xi0] != orb.proj[xi] || act_groupoid(d, a, inner_product(X, xi0, xi), y) != y0) {
                    rep.add("cancellation fails for " + d.arrow_name(g) + " at point " + std::to_string(v));
                    break;
                }
            }
    }
    return rep;
}

Theta theta_from_action(const Diagram& d, const FAction& a) {
    Theta th(d.num_arrows());
    for (int g = 0; g < d.num_arrows(); ++g)
        for (int xi = 0; xi < d.corr[g].n; ++xi) {
            PartialBijection p = PartialBijection::empty(a.n);
            for (int y = 0; y < a.n; ++y) p.map[y] = a.act(g, xi, y);
            th[g].push_back(p);
        }
    return th;
}

PartialBijection theta_of_slice(const Theta& th, int g, const Slice& u, int n) {
    PartialBijection p = PartialBijection::empty(n);
    for (int xi : u)
        for (int y = 0; y < n; ++y)
            if (th[g][xi].defined(y)) p.map[y] = th[g][xi](y);
    return p;
}

FAction action_from_theta(const Diagram& d, const std::vector<int>& piece, const std::vector<int>& anchor,
                          const Theta& th) {
    int n = (int)piece.size();
    auto label = [&](int g, int xi) { return d.corr[g].name(xi) + " in X_" + d.arrow_name(g); };
    if ((int)th.size() != d.num_arrows()) throw Error("ϑ must be given for every arrow");
    for (int g = 0; g < d.num_arrows(); ++g)
        if ((int)th[g].size() != d.corr[g].n) throw Error("ϑ must be given on every singleton slice");
    // (1) multiplicativity
    for (const auto& [gh_pair, t] : d.mu) {
        auto [g, h] = gh_pair;
        int gh = d.compose(g, h);
        if (gh < 0) continue;
        const Correspondence &X = d.corr[g], &Y = d.corr[h];
        for (int xi = 0; xi < X.n; ++xi)
            for (int eta = 0; eta < Y.n; ++eta) {
                int m = t[(size_t)xi * Y.n + eta];
                PartialBijection want = m >= 0 ? th[gh][m] : PartialBijection::empty(n);
                if (th[g][xi].compose(th[h][eta]) != want)
                    throw ConditionFailed(1, "ϑ(" + label(g, xi) + ")ϑ(" + label(h, eta) + ")");
            }
    }
    // (2) braket law
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        OrbitSpace orb = right_orbits(X);
        int unit = d.identity(d.src(g));
        for (int a = 0; a < X.n; ++a)
            for (int b = 0; b < X.n; ++b) {
                PartialBijection want =
                    orb.proj[a] == orb.proj[b] ? th[unit][inner_product(X, a, b)] : PartialBijection::empty(n);
                if (th[g][a].inverse().compose(th[g][b]) != want)
                    throw ConditionFailed(2, "ϑ(" + label(g, a) + ")*ϑ(" + label(g, b) + ")");
            }
    }
    // (3) covering
    for (int g = 0; g < d.num_arrows(); ++g) {
        std::vector<char> hit(n, 0);
        for (const auto& p : th[g])
            for (int v : p.image()) hit[v] = 1;
        for (int y = 0; y < n; ++y)
            if (piece[y] == d.dst(g) && !hit[y])
                throw ConditionFailed(3, "point " + std::to_string(y) + " is not covered by X_" + d.arrow_name(g));
    }
    // (4) anchors
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        for (int xi = 0; xi < X.n; ++xi)
            for (int y : th[g][xi].domain()) {
                int v = th[g][xi](y);
                if (piece[y] != d.src(g) || anchor[y] != X.s[xi] || piece[v] != d.dst(g) || anchor[v] != X.r[xi])
                    throw ConditionFailed(4, "ϑ(" + label(g, xi) + ") at point " + std::to_string(y));
            }
    }
    // derived: domains and units
    for (int g = 0; g < d.num_arrows(); ++g) {
        const Correspondence& X = d.corr[g];
        for (int xi = 0; xi < X.n; ++xi)
            for (int y = 0; y < n; ++y)
                if ((piece[y] == d.src(g) && anchor[y] == X.s[xi]) != th[g][xi].defined(y))
                    throw ConditionFailed(5, "domain of ϑ(" + label(g, xi) + ") at point " + std::to_string(y));
    }
    for (int x = 0; x < d.shape.num_objects(); ++x) {
        const FinGroupoid& G = *d.groupoids[x];
        int e = d.identity(x);
        for (int u = 0; u < G.num_objects(); ++u)
            for (int y = 0; y < n; ++y)
                if (piece[y] == x && anchor[y] == u && th[e][G.unit(u)](y) != y)
                    throw ConditionFailed(6, "unit " + G.name(G.unit(u)) + " moves point " + std::to_string(y));
    }
    FAction out;
    out.n = n;
    out.piece = piece;
    out.anchor = anchor;
    for (int g = 0; g < d.num_arrows(); ++g) {
        std::vector<int> t;
        for (const auto& p : th[g]) t.insert(t.end(), p.map.begin(), p.map.end());
        out.alpha.push_back(t);
    }
    return out;
}

namespace {

std::vector<int> point_colors(const FAction& a) {
    std::vector<int> col;
    for (int y = 0; y < a.n; ++y) col.push_back(a.piece[y] * 4096 + a.anchor[y]);
    return col;
}

std::vector<std::vector<int>> action_functions(const Diagram& d, const FAction& a) {
    std::vector<std::vector<int>> out;
    for (int g = 0; g < d.num_arrows(); ++g)
        for (int xi = 0; xi < d.corr[g].n; ++xi)
            out.emplace_back(a.alpha[g].begin() + (size_t)xi * a.n, a.alpha[g].begin() + (size_t)(xi + 1) * a.n);
    return out;
}

}  // namespace

std::vector<std::vector<int>> equivariant_maps(const Diagram& d, const FAction& a, const FAction& b) {
    return equivariant_maps_generic(point_colors(a), point_colors(b), action_functions(d, a), action_functions(d, b));
}

bool is_equivariant(const Diagram& d, const FAction& a, const FAction& b, const std::vector<int>& f) {
    for (int y = 0; y < a.n; ++y)
        if (a.piece[y] != b.piece[f[y]] || a.anchor[y] != b.anchor[f[y]]) return false;
    for (int g = 0; g < d.num_arrows(); ++g)
        for (int xi = 0; xi < d.corr[g].n; ++xi)
            for (int y = 0; y < a.n; ++y) {
                int v = a.act(g, xi, y);
                if (v >= 0 && f[v] != b.act(g, xi, f[y])) return false;
            }
    return true;
}

bool invariant_check(const Diagram& d, const FAction& a, const std::vector<int>& f) {
    for (int g = 0; g < d.num_arrows(); ++g)
        for (int xi = 0; xi < d.corr[g].n; ++xi)
            for (int y = 0; y < a.n; ++y) {
                int v = a.act(g, xi, y);
                if (v >= 0 && f[v] != f[y]) return false;
            }
    return true;
}

FAction relabel(const FAction& a, const std::vector<int>& perm) {
    FAction out;
    out.n = a.n;
    out.piece.assign(a.n, -1);
    out.anchor.assign(a.n, -1);
    for (int y = 0; y < a.n; ++y) {
        out.piece[perm[y]] = a.piece[y];
        out.anchor[perm[y]] = a.anchor[y];
    }
    for (const auto& t : a.alpha) {
        std::vector<int> nt(t.size(), -1);
        int m = a.n ? (int)t.size() / a.n : 0;
        for (int xi = 0; xi < m; ++xi)
            for (int y = 0; y < a.n; ++y) {
                int v = t[(size_t)xi * a.n + y];
                if (v >= 0) nt[(size_t)xi * a.n + perm[y]] = perm[v];
            }
        out.alpha.push_back(nt);
    }
    return out;
}

FAction canonical_form(const FAction& a) {
    std::optional<FAction> best;
    for_each_color_relabeling(point_colors(a), [&](const std::vector<int>& perm) {
        FAction r = relabel(a, perm);
        if (!best || r < *best) best = std::move(r);
    });
    return best ? *best : a;
}

std::optional<FAction> complete_action(const Diagram& d, FAction a) {
    int n = a.n;
    std::vector<char> known(d.num_arrows(), 0);
    for (int g = 0; g < d.num_arrows(); ++g) {
        known[g] = !a.alpha[g].empty();
        if (!known[g]) a.alpha[g].assign((size_t)d.corr[g].n * n, -1);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [gh_pair, t] : d.mu) {
            auto [g, h] = gh_pair;
            int gh = d.compose(g, h);
            if (gh < 0 || !known[g] || !known[h]) continue;
            bool was = known[gh];
            const Correspondence &X = d.corr[g], &Y = d.corr[h];
            for (int xi = 0; xi < X.n; ++xi)
                for (int eta = 0; eta < Y.n; ++eta) {
                    int m = t[(size_t)xi * Y.n + eta];
                    if (m < 0) continue;
                    for (int y = 0; y < n; ++y) {
                        int ey = a.act(h, eta, y);
                        if (ey < 0) continue;
                        int v = a.act(g, xi, ey);
                        if (v < 0) return std::nullopt;
                        int& slot = a.alpha[gh][(size_t)m * n + y];
                        if (slot < 0 && !was)
                            slot = v;
                        else if (slot != v)
                            return std::nullopt;
                    }
                }
            if (!was) known[gh] = 1, grew = true;
        }
    }
    if (!validate_action(d, a).ok()) return std::nullopt;
    return a;
}

namespace {

// G-action table on one fiber: table[γ*size + y]
struct LocalAction {
    std::vector<int> anchor;
    std::vector<int> table;
};

std::vector<LocalAction> local_actions(const FinGroupoid& G, const std::vector<int>& anchor) {
    int size = (int)anchor.size();
    Presentation p = presentation_of(G);
    std::vector<LocalAction> out;
    for (const auto& pa : enumerate_presentation_actions(p, size)) {
        if (pa.n != size || pa.anchor != anchor) continue;
        LocalAction la{anchor, std::vector<int>((size_t)G.num_arrows() * size, -1)};
        for (int g = 0; g < G.num_arrows(); ++g) {
            Word w = word_of_arrow(G, g);
            for (int y = 0; y < size; ++y)
                if (anchor[y] == G.src(g)) la.table[(size_t)g * size + y] = apply_word(pa, w, y);
        }
        out.push_back(la);
    }
    return out;
}

}  // namespace

std::vector<FAction> enumerate_actions(const Diagram& d, int n) {
    int k = d.shape.num_objects();
    std::vector<std::pair<int, int>> slots;  // (object, unit)
    for (int x = 0; x < k; ++x)
        for (int u = 0; u < d.groupoids[x]->num_objects(); ++u) slots.push_back({x, u});
    std::vector<int> gens;
    for (int g : d.generating_arrows())
        if (!d.is_identity(g)) gens.push_back(g);
    std::set<FAction> found;
    std::map<std::pair<int, std::vector<int>>, std::vector<LocalAction>> cache;
    std::vector<int> counts(slots.size(), 0);

    auto build = [&](int size) {
        FAction base;
        base.n = size;
        for (size_t i = 0; i < slots.size(); ++i) {
            base.piece.insert(base.piece.end(), counts[i], slots[i].first);
            base.anchor.insert(base.anchor.end(), counts[i], slots[i].second);
        }
        std::vector<std::vector<int>> members(k);
        for (int y = 0; y < size; ++y) members[base.piece[y]].push_back(y);
        std::vector<std::vector<LocalAction>*> choices(k);
        for (int x = 0; x < k; ++x) {
            std::vector<int> anc;
            for (int y : members[x]) anc.push_back(base.anchor[y]);
            auto key = std::pair{x, anc};
            if (!cache.count(key)) cache[key] = local_actions(*d.groupoids[x], anc);
            choices[x] = &cache[key];
            if (choices[x]->empty()) return;
        }
        base.alpha.assign(d.num_arrows(), {});
        std::function<void(int)> pick_local;
        std::function<void(size_t)> pick_gen;
        pick_local = [&](int x) {
            if (x == k) {
                pick_gen(0);
                return;
            }
            int e = d.identity(x);
            const FinGroupoid& G = *d.groupoids[x];
            int m = (int)members[x].size();
            for (const auto& la : *choices[x]) {
                std::vector<int> t((size_t)G.num_arrows() * size, -1);
                for (int g = 0; g < G.num_arrows(); ++g)
                    for (int i = 0; i < m; ++i) {
                        int v = la.table[(size_t)g * m + i];
                        if (v >= 0) t[(size_t)g * size + members[x][i]] = members[x][v];
                    }
                base.alpha[e] = t;
                pick_local(x + 1);
            }
            base.alpha[e].clear();
        };
        pick_gen = [&](size_t i) {
            if (i == gens.size()) {
                if (auto full = complete_action(d, base)) found.insert(canonical_form(*full));
                return;
            }
            int g = gens[i];
            const Correspondence& X = d.corr[g];
            int src = d.src(g), dst = d.dst(g);
            const FinGroupoid &Gs = *d.groupoids[src], &Gr = *d.groupoids[dst];
            // classes of (ξ, y) modulo (ξγ⁻¹, γy)
            std::vector<std::pair<int, int>> pairs;
            std::map<std::pair<int, int>, int> pid;
            for (int xi = 0; xi < X.n; ++xi)
                for (int y : members[src])
                    if (X.s[xi] == base.anchor[y]) {
                        pid[{xi, y}] = (int)pairs.size();
                        pairs.push_back({xi, y});
                    }
            UnionFind uf((int)pairs.size());
            const auto& ls = base.alpha[d.identity(src)];
            for (size_t p = 0; p < pairs.size(); ++p) {
                auto [xi, y] = pairs[p];
                for (int gm = 0; gm < Gs.num_arrows(); ++gm) {
                    int gy = ls[(size_t)gm * size + y];
                    if (gy < 0) continue;
                    int xg = X.right(xi, Gs.inv[gm]);
                    uf.unite((int)p, pid.at({xg, gy}));
                }
            }
            std::map<int, int> cls;
            std::vector<int> class_of(pairs.size());
            std::vector<int> class_rep;
            for (size_t p = 0; p < pairs.size(); ++p) {
                int r = uf.find((int)p);
                auto [it, fresh] = cls.emplace(r, (int)cls.size());
                if (fresh) class_rep.push_back((int)p);
                class_of[p] = it->second;
            }
            int nc = (int)class_rep.size();
            const auto& target = members[dst];
            if (nc != (int)target.size()) return;
            std::vector<int> color_a, color_b;
            for (int c = 0; c < nc; ++c) color_a.push_back(X.r[pairs[class_rep[c]].first]);
            for (int y : target) color_b.push_back(base.anchor[y]);
            std::vector<std::vector<int>> fa, fb;
            std::map<int, int> local;
            for (int i2 = 0; i2 < (int)target.size(); ++i2) local[target[i2]] = i2;
            const auto& ld = base.alpha[d.identity(dst)];
            for (int h = 0; h < Gr.num_arrows(); ++h) {
                std::vector<int> ra(nc, -1), rb(target.size(), -1);
                for (int c = 0; c < nc; ++c) {
                    auto [xi, y] = pairs[class_rep[c]];
                    int hx = X.left(h, xi);
                    if (hx >= 0) ra[c] = class_of[pid.at({hx, y})];
                }
                for (size_t i2 = 0; i2 < target.size(); ++i2) {
                    int v = ld[(size_t)h * size + target[i2]];
                    if (v >= 0) rb[i2] = local.at(v);
                }
                fa.push_back(ra);
                fb.push_back(rb);
            }
            for (const auto& f : equivariant_maps_generic(color_a, color_b, fa, fb)) {
                std::vector<int> sorted = f;
                std::sort(sorted.begin(), sorted.end());
                if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
                std::vector<int> t((size_t)X.n * size, -1);
                for (size_t p = 0; p < pairs.size(); ++p)
                    t[(size_t)pairs[p].first * size + pairs[p].second] = target[f[class_of[p]]];
                base.alpha[g] = t;
                pick_gen(i + 1);
            }
            base.alpha[g].clear();
        };
        pick_local(0);
    };

    for (int size = 0; size <= n; ++size) {
        std::function<void(size_t, int)> distribute = [&](size_t i, int left) {
            if (i + 1 >= slots.size()) {
                if (slots.empty()) {
                    if (left == 0) build(size);
                    return;
                }
                counts[i] = left;
                build(size);
                return;
            }
            for (int c = 0; c <= left; ++c) {
                counts[i] = c;
                distribute(i + 1, left - c);
            }
        };
        distribute(0, size);
    }
    std::vector<FAction> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const FAction& a, const FAction& b) { return a.n < b.n; });
    return out;
}

// ---------------------------------------------------------------- transformations

Report validate_transformation(const Diagram& d0, const Diagram& d1, const Transformation& t) {
    Report rep;
    int k = d0.shape.num_objects();
    if ((int)t.Y.size() != k || (int)t.V.size() != d0.num_arrows() || d1.num_arrows() != d0.num_arrows()) {
        rep.add("malformed transformation data");
        return rep;
    }
    for (int x = 0; x < k; ++x) {
        const Correspondence& Y = t.Y[x];
        if (!same_groupoid(*Y.H, *d1.groupoids[x]) || !same_groupoid(*Y.G, *d0.groupoids[x])) {
            rep.add("Y_" + d0.shape.object_names[x] + " has the wrong groupoids");
            return rep;
        }
        rep.merge(validate_correspondence(Y), "Y_" + d0.shape.object_names[x] + ": ");
    }
    if (!rep.ok()) return rep;
    std::vector<Composite> left, right;
    for (int g = 0; g < d0.num_arrows(); ++g) {
        left.push_back(compose(d1.corr[g], t.Y[d0.src(g)]));
        right.push_back(compose(t.Y[d0.dst(g)], d0.corr[g]));
        rep.merge(check_isomorphism(left[g].c, right[g].c, t.V[g]), "V_" + d0.arrow_name(g) + ": ");
    }
    if (!rep.ok()) return rep;
    for (int x = 0; x < k; ++x) {
        int e = d0.identity(x);
        const Correspondence& Y = t.Y[x];
        const FinGroupoid& G0 = *d0.groupoids[x];
        for (int c = 0; c < left[e].c.n; ++c) {
            auto [gamma, y] = left[e].pair_of[c];
            int gy = Y.left(gamma, y);
            if (t.V[e][c] != right[e].of(gy, G0.unit(Y.s[gy]))) {
                rep.add("V at the identity of " + d0.shape.object_names[x] + " is not the unitor");
                break;
            }
        }
    }
    for (const auto& [gh_pair, m1] : d1.mu) {
        auto [g, h] = gh_pair;
        int gh = d1.compose(g, h);
        if (gh < 0 || !d0.mu.count(gh_pair)) continue;
        const Correspondence &Xg = d1.corr[g], &Xh = d1.corr[h];
        const Correspondence& Ys = t.Y[d0.src(h)];
        bool bad = false;
        for (int a = 0; a < Xg.n && !bad; ++a)
            for (int b = 0; b < Xh.n && !bad; ++b) {
                int ab = m1[(size_t)a * Xh.n + b];
                if (ab < 0) continue;
                for (int y = 0; y < Ys.n && !bad; ++y) {
                    if (Ys.r[y] != Xh.s[b]) continue;
                    int lhs = t.V[gh][left[gh].of(ab, y)];
                    auto [y1, b1] = right[h].pair_of[t.V[h][left[h].of(b, y)]];
                    auto [y2, a2] = right[g].pair_of[t.V[g][left[g].of(a, y1)]];
                    int rhs = right[gh].of(y2, d0.mul(g, h, a2, b1));
                    if (lhs != rhs) {
                        rep.add("square fails for (" + d0.arrow_name(g) + ", " + d0.arrow_name(h) + ")");
                        bad = true;
                    }
                }
            }
    }
    return rep;
}

Transformation identity_transformation(const Diagram& d) {
    Transformation t;
    for (int x = 0; x < d.shape.num_objects(); ++x) t.Y.push_back(identity_correspondence(d.groupoids[x]));
    for (int g = 0; g < d.num_arrows(); ++g) {
        Composite l = compose(d.corr[g], t.Y[d.src(g)]), r = compose(t.Y[d.dst(g)], d.corr[g]);
        const FinGroupoid& Gr = *d.groupoids[d.dst(g)];
        std::vector<int> v;
        for (auto [xi, gamma] : l.pair_of) {
            int xg = d.corr[g].right(xi, gamma);
            v.push_back(r.of(Gr.unit(d.corr[g].r[xg]), xg));
        }
        t.V.push_back(v);
    }
    return t;
}

Transformation compose_transformations(const Diagram& d0, const Diagram& d1, const Diagram& d2,
                                       const Transformation& t1, const Transformation& t2) {
    Transformation t;
    std::vector<Composite> yc;
    for (int x = 0; x < d0.shape.num_objects(); ++x) {
        yc.push_back(compose(t2.Y[x], t1.Y[x]));
        t.Y.push_back(yc.back().c);
    }
    for (int g = 0; g < d0.num_arrows(); ++g) {
        int s = d0.src(g), r = d0.dst(g);
        Composite from = compose(d2.corr[g], t.Y[s]);
        Composite to = compose(t.Y[r], d0.corr[g]);
        Composite l2 = compose(d2.corr[g], t2.Y[s]), r2 = compose(t2.Y[r], d1.corr[g]);
        Composite l1 = compose(d1.corr[g], t1.Y[s]), r1 = compose(t1.Y[r], d0.corr[g]);
        std::vector<int> v;
        for (auto [xi, e] : from.pair_of) {
            auto [a, b] = yc[s].pair_of[e];
            auto [a1, xi1] = r2.pair_of[t2.V[g][l2.of(xi, a)]];
            auto [b1, xi2] = r1.pair_of[t1.V[g][l1.of(xi1, b)]];
            v.push_back(to.of(yc[r].of(a1, b1), xi2));
        }
        t.V.push_back(v);
    }
    return t;
}

Report validate_modification(const Diagram& d0, const Diagram& d1, const Transformation& t1,
                             const Transformation& t2, const std::vector<std::vector<int>>& w) {
    Report rep;
    int k = d0.shape.num_objects();
    if ((int)w.size() != k) {
        rep.add("one map per object expected");
        return rep;
    }
    for (int x = 0; x < k; ++x) rep.merge(check_isomorphism(t1.Y[x], t2.Y[x], w[x]), "W_" + d0.shape.object_names[x] + ": ");
    if (!rep.ok()) return rep;
    for (int g = 0; g < d0.num_arrows(); ++g) {
        int s = d0.src(g), r = d0.dst(g);
        Composite l1 = compose(d1.corr[g], t1.Y[s]), r1 = compose(t1.Y[r], d0.corr[g]);
        Composite l2 = compose(d1.corr[g], t2.Y[s]), r2 = compose(t2.Y[r], d0.corr[g]);
        for (int c = 0; c < l1.c.n; ++c) {
            auto [xi, y] = l1.pair_of[c];
            auto [y1, xi1] = r1.pair_of[t1.V[g][c]];
            if (t2.V[g][l2.of(xi, w[s][y])] != r2.of(w[r][y1], xi1)) {
                rep.add("square fails for " + d0.arrow_name(g));
                break;
            }
        }
    }
    return rep;
}

}  // namespace gcm
