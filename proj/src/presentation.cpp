#include "gcm/presentation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gcm {

Presentation Presentation::group(const std::vector<std::string>& gens, const std::vector<Word>& relators) {
    Presentation p;
    p.object_names = {"*"};
    p.gen_names = gens;
    p.gen_src.assign(gens.size(), 0);
    p.gen_dst.assign(gens.size(), 0);
    p.relators = relators;
    return p;
}

int Presentation::find_gen(const std::string& name) const {
    auto it = std::find(gen_names.begin(), gen_names.end(), name);
    return it == gen_names.end() ? -1 : (int)(it - gen_names.begin());
}

int Presentation::add_gen(const std::string& name, int src, int dst) {
    gen_names.push_back(name);
    gen_src.push_back(src);
    gen_dst.push_back(dst);
    return num_gens() - 1;
}

Word free_reduce(const Word& w) {
    Word out;
    for (const auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w) {
    Word r = free_reduce(w);
    size_t i = 0, j = r.size();
    while (j - i >= 2 && r[i].gen == r[j - 1].gen && r[i].exp == -r[j - 1].exp) ++i, --j;
    return Word(r.begin() + i, r.begin() + j);
}

Word inverse(const Word& w) {
    Word out(w.rbegin(), w.rend());
    for (auto& l : out) l.exp = -l.exp;
    return out;
}

std::string word_str(const Presentation& p, const Word& w) {
    if (w.empty()) return "1";
    std::vector<std::string> parts;
    for (const auto& l : w) parts.push_back(p.gen_names[l.gen] + (l.exp < 0 ? "^-1" : ""));
    return join(parts, " ");
}

std::string presentation_str(const Presentation& p) {
    std::vector<std::string> rels;
    for (const auto& r : p.relators) rels.push_back(word_str(p, r));
    return "< " + join(p.gen_names, ", ") + " | " + join(rels, ", ") + " >";
}

std::pair<int, int> word_endpoints(const Presentation& p, const Word& w, int empty_at) {
    if (w.empty()) return {empty_at, empty_at};
    // rightmost letter acts first
    auto from = [&](const Letter& l) { return l.exp > 0 ? p.gen_src[l.gen] : p.gen_dst[l.gen]; };
    auto to = [&](const Letter& l) { return l.exp > 0 ? p.gen_dst[l.gen] : p.gen_src[l.gen]; };
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (from(w[i]) != to(w[i + 1])) return {-1, -1};
    return {from(w.back()), to(w.front())};
}

Report validate_presentation(const Presentation& p) {
    Report rep;
    for (int g = 0; g < p.num_gens(); ++g)
        if (p.gen_src[g] < 0 || p.gen_src[g] >= (int)p.object_names.size() || p.gen_dst[g] < 0 ||
            p.gen_dst[g] >= (int)p.object_names.size())
            rep.add("generator " + p.gen_names[g] + " has endpoints out of range");
    for (const auto& r : p.relators) {
        for (const auto& l : r)
            if (l.gen < 0 || l.gen >= p.num_gens() || (l.exp != 1 && l.exp != -1)) {
                rep.add("relator has an invalid letter");
                return rep;
            }
        auto [a, b] = word_endpoints(p, r);
        if (!r.empty() && (a < 0 || a != b)) rep.add("relator " + word_str(p, r) + " is not a closed path");
    }
    return rep;
}

namespace {

Word least_rotation(const Word& w) {
    Word best = w;
    for (int inv = 0; inv < 2; ++inv) {
        Word v = inv ? inverse(w) : w;
        for (size_t k = 0; k < v.size(); ++k) {
            Word r(v.begin() + k, v.end());
            r.insert(r.end(), v.begin(), v.begin() + k);
            if (r < best) best = r;
        }
    }
    return best;
}

}  // namespace

Presentation canonical(const Presentation& p) {
    Presentation out = p;
    std::set<Word> rels;
    for (const auto& r : p.relators) {
        Word c = cyclic_reduce(r);
        if (c.empty()) continue;
        // only group presentations may be rotated freely
        rels.insert(p.object_names.size() == 1 ? least_rotation(c) : c);
    }
    out.relators.assign(rels.begin(), rels.end());
    return out;
}

bool same_presentation(const Presentation& a, const Presentation& b) {
    Presentation ca = canonical(a), cb = canonical(b);
    return ca.gen_names == cb.gen_names && ca.gen_src == cb.gen_src && ca.gen_dst == cb.gen_dst &&
           ca.object_names.size() == cb.object_names.size() && ca.relators == cb.relators;
}

Word word_of_arrow(const FinGroupoid& g, int arrow) {
    if (g.is_unit(arrow)) return {};
    int index = 0;
    for (int a = 0; a < arrow; ++a)
        if (!g.is_unit(a)) ++index;
    return {{index, 1}};
}

Presentation presentation_of(const FinGroupoid& g) {
    Presentation p;
    p.object_names = g.cat.object_names;
    std::vector<int> gen(g.num_arrows(), -1);
    for (int a = 0; a < g.num_arrows(); ++a)
        if (!g.is_unit(a)) gen[a] = p.add_gen(g.name(a), g.src(a), g.dst(a));
    for (int a = 0; a < g.num_arrows(); ++a)
        for (int b = 0; b < g.num_arrows(); ++b) {
            int ab = g.mul(a, b);
            if (ab < 0 || g.is_unit(a) || g.is_unit(b)) continue;
            Word w = {{gen[a], 1}, {gen[b], 1}};
            if (!g.is_unit(ab)) w.insert(w.begin(), Letter{gen[ab], -1});
            p.relators.push_back(w);
        }
    return p;
}

Presentation vertex_group(const Presentation& p, int root, const std::vector<Word>& tree) {
    Presentation out = Presentation::group(p.gen_names, p.relators);
    out.object_names = {p.object_names[root]};
    for (int x = 0; x < (int)tree.size(); ++x) {
        if (x == root) continue;
        auto [a, b] = word_endpoints(p, tree[x], x);
        if (a != x || b != root) throw Error("tree word for " + p.object_names[x] + " does not end at the root");
        out.relators.push_back(tree[x]);
    }
    return out;
}

Presentation tietze_eliminate(const Presentation& p, const std::vector<char>& removable) {
    int n = p.num_gens();
    std::vector<Word> rels = p.relators;
    std::vector<char> alive(n, 1);
    auto substitute = [&](int g, const Word& repl) {
        for (auto& r : rels) {
            Word nr;
            for (const auto& l : r) {
                if (l.gen != g) {
                    nr.push_back(l);
                    continue;
                }
                Word piece = l.exp > 0 ? repl : inverse(repl);
                nr.insert(nr.end(), piece.begin(), piece.end());
            }
            r = nr;
        }
        alive[g] = 0;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& r : rels) r = cyclic_reduce(r);
        rels.erase(std::remove_if(rels.begin(), rels.end(), [](const Word& w) { return w.empty(); }), rels.end());
        for (size_t i = 0; i < rels.size() && !changed; ++i) {
            const Word r = rels[i];
            if (r.size() == 1 && removable[r[0].gen]) {
                rels.erase(rels.begin() + i);
                substitute(r[0].gen, {});
                changed = true;
            } else if (r.size() == 2 && r[0].gen != r[1].gen) {
                // a^e b^f = 1
                int pick = -1;
                for (int k : {1, 0})
                    if (removable[r[k].gen]) {
                        pick = k;
                        break;
                    }
                if (pick < 0) continue;
                const Letter& x = r[pick];
                const Letter& y = r[1 - pick];
                rels.erase(rels.begin() + i);
                substitute(x.gen, {{y.gen, -y.exp * x.exp}});
                changed = true;
            }
        }
    }
    Presentation out;
    out.object_names = p.object_names;
    std::vector<int> index(n, -1);
    for (int g = 0; g < n; ++g)
        if (alive[g]) index[g] = out.add_gen(p.gen_names[g], p.gen_src[g], p.gen_dst[g]);
    for (const auto& r : rels) {
        Word w;
        for (const auto& l : r) w.push_back({index[l.gen], l.exp});
        out.relators.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------- actions

int apply_word(const PresAction& a, const Word& w, int y) {
    for (auto it = w.rbegin(); it != w.rend() && y >= 0; ++it) {
        const auto& perm = a.perm[it->gen];
        if (it->exp > 0) {
            y = perm[y];
        } else {
            auto pos = std::find(perm.begin(), perm.end(), y);
            y = pos == perm.end() ? -1 : (int)(pos - perm.begin());
        }
    }
    return y;
}

bool satisfies_relators(const Presentation& p, const PresAction& a) {
    for (const auto& r : p.relators) {
        auto [from, to] = word_endpoints(p, r);
        for (int y = 0; y < a.n; ++y) {
            if (r.empty() || a.anchor[y] != from) continue;
            if (apply_word(a, r, y) != y) return false;
        }
    }
    return true;
}

PresAction relabel(const PresAction& a, const std::vector<int>& perm) {
    PresAction out;
    out.n = a.n;
    out.anchor.assign(a.n, -1);
    for (int y = 0; y < a.n; ++y) out.anchor[perm[y]] = a.anchor[y];
    for (const auto& g : a.perm) {
        std::vector<int> ng(a.n, -1);
        for (int y = 0; y < a.n; ++y)
            if (g[y] >= 0) ng[perm[y]] = perm[g[y]];
        out.perm.push_back(ng);
    }
    return out;
}


PresAction canonical_form(const PresAction& a) {
    PresAction best;
    bool first = true;
    for_each_color_relabeling(a.anchor, [&](const std::vector<int>& perm) {
        PresAction r = relabel(a, perm);
        if (first || r < best) best = r, first = false;
    });
    if (first) return a;
    return best;
}

std::vector<PresAction> enumerate_presentation_actions(const Presentation& p, int n) {
    int k = (int)p.object_names.size();
    std::set<PresAction> found;
    for (int size = 0; size <= n; ++size) {
        std::vector<int> counts(k, 0);
        std::function<void(int, int)> distribute = [&](int obj, int left) {
            if (obj == k - 1) {
                counts[obj] = left;
                PresAction base;
                base.n = size;
                for (int x = 0; x < k; ++x) base.anchor.insert(base.anchor.end(), counts[x], x);
                std::vector<std::vector<int>> fiber(k);
                for (int y = 0; y < size; ++y) fiber[base.anchor[y]].push_back(y);
                for (int g = 0; g < p.num_gens(); ++g)
                    if (fiber[p.gen_src[g]].size() != fiber[p.gen_dst[g]].size()) return;
                // relators whose generators are all assigned once generator g is chosen
                std::vector<std::vector<int>> due(p.num_gens());
                for (int r = 0; r < (int)p.relators.size(); ++r) {
                    int last = -1;
                    for (const auto& l : p.relators[r]) last = std::max(last, l.gen);
                    if (last >= 0) due[last].push_back(r);
                }
                base.perm.assign(p.num_gens(), std::vector<int>(size, -1));
                std::function<void(int)> choose = [&](int g) {
                    if (g == p.num_gens()) {
                        found.insert(canonical_form(base));
                        return;
                    }
                    auto src = fiber[p.gen_src[g]];
                    auto img = fiber[p.gen_dst[g]];
                    std::sort(img.begin(), img.end());
                    do {
                        for (size_t i = 0; i < src.size(); ++i) base.perm[g][src[i]] = img[i];
                        bool ok = true;
                        for (int r : due[g]) {
                            auto [from, to] = word_endpoints(p, p.relators[r]);
                            for (int y : fiber[from])
                                if (apply_word(base, p.relators[r], y) != y) {
                                    ok = false;
                                    break;
                                }
                            if (!ok) break;
                        }
                        if (ok) choose(g + 1);
                    } while (std::next_permutation(img.begin(), img.end()));
                    std::fill(base.perm[g].begin(), base.perm[g].end(), -1);
                };
                choose(0);
                return;
            }
            for (int c = 0; c <= left; ++c) {
                counts[obj] = c;
                distribute(obj + 1, left - c);
            }
        };
        if (k == 0) {
            if (size == 0) found.insert(PresAction{0, {}, std::vector<std::vector<int>>(p.num_gens())});
            continue;
        }
        distribute(0, size);
    }
    std::vector<PresAction> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const PresAction& a, const PresAction& b) { return a.n < b.n; });
    return out;
}

std::vector<std::vector<int>> equivariant_maps_generic(const std::vector<int>& color_a, const std::vector<int>& color_b,
                                                       const std::vector<std::vector<int>>& fa,
                                                       const std::vector<std::vector<int>>& fb) {
    int na = (int)color_a.size(), nb = (int)color_b.size();
    std::vector<std::vector<int>> out;
    std::vector<int> f(na, -1);
    std::function<void()> rec = [&]() {
        int y = (int)(std::find(f.begin(), f.end(), -1) - f.begin());
        if (y == na) {
            out.push_back(f);
            return;
        }
        for (int z = 0; z < nb; ++z) {
            if (color_b[z] != color_a[y]) continue;
            std::vector<int> assigned;
            std::vector<std::pair<int, int>> queue = {{y, z}};
            bool ok = true;
            while (!queue.empty() && ok) {
                auto [u, v] = queue.back();
                queue.pop_back();
                if (f[u] >= 0) {
                    ok = f[u] == v;
                    continue;
                }
                if (color_b[v] != color_a[u]) {
                    ok = false;
                    break;
                }
                f[u] = v;
                assigned.push_back(u);
                for (size_t i = 0; i < fa.size() && ok; ++i) {
                    int u2 = fa[i][u], v2 = fb[i][v];
                    if ((u2 < 0) != (v2 < 0)) ok = false;
                    else if (u2 >= 0) queue.push_back({u2, v2});
                }
            }
            if (ok) rec();
            for (int u : assigned) f[u] = -1;
        }
    };
    rec();
    return out;
}

std::vector<std::vector<int>> presentation_equivariant_maps(const PresAction& a, const PresAction& b) {
    return equivariant_maps_generic(a.anchor, b.anchor, a.perm, b.perm);
}

bool presentation_invariant(const PresAction& a, const std::vector<int>& f) {
    for (const auto& g : a.perm)
        for (int y = 0; y < a.n; ++y)
            if (g[y] >= 0 && f[g[y]] != f[y]) return false;
    return true;
}

}  // namespace gcm
