#include "gcm/selfsim.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gcm {

int SelfSimilar::find_edge(const std::string& name) const {
    auto it = std::find(edge_names.begin(), edge_names.end(), name);
    return it == edge_names.end() ? -1 : (int)(it - edge_names.begin());
}

SelfSimilar selfsim_from_group(const FinGroup& group, const std::vector<std::string>& letters,
                               const std::vector<int>& act, const std::vector<int>& res) {
    SelfSimilar s;
    s.G = std::make_shared<const FinGroupoid>(FinGroupoid::from_group(group));
    s.edge_names = letters;
    s.er.assign(letters.size(), 0);
    s.es.assign(letters.size(), 0);
    s.act = act;
    s.res = res;
    return s;
}

SelfSimilar selfsim_from_graph(const FinGroup& gamma, const std::vector<std::string>& vertices,
                               const std::vector<int>& vact, const std::vector<std::string>& edges,
                               const std::vector<int>& er, const std::vector<int>& es,
                               const std::vector<int>& eact, const std::vector<int>& eres) {
    SelfSimilar s;
    int nv = (int)vertices.size(), ne = (int)edges.size();
    s.G = std::make_shared<const FinGroupoid>(FinGroupoid::transformation(gamma, vertices, vact));
    s.edge_names = edges;
    s.er = er;
    s.es = es;
    s.act.assign((size_t)gamma.order() * nv * ne, -1);
    s.res.assign((size_t)gamma.order() * nv * ne, -1);
    // arrow (g,v) has index g*|V| + v
    for (int g = 0; g < gamma.order(); ++g)
        for (int v = 0; v < nv; ++v)
            for (int e = 0; e < ne; ++e) {
                if (er[e] != v) continue;
                size_t k = (size_t)(g * nv + v) * ne + e;
                s.act[k] = eact[(size_t)g * ne + e];
                s.res[k] = eres[(size_t)g * ne + e] * nv + es[e];
            }
    return s;
}

Report validate_selfsim(const SelfSimilar& s) {
    Report rep;
    const FinGroupoid& G = *s.G;
    int ne = s.num_edges();
    if ((int)s.er.size() != ne || (int)s.es.size() != ne || (int)s.act.size() != G.num_arrows() * ne ||
        (int)s.res.size() != G.num_arrows() * ne) {
        rep.add("malformed self-similar data");
        return rep;
    }
    for (int e = 0; e < ne; ++e)
        if (s.er[e] < 0 || s.er[e] >= G.num_objects() || s.es[e] < 0 || s.es[e] >= G.num_objects()) {
            rep.add("edge " + s.edge_names[e] + " has endpoints out of range");
            return rep;
        }
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int e = 0; e < ne; ++e) {
            int ge = s.act_on(g, e), r = s.restrict_to(g, e);
            bool should = G.src(g) == s.er[e];
            if (should != (ge >= 0) || should != (r >= 0)) {
                rep.add("action of " + G.name(g) + " on " + s.edge_names[e] + " defined incorrectly");
                continue;
            }
            if (!should) continue;
            if (ge >= ne || r >= G.num_arrows()) {
                rep.add("action data out of range");
                return rep;
            }
            if (s.er[ge] != G.dst(g)) rep.add("r(" + G.name(g) + "·" + s.edge_names[e] + ") ≠ " + G.object_name(G.dst(g)));
            if (G.src(r) != s.es[e] || G.dst(r) != s.es[ge])
                rep.add("restriction " + G.name(g) + "|" + s.edge_names[e] + " has the wrong endpoints");
            if (G.is_unit(g) && (ge != e || !G.is_unit(r))) rep.add("unit acts nontrivially on " + s.edge_names[e]);
        }
    if (!rep.ok()) return rep;
    for (int g = 0; g < G.num_arrows(); ++g)
        for (int h = 0; h < G.num_arrows(); ++h) {
            int gh = G.mul(g, h);
            if (gh < 0) continue;
            for (int e = 0; e < ne; ++e) {
                if (s.er[e] != G.src(h)) continue;
                int he = s.act_on(h, e);
                if (s.act_on(gh, e) != s.act_on(g, he))
                    rep.add("(" + G.name(g) + G.name(h) + ")·" + s.edge_names[e] + " is not associative");
                if (s.restrict_to(gh, e) != G.mul(s.restrict_to(g, he), s.restrict_to(h, e)))
                    rep.add("cocycle fails at (" + G.name(g) + ", " + G.name(h) + ", " + s.edge_names[e] + ")");
            }
        }
    return rep;
}

// ---------------------------------------------------------------- paths

int path_source(const SelfSimilar& s, const Path& w) { return w.edges.empty() ? w.range : s.es[w.edges.back()]; }

bool is_path(const SelfSimilar& s, const Path& w) {
    if (w.range < 0 || w.range >= s.num_vertices()) return false;
    int v = w.range;
    for (int e : w.edges) {
        if (e < 0 || e >= s.num_edges() || s.er[e] != v) return false;
        v = s.es[e];
    }
    return true;
}

Path concat(const Path& a, const Path& b) {
    Path out = a;
    out.edges.insert(out.edges.end(), b.edges.begin(), b.edges.end());
    return out;
}

std::pair<Path, int> act_path(const SelfSimilar& s, int g, const Path& w) {
    Path out{s.G->dst(g), {}};
    for (int e : w.edges) {
        out.edges.push_back(s.act_on(g, e));
        g = s.restrict_to(g, e);
    }
    return {out, g};
}

std::vector<Path> all_paths(const SelfSimilar& s, int length) {
    std::vector<Path> out;
    for (int v = 0; v < s.num_vertices(); ++v) {
        std::vector<Path> layer = {Path{v, {}}};
        for (int k = 0; k < length; ++k) {
            std::vector<Path> next;
            for (const auto& w : layer)
                for (int e = 0; e < s.num_edges(); ++e)
                    if (s.er[e] == path_source(s, w)) {
                        Path x = w;
                        x.edges.push_back(e);
                        next.push_back(x);
                    }
            layer = next;
        }
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

std::string path_str(const SelfSimilar& s, const Path& w) {
    if (w.edges.empty()) return s.num_vertices() == 1 ? "ε" : "ε_" + s.G->object_name(w.range);
    std::vector<std::string> parts;
    for (int e : w.edges) parts.push_back(s.edge_names[e]);
    return "(" + join(parts, ",") + ")";
}

// ---------------------------------------------------------------- normal forms

NormalForm nf_zero() {
    NormalForm t;
    t.zero = true;
    return t;
}

bool nf_valid(const SelfSimilar& s, const NormalForm& t) {
    if (t.zero) return true;
    if (!is_path(s, t.w1) || !is_path(s, t.w2) || t.g < 0 || t.g >= s.G->num_arrows()) return false;
    return s.G->src(t.g) == path_source(s, t.w2) && s.G->dst(t.g) == path_source(s, t.w1);
}

namespace {

// x with w = u·x, when u is a prefix of w
std::optional<Path> strip_prefix(const SelfSimilar& s, const Path& u, const Path& w) {
    if (u.range != w.range || u.edges.size() > w.edges.size()) return std::nullopt;
    if (!std::equal(u.edges.begin(), u.edges.end(), w.edges.begin())) return std::nullopt;
    return Path{path_source(s, u), std::vector<int>(w.edges.begin() + u.edges.size(), w.edges.end())};
}

}  // namespace

NormalForm nf_mul(const SelfSimilar& s, const NormalForm& t1, const NormalForm& t2) {
    if (t1.zero || t2.zero) return nf_zero();
    const FinGroupoid& G = *s.G;
    if (auto x = strip_prefix(s, t1.w2, t2.w1)) {
        auto [gx, r] = act_path(s, t1.g, *x);
        return NormalForm{false, concat(t1.w1, gx), G.mul(r, t2.g), t2.w2};
    }
    if (auto x = strip_prefix(s, t2.w1, t1.w2)) {
        auto [hx, r] = act_path(s, G.inv[t2.g], *x);
        return NormalForm{false, t1.w1, G.mul(t1.g, G.inv[r]), concat(t2.w2, hx)};
    }
    return nf_zero();
}

NormalForm nf_star(const SelfSimilar& s, const NormalForm& t) {
    if (t.zero) return t;
    return NormalForm{false, t.w2, s.G->inv[t.g], t.w1};
}

std::string nf_str(const SelfSimilar& s, const NormalForm& t) {
    if (t.zero) return "0";
    return "(" + path_str(s, t.w1) + "," + s.G->name(t.g) + "," + path_str(s, t.w2) + ")";
}

namespace {

std::string trim(const std::string& x) {
    size_t a = x.find_first_not_of(" \t"), b = x.find_last_not_of(" \t");
    return a == std::string::npos ? "" : x.substr(a, b - a + 1);
}

std::vector<std::string> split_top(const std::string& body, char sep) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : body) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// edge names, splitting a token into characters when it is not itself a name
std::vector<int> parse_edges(const SelfSimilar& s, const std::vector<std::string>& tokens) {
    std::vector<int> out;
    for (const auto& tok : tokens) {
        if (tok.empty()) continue;
        int e = s.find_edge(tok);
        if (e >= 0) {
            out.push_back(e);
            continue;
        }
        for (char c : tok) {
            int f = s.find_edge(std::string(1, c));
            if (f < 0) throw ParseError("unknown edge '" + tok + "'");
            out.push_back(f);
        }
    }
    return out;
}

}  // namespace

Path parse_path(const SelfSimilar& s, const std::string& text) {
    std::string t = trim(text);
    if (t.rfind("ε", 0) == 0) {
        std::string rest = t.substr(std::string("ε").size());
        if (rest.empty()) {
            if (s.num_vertices() != 1) throw ParseError("empty path needs a vertex: " + t);
            return Path{0, {}};
        }
        if (rest[0] != '_') throw ParseError("bad path " + t);
        for (int v = 0; v < s.num_vertices(); ++v)
            if (s.G->object_name(v) == rest.substr(1)) return Path{v, {}};
        throw ParseError("unknown vertex in " + t);
    }
    if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
    std::vector<int> edges = parse_edges(s, split_top(t, ','));
    if (edges.empty()) throw ParseError("empty path without ε: " + text);
    Path w{s.er[edges[0]], edges};
    if (!is_path(s, w)) throw ParseError("edges do not compose: " + text);
    return w;
}


NormalForm parse_nf(const SelfSimilar& s, const std::string& text) {
    std::string t = trim(text);
    if (t == "0") return nf_zero();
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') throw ParseError("normal form must be (w1,g,w2): " + text);
    auto parts = split_top(t.substr(1, t.size() - 2), ',');
    if (parts.size() != 3) throw ParseError("normal form must have three parts: " + text);
    NormalForm out;
    out.w1 = parse_path(s, parts[0]);
    out.w2 = parse_path(s, parts[2]);
    out.g = -1;
    for (int g = 0; g < s.G->num_arrows(); ++g)
        if (s.G->name(g) == parts[1] && s.G->src(g) == path_source(s, out.w2)) out.g = g;
    if (out.g < 0)
        for (int g = 0; g < s.G->num_arrows(); ++g)
            if (s.G->name(g) == parts[1]) out.g = g;
    if (out.g < 0) throw ParseError("unknown group element " + parts[1]);
    if (!nf_valid(s, out)) throw ParseError("endpoints do not match in " + text);
    return out;
}

std::vector<NormalForm> all_normal_forms(const SelfSimilar& s, int max_len) {
    std::vector<Path> paths;
    for (int k = 0; k <= max_len; ++k) {
        auto layer = all_paths(s, k);
        paths.insert(paths.end(), layer.begin(), layer.end());
    }
    std::vector<NormalForm> out;
    for (const auto& w1 : paths)
        for (int g = 0; g < s.G->num_arrows(); ++g)
            for (const auto& w2 : paths) {
                NormalForm t{false, w1, g, w2};
                if (nf_valid(s, t)) out.push_back(t);
            }
    return out;
}

std::optional<Path> act_on_path(const SelfSimilar& s, const NormalForm& t, const Path& z) {
    if (t.zero) return std::nullopt;
    auto x = strip_prefix(s, t.w2, z);
    if (!x) return std::nullopt;
    return concat(t.w1, act_path(s, t.g, *x).first);
}

// ---------------------------------------------------------------- rational points

int point_letter(const RationalPoint& z, int i) {
    int p = (int)z.pre.edges.size();
    return i < p ? z.pre.edges[i] : z.period[(i - p) % z.period.size()];
}

RationalPoint normalize_point(const SelfSimilar& s, RationalPoint z) {
    int n = (int)z.period.size();
    for (int d = 1; d <= n; ++d) {
        if (n % d) continue;
        bool ok = true;
        for (int i = d; i < n && ok; ++i) ok = z.period[i] == z.period[i - d];
        if (ok) {
            z.period.resize(d);
            break;
        }
    }
    while (!z.pre.edges.empty() && z.pre.edges.back() == z.period.back()) {
        z.pre.edges.pop_back();
        std::rotate(z.period.rbegin(), z.period.rbegin() + 1, z.period.rend());
    }
    if (z.pre.edges.empty()) z.pre.range = s.er[z.period[0]];
    return z;
}

RationalPoint drop_prefix(const SelfSimilar& s, const RationalPoint& z, int k) {
    RationalPoint out;
    int p = (int)z.pre.edges.size();
    if (k <= p) {
        out.pre.edges.assign(z.pre.edges.begin() + k, z.pre.edges.end());
        out.period = z.period;
    } else {
        int j = (k - p) % (int)z.period.size();
        out.period.assign(z.period.begin() + j, z.period.end());
        out.period.insert(out.period.end(), z.period.begin(), z.period.begin() + j);
    }
    out.pre.range = s.er[point_letter(out, 0)];
    return out;
}

bool point_valid(const SelfSimilar& s, const RationalPoint& z) {
    if (z.period.empty()) return false;
    Path full = z.pre;
    full.edges.insert(full.edges.end(), z.period.begin(), z.period.end());
    full.edges.push_back(z.period[0]);
    return is_path(s, full);
}

std::pair<RationalPoint, int> act_point_by(const SelfSimilar& s, int g, const RationalPoint& z) {
    auto [head, h] = act_path(s, g, z.pre);
    Path cyc{s.er[z.period[0]], z.period};
    std::map<int, int> seen;
    std::vector<Path> images;
    while (!seen.count(h)) {
        seen[h] = (int)images.size();
        auto [img, next] = act_path(s, h, cyc);
        images.push_back(img);
        h = next;
    }
    int c = seen[h];
    RationalPoint out;
    out.pre = head;
    for (int i = 0; i < c; ++i) out.pre = concat(out.pre, images[i]);
    for (int i = c; i < (int)images.size(); ++i)
        out.period.insert(out.period.end(), images[i].edges.begin(), images[i].edges.end());
    return {normalize_point(s, out), g};
}

std::optional<RationalPoint> act_on_point(const SelfSimilar& s, const NormalForm& t, const RationalPoint& z) {
    if (t.zero) return std::nullopt;
    int k = (int)t.w2.edges.size();
    if (z.pre.range != t.w2.range && !(z.pre.edges.empty() && s.er[z.period[0]] == t.w2.range)) return std::nullopt;
    for (int i = 0; i < k; ++i)
        if (point_letter(z, i) != t.w2.edges[i]) return std::nullopt;
    RationalPoint tail = drop_prefix(s, z, k);
    if (s.G->src(t.g) != tail.pre.range) return std::nullopt;
    RationalPoint moved = act_point_by(s, t.g, tail).first;
    moved.pre = concat(t.w1, moved.pre);
    return normalize_point(s, moved);
}

std::string point_str(const SelfSimilar& s, const RationalPoint& z) {
    std::vector<std::string> parts;
    for (int e : z.pre.edges) parts.push_back(s.edge_names[e]);
    std::vector<std::string> per;
    for (int e : z.period) per.push_back(s.edge_names[e]);
    parts.push_back((per.size() == 1 ? per[0] : "(" + join(per, " ") + ")") + "^∞");
    return join(parts, " ");
}

RationalPoint parse_point(const SelfSimilar& s, const std::string& text) {
    std::string t = trim(text);
    std::string inf;
    for (std::string mark : {"^∞", "^inf"}) {
        if (t.size() >= mark.size() && t.compare(t.size() - mark.size(), mark.size(), mark) == 0) {
            inf = mark;
            break;
        }
    }
    if (inf.empty()) throw ParseError("point must end with ^∞: " + text);
    t = trim(t.substr(0, t.size() - inf.size()));
    std::string period_text, pre_text;
    if (!t.empty() && t.back() == ')') {
        size_t open = t.rfind('(');
        if (open == std::string::npos) throw ParseError("unbalanced period in " + text);
        period_text = t.substr(open + 1, t.size() - open - 2);
        pre_text = t.substr(0, open);
    } else {
        size_t sp = t.find_last_of(" ");
        period_text = sp == std::string::npos ? t : t.substr(sp + 1);
        pre_text = sp == std::string::npos ? "" : t.substr(0, sp);
    }
    auto tokens = [](const std::string& x) {
        std::vector<std::string> out;
        std::string cur;
        for (char c : x) {
            if (c == ' ' || c == ',') {
                if (!cur.empty()) out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (!cur.empty()) out.push_back(cur);
        return out;
    };
    RationalPoint z;
    z.period = parse_edges(s, tokens(period_text));
    if (z.period.empty()) throw ParseError("empty period in " + text);
    auto pre_tokens = tokens(pre_text);
    pre_tokens.erase(std::remove(pre_tokens.begin(), pre_tokens.end(), "ε"), pre_tokens.end());
    z.pre.edges = parse_edges(s, pre_tokens);
    z.pre.range = s.er[z.pre.edges.empty() ? z.period[0] : z.pre.edges[0]];
    if (!point_valid(s, z)) throw ParseError("not an infinite path: " + text);
    return normalize_point(s, z);
}

std::vector<char> capable_vertices(const SelfSimilar& s) {
    std::vector<char> cap(s.num_vertices(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < s.num_vertices(); ++v) {
            if (!cap[v]) continue;
            bool has = false;
            for (int e = 0; e < s.num_edges() && !has; ++e) has = s.er[e] == v && cap[s.es[e]];
            if (!has) cap[v] = 0, changed = true;
        }
    }
    return cap;
}

std::vector<RationalPoint> rational_points(const SelfSimilar& s, int max_pre, int max_period) {
    std::set<RationalPoint> out;
    std::vector<Path> cycles;
    for (int k = 1; k <= max_period; ++k)
        for (const auto& w : all_paths(s, k))
            if (path_source(s, w) == w.range) cycles.push_back(w);
    for (int k = 0; k <= max_pre; ++k)
        for (const auto& u : all_paths(s, k))
            for (const auto& c : cycles) {
                if (path_source(s, u) != c.range) continue;
                RationalPoint z{u, c.edges};
                out.insert(normalize_point(s, z));
            }
    return std::vector<RationalPoint>(out.begin(), out.end());
}

// ---------------------------------------------------------------- germs

bool germ_equal(const SelfSimilar& s, const NormalForm& t1, const NormalForm& t2, const RationalPoint& z) {
    if (!act_on_point(s, t1, z) || !act_on_point(s, t2, z)) return false;
    int k1 = (int)t1.w2.edges.size(), k2 = (int)t2.w2.edges.size();
    if ((int)t1.w1.edges.size() - k1 != (int)t2.w1.edges.size() - k2) return false;
    int L = std::max(k1, k2);
    auto cut = [&](const NormalForm& t, int k) {
        Path x{t.w2.edges.empty() ? t.w2.range : path_source(s, t.w2), {}};
        for (int i = k; i < L; ++i) x.edges.push_back(point_letter(z, i));
        auto [img, h] = act_path(s, t.g, x);
        return std::pair{concat(t.w1, img), h};
    };
    auto [p1, h1] = cut(t1, k1);
    auto [p2, h2] = cut(t2, k2);
    if (p1 != p2) return false;
    int pre = (int)z.pre.edges.size(), per = (int)z.period.size();
    std::set<std::tuple<int, int, int>> seen;
    while (true) {
        if (h1 == h2) return true;
        if (L >= pre) {
            int phase = (L - pre) % per;
            if (!seen.insert({h1, h2, phase}).second) return false;
        }
        int e = point_letter(z, L);
        if (s.act_on(h1, e) != s.act_on(h2, e)) return false;
        h1 = s.restrict_to(h1, e);
        h2 = s.restrict_to(h2, e);
        ++L;
    }
}

EffectiveResult effective_check(const SelfSimilar& s) {
    const FinGroupoid& G = *s.G;
    auto cap = capable_vertices(s);
    std::vector<int> capable_edges;
    for (int e = 0; e < s.num_edges(); ++e)
        if (cap[s.es[e]]) capable_edges.push_back(e);
    std::vector<char> in(G.num_arrows(), 0);
    for (int g = 0; g < G.num_arrows(); ++g) in[g] = G.src(g) == G.dst(g) && cap[G.src(g)];
    bool changed = true;
    while (changed) {
        changed = false;
        for (int g = 0; g < G.num_arrows(); ++g) {
            if (!in[g]) continue;
            for (int e : capable_edges) {
                if (s.er[e] != G.src(g)) continue;
                if (s.act_on(g, e) != e || !in[s.restrict_to(g, e)]) {
                    in[g] = 0;
                    changed = true;
                    break;
                }
            }
        }
    }
    EffectiveResult out;
    for (int g = 0; g < G.num_arrows(); ++g)
        if (in[g]) out.kernel.push_back(g);
    for (int g : out.kernel) {
        if (G.is_unit(g)) continue;
        std::set<int> level = {g};
        std::set<std::set<int>> seen;
        bool trivializes = false;
        while (true) {
            if (std::all_of(level.begin(), level.end(), [&](int h) { return G.is_unit(h); })) {
                trivializes = true;
                break;
            }
            if (!seen.insert(level).second) break;
            std::set<int> next;
            for (int h : level)
                for (int e : capable_edges)
                    if (s.er[e] == G.src(h)) next.insert(s.restrict_to(h, e));
            level = next;
        }
        if (!trivializes) {
            out.effective = false;
            out.witness = g;
            break;
        }
    }
    return out;
}

std::vector<NormalForm> slice_intersections(const SelfSimilar& s, const NormalForm& t1, const NormalForm& t2, int depth) {
    if (t1.zero || t2.zero) return {};
    const FinGroupoid& G = *s.G;
    NormalForm a = t1, b = t2;
    // restrict the shorter one to the cylinder of the longer w2
    auto align = [&](NormalForm& shorter, const NormalForm& longer) -> bool {
        auto x = strip_prefix(s, shorter.w2, longer.w2);
        if (!x) return false;
        auto [gx, r] = act_path(s, shorter.g, *x);
        shorter = NormalForm{false, concat(shorter.w1, gx), r, longer.w2};
        return true;
    };
    bool ok = a.w2.edges.size() <= b.w2.edges.size() ? align(a, b) : align(b, a);
    if (!ok || a.w1 != b.w1) return {};
    auto cap = capable_vertices(s);
    // pair states from which h1 = h2 is reachable along equal images
    int m = G.num_arrows();
    std::vector<char> alive((size_t)m * m, 0);
    for (int h = 0; h < m; ++h) alive[(size_t)h * m + h] = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int h1 = 0; h1 < m; ++h1)
            for (int h2 = 0; h2 < m; ++h2) {
                if (alive[(size_t)h1 * m + h2] || G.src(h1) != G.src(h2)) continue;
                for (int e = 0; e < s.num_edges(); ++e) {
                    if (s.er[e] != G.src(h1) || !cap[s.es[e]] || s.act_on(h1, e) != s.act_on(h2, e)) continue;
                    if (alive[(size_t)s.restrict_to(h1, e) * m + s.restrict_to(h2, e)]) {
                        alive[(size_t)h1 * m + h2] = 1;
                        changed = true;
                        break;
                    }
                }
            }
    }
    struct Node {
        int h1, h2;
        Path x, img;
    };
    std::vector<NormalForm> out;
    std::vector<Node> layer = {{a.g, b.g, Path{path_source(s, a.w2), {}}, Path{path_source(s, a.w1), {}}}};
    for (int level = 0; !layer.empty(); ++level) {
        std::vector<Node> next;
        for (const auto& nd : layer) {
            if (!alive[(size_t)nd.h1 * m + nd.h2]) continue;
            if (nd.h1 == nd.h2) {
                out.push_back(NormalForm{false, concat(a.w1, nd.img), nd.h1, concat(a.w2, nd.x)});
                continue;
            }
            if (level == depth) throw DepthInsufficient("slice intersection needs paths longer than " + std::to_string(depth));
            for (int e = 0; e < s.num_edges(); ++e) {
                if (s.er[e] != G.src(nd.h1) || !cap[s.es[e]] || s.act_on(nd.h1, e) != s.act_on(nd.h2, e)) continue;
                Node c = nd;
                c.h1 = s.restrict_to(nd.h1, e);
                c.h2 = s.restrict_to(nd.h2, e);
                c.x.edges.push_back(e);
                c.img.edges.push_back(s.act_on(nd.h1, e));
                next.push_back(c);
            }
        }
        layer = next;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Correspondence iterate(const SelfSimilar& s, int n) {
    const FinGroupoid& G = *s.G;
    std::vector<Path> paths = all_paths(s, n);
    std::sort(paths.begin(), paths.end());
    std::map<std::pair<Path, int>, int> index;
    std::vector<std::pair<Path, int>> elems;
    std::vector<std::string> names;
    std::vector<int> r, src;
    for (const auto& w : paths)
        for (int g = 0; g < G.num_arrows(); ++g) {
            if (G.dst(g) != path_source(s, w)) continue;
            index[{w, g}] = (int)elems.size();
            elems.push_back({w, g});
            names.push_back(path_str(s, w) + "," + G.name(g));
            r.push_back(w.range);
            src.push_back(G.src(g));
        }
    auto left = [&](int h, int x) {
        auto [w, g] = elems[x];
        auto [hw, hr] = act_path(s, h, w);
        return index.at({hw, G.mul(hr, g)});
    };
    auto right = [&](int x, int k) {
        auto [w, g] = elems[x];
        return index.at({w, G.mul(g, k)});
    };
    return make_correspondence(s.G, s.G, names, r, src, left, right);
}

GermCalculus selfsim_calculus(const SelfSimilar& s, const std::vector<NormalForm>& elems,
                              const std::vector<RationalPoint>& points) {
    GermCalculus calc;
    calc.num_points = (int)points.size();
    for (const auto& z : points) calc.point_names.push_back(point_str(s, z));
    for (const auto& t : elems) calc.labels.push_back(nf_str(s, t));
    auto S = std::make_shared<SelfSimilar>(s);
    auto E = std::make_shared<std::vector<NormalForm>>(elems);
    auto P = std::make_shared<std::vector<RationalPoint>>(points);
    calc.apply = [S, E, P](int t, int x) -> std::optional<int> {
        auto y = act_on_point(*S, (*E)[t], (*P)[x]);
        if (!y) return std::nullopt;
        auto it = std::find(P->begin(), P->end(), *y);
        if (it == P->end()) throw OracleIncomplete("point " + point_str(*S, *y) + " lies outside the chosen set");
        return (int)(it - P->begin());
    };
    calc.same_germ = [S, E, P](int t, int u, int x) -> std::optional<bool> {
        return germ_equal(*S, (*E)[t], (*E)[u], (*P)[x]);
    };
    calc.product_germ = [S, E, P](int u, int t, int x) -> std::optional<int> {
        NormalForm prod = nf_mul(*S, (*E)[u], (*E)[t]);
        for (int k = 0; k < (int)E->size(); ++k)
            if (act_on_point(*S, (*E)[k], (*P)[x]) && germ_equal(*S, (*E)[k], prod, (*P)[x])) return k;
        return std::nullopt;
    };
    return calc;
}

}  // namespace gcm
