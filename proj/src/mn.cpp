#include "gcm/mn.hpp"

#include <map>
#include <memory>
#include <set>

#include <fmt/format.h>

namespace gcm {

Diagram make_emn(int m, int n) {
    if (m < 0 || n < 0) throw Error("make_emn: negative size");
    PresentedShape shape = PresentedShape::path_category({"1", "2"}, {"h", "v"}, {0, 0}, {1, 1}, 1);
    auto pt = std::make_shared<const FinGroupoid>(FinGroupoid::space({"pt"}));
    auto points = [&](const std::string& base, int k) {
        std::vector<std::string> names;
        for (int i = 1; i <= k; ++i) names.push_back(base + std::to_string(i));
        Correspondence c = make_correspondence(
            pt, pt, names, std::vector<int>(k, 0), std::vector<int>(k, 0), [](int, int x) { return x; },
            [](int x, int) { return x; });
        return c;
    };
    return extend_from_generators(shape, {pt, pt}, {points("h", n), points("v", m)});
}

// ---------------------------------------------------------------- actions

namespace {

void check_block(Report& r, const MNAction& a, const std::vector<std::vector<int>>& maps, const char* label) {
    std::vector<int> hits(a.size, 0);
    for (size_t i = 0; i < maps.size(); ++i) {
        const auto& f = maps[i];
        if ((int)f.size() != a.size) {
            r.add(fmt::format("{}{}: wrong length", label, i + 1));
            continue;
        }
        for (int y = 0; y < a.size; ++y) {
            bool in1 = a.part[y] == 1;
            if (in1 != (f[y] >= 0)) {
                r.add(fmt::format("{}{}: domain differs from Y1 at {}", label, i + 1, y));
                continue;
            }
            if (f[y] < 0) continue;
            if (f[y] >= a.size || a.part[f[y]] != 2) {
                r.add(fmt::format("{}{}: image of {} not in Y2", label, i + 1, y));
                continue;
            }
            ++hits[f[y]];
        }
    }
    for (int y = 0; y < a.size; ++y)
        if (a.part[y] == 2 && hits[y] != 1)
            r.add(fmt::format("{} images do not partition Y2 at {} ({} preimages)", label, y, hits[y]));
}

}  // namespace

Report validate_mn_action(const MNAction& a, int m, int n) {
    Report r;
    if ((int)a.part.size() != a.size) {
        r.add("part has wrong length");
        return r;
    }
    for (int y = 0; y < a.size; ++y)
        if (a.part[y] != 1 && a.part[y] != 2) r.add(fmt::format("point {} in neither Y1 nor Y2", y));
    if (!r.ok()) return r;
    if ((int)a.h.size() != n) r.add(fmt::format("expected {} h-maps", n));
    if ((int)a.v.size() != m) r.add(fmt::format("expected {} v-maps", m));
    if (!r.ok()) return r;
    check_block(r, a, a.h, "h");
    check_block(r, a, a.v, "v");
    return r;
}

PartialFreeAction to_partial_action(const MNAction& a, int m, int n) {
    PartialFreeAction p;
    p.n = n;
    p.m = m;
    for (const auto& f : a.h) p.gen.push_back(PartialBijection{f});
    for (const auto& f : a.v) p.gen.push_back(PartialBijection{f});
    return p;
}

MNAction from_partial_action(const PartialFreeAction& p) {
    MNAction a;
    a.size = p.gen.empty() ? 0 : p.gen[0].size();
    a.part.assign(a.size, 2);
    if (!p.gen.empty())
        for (int y : p.gen[0].domain()) a.part[y] = 1;
    for (int i = 0; i < p.n; ++i) a.h.push_back(p.gen[i].map);
    for (int j = 0; j < p.m; ++j) a.v.push_back(p.gen[p.n + j].map);
    return a;
}

PartialBijection word_action(const PartialFreeAction& p, const Word& w) {
    int size = p.gen.empty() ? 0 : p.gen[0].size();
    PartialBijection out = PartialBijection::identity(size);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const PartialBijection& f = p.gen.at(it->gen);
        out = (it->exp > 0 ? f : f.inverse()).compose(out);
    }
    return out;
}

std::vector<Word> reduced_words(int rank, int max_len) {
    std::vector<Word> out{Word{}};
    std::vector<Word> layer{Word{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Word> next;
        for (const Word& w : layer)
            for (int g = 0; g < rank; ++g)
                for (int e : {1, -1}) {
                    if (!w.empty() && w.front().gen == g && w.front().exp == -e) continue;
                    Word x;
                    x.reserve(w.size() + 1);
                    x.push_back({g, e});
                    x.insert(x.end(), w.begin(), w.end());
                    next.push_back(std::move(x));
                }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

std::string free_word_str(const Word& w, int m, int n) {
    (void)m;
    if (w.empty()) return "ε";
    std::vector<std::string> parts;
    for (const Letter& l : w) {
        std::string s = l.gen < n ? fmt::format("h{}", l.gen + 1) : fmt::format("v{}", l.gen - n + 1);
        if (l.exp < 0) s += "⁻¹";
        parts.push_back(s);
    }
    return join(parts, "");
}

Report check_conditions(const PartialFreeAction& p) {
    Report r;
    int k = (int)p.gen.size();
    if (k != p.n + p.m) {
        r.add("generator count differs from n+m");
        return r;
    }
    if (k == 0) return r;
    int size = p.gen[0].size();
    for (int i = 0; i < k; ++i) {
        if (p.gen[i].size() != size) {
            r.add(fmt::format("generator {} has wrong carrier", i));
            return r;
        }
        if (!p.gen[i].is_injective()) r.add(fmt::format("generator {} is not injective", i));
    }
    if (!r.ok()) return r;
    auto name = [&](const Word& w) { return free_word_str(w, p.m, p.n); };

    // (1) on reduced pairs of length at most two
    auto words = reduced_words(k, 2);
    for (const Word& g : words)
        for (const Word& h : words) {
            if (!g.empty() && !h.empty() && g.back().gen == h.front().gen && g.back().exp == -h.front().exp) continue;
            Word gh = g;
            gh.insert(gh.end(), h.begin(), h.end());
            if (word_action(p, g).compose(word_action(p, h)) != word_action(p, gh))
                r.add(fmt::format("(1) fails for {} and {}", name(g), name(h)));
        }

    // (2)
    auto dom0 = p.gen[0].domain();
    for (int i = 1; i < k; ++i)
        if (p.gen[i].domain() != dom0) r.add(fmt::format("(2) domain of {} differs", name({{i, 1}})));

    // (3)
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (!p.gen[i].compose(p.gen[j]).is_empty())
                r.add(fmt::format("(3) {}{} is nonempty", name({{i, 1}}), name({{j, 1}})));

    // (4) and (5) per block
    std::vector<char> in_dom(size, 0);
    for (int y : dom0) in_dom[y] = 1;
    auto block = [&](int lo, int hi, const char* label) {
        std::vector<int> hits(size, 0);
        for (int i = lo; i < hi; ++i)
            for (int y : p.gen[i].image()) ++hits[y];
        for (int y = 0; y < size; ++y) {
            if (hits[y] > 1) r.add(fmt::format("(4) {}-codomains overlap at {}", label, y));
            if (in_dom[y] + hits[y] != 1) r.add(fmt::format("(5) {}-block does not partition at {}", label, y));
        }
    };
    block(0, p.n, "h");
    block(p.n, k, "v");
    return r;
}

FAction mn_to_faction(const Diagram& emn, const MNAction& a) {
    FAction f;
    f.n = a.size;
    f.anchor.assign(a.size, 0);
    for (int y = 0; y < a.size; ++y) f.piece.push_back(a.part[y] - 1);
    f.alpha.assign(emn.num_arrows(), {});
    for (int g = 0; g < emn.num_arrows(); ++g) {
        int k = emn.corr[g].size();
        auto& al = f.alpha[g];
        al.assign((size_t)k * a.size, -1);
        if (emn.is_identity(g)) {
            for (int y = 0; y < a.size; ++y)
                if (f.piece[y] == emn.src(g)) al[y] = y;
            continue;
        }
        const auto& word = emn.arrows[g].word;
        const auto& maps = emn.shape.gen_names.at(word.at(0)) == "h" ? a.h : a.v;
        for (int xi = 0; xi < k && xi < (int)maps.size(); ++xi)
            for (int y = 0; y < a.size; ++y) al[(size_t)xi * a.size + y] = maps[xi][y];
    }
    return f;
}

// ---------------------------------------------------------------- configurations

bool MNConfiguration::contains(const Word& w) const { return std::binary_search(words.begin(), words.end(), w); }

namespace {

// Local type of a point: -1 for Y₁, otherwise i*m + j when h_i⁻¹ and v_j⁻¹ are defined there.
std::vector<Letter> defined_letters(int type, int m, int n) {
    std::vector<Letter> out;
    if (type < 0) {
        for (int g = 0; g < n + m; ++g) out.push_back({g, 1});
    } else {
        out.push_back({type / m, -1});
        out.push_back({n + type % m, -1});
    }
    return out;
}

// types in which the letter l⁻¹ is defined, i.e. possible for a point reached by l
std::vector<int> types_after(const Letter& l, int m, int n) {
    std::vector<int> out;
    if (l.exp < 0) return {-1};
    if (l.gen < n) {
        for (int j = 0; j < m; ++j) out.push_back(l.gen * m + j);
    } else {
        for (int i = 0; i < n; ++i) out.push_back(i * m + (l.gen - n));
    }
    return out;
}

}  // namespace

std::vector<MNConfiguration> omega_depth(int m, int n, int depth) {
    if (m < 1 || n < 1) throw Error("omega_depth: m and n must be positive");
    std::vector<int> root_types{-1};
    for (int t = 0; t < n * m; ++t) root_types.push_back(t);

    std::set<MNConfiguration> found;
    std::set<Word> S;
    std::vector<Word> pending;
    std::function<void()> rec = [&]() {
        if (pending.empty()) {
            found.insert(MNConfiguration{depth, std::vector<Word>(S.begin(), S.end())});
            return;
        }
        Word g = pending.back();
        pending.pop_back();
        std::vector<int> types = g.empty() ? root_types : types_after(g.front(), m, n);
        for (int t : types) {
            std::vector<Word> added;
            size_t mark = pending.size();
            for (const Letter& l : defined_letters(t, m, n)) {
                if (!g.empty() && g.front().gen == l.gen && g.front().exp == -l.exp) continue;
                Word c;
                c.push_back(l);
                c.insert(c.end(), g.begin(), g.end());
                S.insert(c);
                added.push_back(c);
                if ((int)c.size() < depth) pending.push_back(c);
            }
            rec();
            pending.resize(mark);
            for (const Word& c : added) S.erase(c);
        }
        pending.push_back(g);
    };
    S.insert(Word{});
    if (depth > 0) pending.push_back(Word{});
    rec();
    return {found.begin(), found.end()};
}

MNConfiguration restrict_config(const MNConfiguration& c, int depth) {
    if (depth > c.depth) throw DepthInsufficient("cannot restrict to a larger depth");
    MNConfiguration out{depth, {}};
    for (const Word& w : c.words)
        if ((int)w.size() <= depth) out.words.push_back(w);
    return out;
}

bool restriction_surjective(int m, int n, int depth) {
    auto lower = omega_depth(m, n, depth);
    std::set<MNConfiguration> image;
    for (const auto& c : omega_depth(m, n, depth + 1)) image.insert(restrict_config(c, depth));
    return std::set<MNConfiguration>(lower.begin(), lower.end()) == image;
}

MNConfiguration translate(const MNConfiguration& c, const Word& g) {
    if (!c.contains(g)) throw Error("translate: word not defined at the configuration");
    int d = c.depth - (int)g.size();
    MNConfiguration out{d, {}};
    Word ginv = inverse(g);
    for (const Word& j : c.words) {
        Word k = j;
        k.insert(k.end(), ginv.begin(), ginv.end());
        k = free_reduce(k);
        if ((int)k.size() <= d) out.words.push_back(k);
    }
    std::sort(out.words.begin(), out.words.end());
    out.words.erase(std::unique(out.words.begin(), out.words.end()), out.words.end());
    return out;
}

MNConfiguration config_of_point(const PartialFreeAction& p, int y, int depth) {
    MNConfiguration out{depth, {}};
    for (const Word& w : reduced_words(p.n + p.m, depth))
        if (word_action(p, w).defined(y)) out.words.push_back(w);
    std::sort(out.words.begin(), out.words.end());
    return out;
}

// ---------------------------------------------------------------- groupoid

MNGroupoid::MNGroupoid(int m, int n, int depth) : m_(m), n_(n), depth_(depth), objects_(omega_depth(m, n, depth)) {}

std::vector<MNGroupoid::Arrow> MNGroupoid::arrows() const {
    std::vector<Arrow> out;
    for (int o = 0; o < (int)objects_.size(); ++o)
        for (const Word& g : objects_[o].words) out.push_back({g, o});
    return out;
}

int MNGroupoid::range(const Arrow& a) const {
    const MNConfiguration& src = objects_.at(a.source);
    if (!src.contains(a.g)) throw Error("range: word not defined at the source");
    int ext = depth_ + (int)a.g.size();
    auto it = extensions_.find(ext);
    if (it == extensions_.end()) it = extensions_.emplace(ext, omega_depth(m_, n_, ext)).first;
    std::set<MNConfiguration> seen;
    for (const auto& c : it->second)
        if (restrict_config(c, depth_) == src) seen.insert(translate(c, a.g));
    if (seen.size() != 1)
        throw DepthInsufficient(fmt::format("range of {} is not determined at depth {}", free_word_str(a.g, m_, n_),
                                            depth_));
    auto pos = std::lower_bound(objects_.begin(), objects_.end(), *seen.begin());
    if (pos == objects_.end() || *pos != *seen.begin()) throw Error("translated configuration is not an object");
    return (int)(pos - objects_.begin());
}

MNGroupoid::Arrow MNGroupoid::inverse(const Arrow& a) const { return {gcm::inverse(a.g), range(a)}; }

MNGroupoid::Arrow MNGroupoid::compose(const Arrow& b, const Arrow& a) const {
    if (range(a) != b.source) throw Error("compose: arrows are not composable");
    Word gh = b.g;
    gh.insert(gh.end(), a.g.begin(), a.g.end());
    gh = free_reduce(gh);
    if ((int)gh.size() > depth_)
        throw DepthInsufficient(fmt::format("composite {} is longer than depth {}", free_word_str(gh, m_, n_), depth_));
    if (!objects_[a.source].contains(gh)) throw Error("composite not defined at the source");
    return {gh, a.source};
}

}  // namespace gcm
