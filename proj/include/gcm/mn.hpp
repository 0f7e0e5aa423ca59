#ifndef GCM_MN_HPP
#define GCM_MN_HPP

#include <map>
#include <string>
#include <vector>

#include "gcm/diagram.hpp"
#include "gcm/presentation.hpp"

namespace gcm {

// Shape 1 ⇉ 2 with arrows h, v; both groupoids are points; |X_h| = n, |X_v| = m.
Diagram make_emn(int m, int n);

// part[y] = 1 or 2; h[i][y], v[j][y] are defined for y in Y₁ and -1 elsewhere.
struct MNAction {
    int size = 0;
    std::vector<int> part;
    std::vector<std::vector<int>> h, v;
    auto operator<=>(const MNAction&) const = default;
};

Report validate_mn_action(const MNAction& a, int m, int n);

// Free group of rank n+m: generators 0..n-1 are h₁..h_n, then v₁..v_m.
struct PartialFreeAction {
    int n = 0, m = 0;
    std::vector<PartialBijection> gen;
    auto operator<=>(const PartialFreeAction&) const = default;
};

PartialFreeAction to_partial_action(const MNAction& a, int m, int n);
// Y₁ is the domain of the first generator
MNAction from_partial_action(const PartialFreeAction& p);
// ϑ_w for a reduced word, composed letter by letter
PartialBijection word_action(const PartialFreeAction& p, const Word& w);
// (1) ϑ_g ϑ_h = ϑ_{gh} for reduced products, (2) all generators share the domain Y₁,
// (3) ϑ_a ϑ_b = ∅ for generators a, b, (4) codomains within the h-block and within the
// v-block are disjoint, (5) each block's codomains together with Y₁ partition Y
Report check_conditions(const PartialFreeAction& p);

FAction mn_to_faction(const Diagram& emn, const MNAction& a);

std::vector<Word> reduced_words(int rank, int max_len);
std::string free_word_str(const Word& w, int m, int n);

// Words g whose ϑ_g is defined at a point, up to length depth; sorted.
struct MNConfiguration {
    int depth = 0;
    std::vector<Word> words;
    bool contains(const Word& w) const;
    auto operator<=>(const MNConfiguration&) const = default;
};

std::vector<MNConfiguration> omega_depth(int m, int n, int depth);
MNConfiguration restrict_config(const MNConfiguration& c, int depth);
// restriction omega_depth(depth+1) → omega_depth(depth) hits every configuration
bool restriction_surjective(int m, int n, int depth);
// configuration seen from ϑ_g(x), known to depth - |g|
MNConfiguration translate(const MNConfiguration& c, const Word& g);
MNConfiguration config_of_point(const PartialFreeAction& p, int y, int depth);

// Depth-truncated transformation groupoid: arrows (g, ω) with g ∈ ω.
class MNGroupoid {
public:
    MNGroupoid(int m, int n, int depth);

    struct Arrow {
        Word g;
        int source;
        auto operator<=>(const Arrow&) const = default;
    };

    int m() const { return m_; }
    int n() const { return n_; }
    int depth() const { return depth_; }
    const std::vector<MNConfiguration>& objects() const { return objects_; }
    std::vector<Arrow> arrows() const;
    // translate of ω, read off its extensions to depth + |g|; throws DepthInsufficient
    // when they disagree
    int range(const Arrow& a) const;
    Arrow unit(int object) const { return Arrow{{}, object}; }
    Arrow inverse(const Arrow& a) const;
    // b after a; throws DepthInsufficient
    Arrow compose(const Arrow& b, const Arrow& a) const;

private:
    int m_, n_, depth_;
    std::vector<MNConfiguration> objects_;
    mutable std::map<int, std::vector<MNConfiguration>> extensions_;
};

}  // namespace gcm

#endif
