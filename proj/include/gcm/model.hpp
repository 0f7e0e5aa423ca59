#ifndef GCM_MODEL_HPP
#define GCM_MODEL_HPP

#include <functional>
#include <string>
#include <vector>

#include "gcm/diagram.hpp"
#include "gcm/presentation.hpp"
#include "gcm/selfsim.hpp"

namespace gcm {

struct NotEquivalence : Error {
    int arrow;
    NotEquivalence(int g, const std::string& msg) : Error(msg), arrow(g) {}
};

struct NotTight : Error {
    int arrow;
    NotTight(int g, const std::string& msg) : Error(msg), arrow(g) {}
};

// A candidate model U with the data that turns U-actions into F-actions:
// each U-object sits over (piece, anchor), and ξ ∈ X_g acts by the word psi(g, ξ, o)
// starting at the U-object o over (src g, s ξ).
struct GroupoidModel {
    Presentation U;
    std::vector<std::pair<int, int>> object_to_piece;
    std::function<Word(int g, int xi, int o)> psi;
};

struct VerifyStats {
    int classes = 0;
    int hom_pairs = 0;
};

FAction translate_action(const Diagram& d, const GroupoidModel& m, const PresAction& b);
// natural bijection between U-actions and F-actions on at most n points; throws Mismatch
VerifyStats verify_model(const Diagram& d, const GroupoidModel& m, int n);

// ⊔ G_x for a shape with identities only
FinGroupoid model_discrete_shape(const Diagram& d);
GroupoidModel discrete_model(const Diagram& d);

// Free shape over points with |X_t| = 1 for every generator: the free groupoid on the shape graph.
GroupoidModel free_point_model(const Diagram& d);

// L = ⊔ X_g over a group shape; arrow i of L lies in X_{grade[i]} as element elem[i]
struct GradedGroupoid {
    FinGroupoid L;
    std::vector<int> grade;
    std::vector<int> elem;
};

// throws NotEquivalence
GradedGroupoid model_group_shape(const Diagram& d);
GroupoidModel graded_model(const Diagram& d, const GradedGroupoid& g);

// α_g(ξ, s(ξ)) = r(ξ) on ⊔ G_x⁰; throws NotTight
FAction tight_universal_action(const Diagram& d);
// every action on at most n points has exactly one equivariant map into u
Report terminality_check(const Diagram& d, const FAction& u, int n);

// Effective quotient of a tight diagram: germs of the α_g(ξ,·) on ⊔ G_x⁰.
GermGroupoid effective_quotient(const Diagram& d);

// ---------------------------------------------------------------- Ore shapes

// Free monoid on one generator. Edges are the right orbits of X = X_t, with least
// representatives σ(e); g·e = [g σ(e)] and g|_e = ⟨σ(g·e) | g σ(e)⟩.
SelfSimilar ore_section(const Diagram& d);

struct OreUniversal {
    Diagram d;
    SelfSimilar s;
    std::vector<RationalPoint> points;
    bool exact = false;  // the point set no longer grows with the bounds
};

OreUniversal ore_universal_action(const Diagram& d, int max_pre, int max_period);
// ξ·z for ξ ∈ X_t with s(ξ) = r(z)
RationalPoint ore_act(const OreUniversal& o, int xi, const RationalPoint& z);
// each sampled point y has exactly one orbit [ξ, z] with ξ·z = y, z among the points
Report tightness_scan(const OreUniversal& o);
// concrete tight diagram with groupoid G⋉Ω; requires the point set to be closed
Diagram tighten(const OreUniversal& o);

// [γ_g, γ_h] normalized so that γ_h = (w2, 1, z); γ_g = (w1, g, z)
struct PairArrow {
    Path w1;
    int g = 0;
    RationalPoint z;
    Path w2;
    auto operator<=>(const PairArrow&) const = default;
};

// Pair construction over the tightened diagram, computed from X and μ directly.
class PairModel {
public:
    explicit PairModel(const OreUniversal& o);

    const SelfSimilar& data() const { return o_.s; }
    RationalPoint source(const PairArrow& p) const;
    RationalPoint range(const PairArrow& p) const;
    // one-step η-extension along the next letter of z
    PairArrow extend(const PairArrow& p) const;
    bool equal(const PairArrow& p, const PairArrow& q) const;
    PairArrow mul(const PairArrow& p, const PairArrow& q) const;
    PairArrow inverse(const PairArrow& p) const;
    PairArrow unit(const RationalPoint& z) const;
    bool is_unit(const PairArrow& p) const { return equal(p, unit(source(p))); }
    int grade(const PairArrow& p) const { return (int)p.w1.edges.size() - (int)p.w2.edges.size(); }
    // arrows with |w1|, |w2| ≤ depth over the points, one per class
    std::vector<PairArrow> arrows(int depth) const;
    std::string str(const PairArrow& p) const;
    // the slice element (w1, g, w2) and its source point
    std::pair<NormalForm, RationalPoint> germ(const PairArrow& p) const;

private:
    std::pair<int, int> step(int g, int e) const;
    RationalPoint act(int g, const RationalPoint& z) const;

    OreUniversal o_;
    Correspondence X_;
    std::vector<int> sigma_;
    std::vector<int> orbit_;
    int state_bound_;
};

// class in the groupoid completion of ℕ; throws BoundExceeded outside the bound
int pair_completion_class(const GroupoidCompletion& comp, const PairArrow& p);

}  // namespace gcm

#endif
