#ifndef GCM_DIAGRAM_HPP
#define GCM_DIAGRAM_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcm/corr.hpp"
#include "gcm/fincat.hpp"

namespace gcm {

struct ConditionFailed : Error {
    int which;  // 1 multiplicativity, 2 braket law, 3 covering, 4 anchors, 5 domains, 6 units
    std::string witness;
    ConditionFailed(int w, std::string wit)
        : Error("condition " + std::to_string(w) + " fails: " + wit), which(w), witness(std::move(wit)) {}
};

struct HexagonViolation : Error {
    int a, b, c;
    HexagonViolation(int a_, int b_, int c_, const std::string& msg) : Error(msg), a(a_), b(b_), c(c_) {}
};

// Diagram of correspondences over the arrows of a shape enumerated to its bound.
// mu[{g,h}][ξ*|X_h| + η] is the image of (ξ,η) in X_gh, -1 when s(ξ) ≠ r(η).
struct Diagram {
    PresentedShape shape;
    std::vector<ShapeArrow> arrows;
    std::map<ShapeArrow, int> arrow_index;
    std::vector<GroupoidPtr> groupoids;
    std::vector<Correspondence> corr;
    std::map<std::pair<int, int>, std::vector<int>> mu;

    // commutative shapes only: generator correspondences and Σ_{j,i} for j > i
    std::vector<Correspondence> gen_corr;
    std::map<std::pair<int, int>, std::vector<int>> braid;

    int num_arrows() const { return (int)arrows.size(); }
    int find(const ShapeArrow& a) const;
    int src(int g) const { return arrows[g].src; }
    int dst(int g) const { return arrows[g].dst; }
    int identity(int x) const { return find(shape.identity(x)); }
    bool is_identity(int g) const { return shape.is_identity(arrows[g]); }
    // index of gh, -1 when not composable or outside the bound
    int compose(int g, int h) const;
    std::string arrow_name(int g) const { return shape.name(arrows[g]); }
    int mul(int g, int h, int xi, int eta) const;
    // arrows with a single generator, plus identities
    std::vector<int> generating_arrows() const;
};

// arrows enumerated, identity correspondences and unit μ filled in
Diagram diagram_skeleton(const PresentedShape& shape, const std::vector<GroupoidPtr>& groupoids);
// fills μ for pairs with an identity factor from the actions
void fill_unit_mu(Diagram& d);
// finite shapes: correspondences per nonidentity arrow and μ for nonidentity pairs
Diagram diagram_from_tables(const PresentedShape& shape, const std::vector<GroupoidPtr>& groupoids,
                            const std::map<int, Correspondence>& corr,
                            const std::map<std::pair<int, int>, std::vector<int>>& mu);

Report validate_diagram(const Diagram& d);

// Free kinds take one correspondence per generator. FreeCommutative also takes
// Σ_{j,i}: X_j∘X_i → X_i∘X_j for j > i as maps between composite elements.
Diagram extend_from_generators(const PresentedShape& shape, const std::vector<GroupoidPtr>& groupoids,
                               const std::vector<Correspondence>& gens,
                               const std::map<std::pair<int, int>, std::vector<int>>& braid = {});
// braiding checks; the hexagon is checked element-wise per triple
Report check_braiding(const std::vector<Correspondence>& gens, const std::map<std::pair<int, int>, std::vector<int>>& braid);

// Action on {0..n-1}: alpha[g][ξ*n + y].
struct FAction {
    int n = 0;
    std::vector<int> piece;
    std::vector<int> anchor;
    std::vector<std::vector<int>> alpha;

    int act(int g, int xi, int y) const { return alpha[g][(size_t)xi * n + y]; }
    auto operator<=>(const FAction&) const = default;
};

Report validate_action(const Diagram& d, const FAction& a);
// the G_x action carried by the identity arrow
int act_groupoid(const Diagram& d, const FAction& a, int gamma, int y);

// ϑ per arrow and element of X_g
using Theta = std::vector<std::vector<PartialBijection>>;

Theta theta_from_action(const Diagram& d, const FAction& a);
PartialBijection theta_of_slice(const Theta& th, int g, const Slice& u, int n);
// throws ConditionFailed
FAction action_from_theta(const Diagram& d, const std::vector<int>& piece, const std::vector<int>& anchor,
                          const Theta& th);

std::vector<std::vector<int>> equivariant_maps(const Diagram& d, const FAction& a, const FAction& b);
bool is_equivariant(const Diagram& d, const FAction& a, const FAction& b, const std::vector<int>& f);
bool invariant_check(const Diagram& d, const FAction& a, const std::vector<int>& f);

FAction relabel(const FAction& a, const std::vector<int>& perm);
FAction canonical_form(const FAction& a);
// fills the remaining arrows from generator data through μ; nullopt on conflict or invalid
std::optional<FAction> complete_action(const Diagram& d, FAction a);
// all actions on at most n points up to isomorphism, sorted by size then encoding
std::vector<FAction> enumerate_actions(const Diagram& d, int n);

// Transformation D0 → D1: Y_x: G¹_x ← G⁰_x and V_g: X¹_g∘Y_{s(g)} → Y_{r(g)}∘X⁰_g on composite elements.
struct Transformation {
    std::vector<Correspondence> Y;
    std::vector<std::vector<int>> V;
};

Report validate_transformation(const Diagram& d0, const Diagram& d1, const Transformation& t);
Transformation identity_transformation(const Diagram& d);
// t2 after t1
Transformation compose_transformations(const Diagram& d0, const Diagram& d1, const Diagram& d2,
                                       const Transformation& t1, const Transformation& t2);
// W_x: Y¹_x → Y²_x
Report validate_modification(const Diagram& d0, const Diagram& d1, const Transformation& t1,
                             const Transformation& t2, const std::vector<std::vector<int>>& w);

bool same_groupoid(const FinGroupoid& a, const FinGroupoid& b);

}  // namespace gcm

#endif
