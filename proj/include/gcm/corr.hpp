#ifndef GCM_CORR_HPP
#define GCM_CORR_HPP

#include <string>
#include <vector>

#include "gcm/groupoid.hpp"

namespace gcm {

// Correspondence X: H ← G. h·x defined iff src(h) = r(x); x·g defined iff s(x) = dst(g).
struct Correspondence {
    GroupoidPtr H, G;
    int n = 0;
    std::vector<std::string> names;
    std::vector<int> r, s;
    std::vector<int> lact;  // lact[h*n + x]
    std::vector<int> ract;  // ract[g*n + x]

    int size() const { return n; }
    int left(int h, int x) const { return lact[(size_t)h * n + x]; }
    int right(int x, int g) const { return ract[(size_t)g * n + x]; }
    const std::string& name(int x) const { return names[x]; }
    int find(const std::string& name) const;
};

GroupoidAction left_action(const Correspondence& c);
GroupoidAction right_action(const Correspondence& c);
// orbits of the right action, X/G
OrbitSpace right_orbits(const Correspondence& c);

Report validate_correspondence(const Correspondence& c);

// the unique g with x2 = x1·g; throws NotCoOrbital
int inner_product(const Correspondence& c, int x1, int x2);

// carrier G¹ with multiplication on both sides
Correspondence identity_correspondence(GroupoidPtr G);
// tight correspondence between spaces W ← V given by f: W → V
Correspondence from_map(GroupoidPtr W, GroupoidPtr V, const std::vector<int>& f);
// builds the action tables from a rule; undefined entries stay -1
Correspondence make_correspondence(GroupoidPtr H, GroupoidPtr G, std::vector<std::string> names,
                                   std::vector<int> r, std::vector<int> s,
                                   const std::function<int(int, int)>& left,
                                   const std::function<int(int, int)>& right);

// X∘Y: H ← K, elements are G-orbits of composable pairs; pair_of[e] is the least pair.
struct Composite {
    Correspondence c;
    std::vector<std::pair<int, int>> pair_of;
    std::vector<int> index;  // index[x*|Y| + y], -1 when not composable
    int ny = 0;
    int of(int x, int y) const { return index[(size_t)x * ny + y]; }
};

Composite compose(const Correspondence& x, const Correspondence& y);

// bijection X∘G → X, [x,g] ↦ x·g
std::vector<int> right_unitor(const Correspondence& x, const Composite& xg);
// bijection H∘X → X, [h,x] ↦ h·x
std::vector<int> left_unitor(const Correspondence& x, const Composite& hx);
// bijection (X∘Y)∘Z → X∘(Y∘Z)
std::vector<int> associator(const Composite& xy_z, const Composite& xy, const Composite& x_yz, const Composite& yz);
// f: A → B commutes with anchors and both actions and is bijective
Report check_isomorphism(const Correspondence& a, const Correspondence& b, const std::vector<int>& f);
// all isomorphisms A → B
std::vector<std::vector<int>> isomorphisms(const Correspondence& a, const Correspondence& b);

struct Classification {
    bool proper = true, regular = false, tight = false;
};

Classification classify(const Correspondence& c);
bool morita_check(const Correspondence& c, std::string* reason = nullptr);

// Slices are sorted subsets.
using Slice = std::vector<int>;

bool is_groupoid_slice(const FinGroupoid& G, const Slice& u);
bool is_slice(const Correspondence& c, const Slice& u);
Slice groupoid_star(const FinGroupoid& G, const Slice& u);
Slice groupoid_mul(const FinGroupoid& G, const Slice& u, const Slice& v);
// UV for U ⊆ H, V ⊆ X
Slice slice_left(const Correspondence& c, const Slice& u, const Slice& v);
// UV for U ⊆ X, V ⊆ G
Slice slice_right(const Correspondence& c, const Slice& u, const Slice& v);
// UV inside X∘Y
Slice slice_mul(const Composite& xy, const Slice& u, const Slice& v);
// ⟨U|V⟩ ⊆ G
Slice braket(const Correspondence& c, const Slice& u, const Slice& v);

// the correspondence over H ⊔ G induced by X: H ← G
Correspondence disjoint_union_lift(const Correspondence& c);

}  // namespace gcm

#endif
