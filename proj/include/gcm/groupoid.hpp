#ifndef GCM_GROUPOID_HPP
#define GCM_GROUPOID_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcm/fincat.hpp"

namespace gcm {

// Finite group by multiplication table; element 0 is the identity.
struct FinGroup {
    std::vector<std::string> names;
    std::vector<int> table;
    std::vector<int> inverses;

    int order() const { return (int)names.size(); }
    int mul(int a, int b) const { return table[(size_t)a * order() + b]; }
    int inv(int a) const { return inverses[a]; }
    int find(const std::string& name) const;

    static FinGroup from_table(std::vector<std::string> names, std::vector<int> table);
    static FinGroup trivial();
    // generator named gen, elements 1, gen, gen^2, ...
    static FinGroup cyclic(int n, const std::string& gen = "a");
    static FinGroup product(const FinGroup& a, const FinGroup& b);
};

Report validate_group(const FinGroup& g);

struct FinGroupoid {
    FinCategory cat;
    std::vector<int> inv;

    int num_objects() const { return cat.num_objects(); }
    int num_arrows() const { return cat.num_arrows(); }
    int src(int g) const { return cat.src[g]; }
    int dst(int g) const { return cat.dst[g]; }
    int mul(int g, int h) const { return cat.compose(g, h); }
    int unit(int x) const { return cat.identity[x]; }
    bool is_unit(int g) const { return cat.is_identity(g); }
    const std::string& name(int g) const { return cat.arrow_names[g]; }
    const std::string& object_name(int x) const { return cat.object_names[x]; }

    static FinGroupoid from_group(const FinGroup& g, const std::string& object = "*");
    static FinGroupoid space(const std::vector<std::string>& points);
    static FinGroupoid pair(const std::vector<std::string>& points);
    // Γ⋉V, arrow (g,v): v → g·v with index g*|V|+v
    static FinGroupoid transformation(const FinGroup& g, const std::vector<std::string>& points,
                                      const std::vector<int>& action);
    static FinGroupoid disjoint_union(const std::vector<FinGroupoid>& parts, const std::vector<std::string>& prefixes);
    // derives inverses; throws Error if some arrow is not invertible
    static FinGroupoid from_category(const FinCategory& cat);
};

Report validate_groupoid(const FinGroupoid& g);

// relation groupoid on n points: arrow (x,y) is x → y
FinGroupoid relation_groupoid(const std::vector<std::string>& points, const std::vector<std::pair<int, int>>& arrows,
                              const std::vector<std::string>& labels);

using GroupoidPtr = std::shared_ptr<const FinGroupoid>;

enum class Side { Left, Right };

// Left action: g·y defined iff src(g) = anchor(y), landing over dst(g).
// Right action: y·g defined iff anchor(y) = dst(g), landing over src(g).
struct GroupoidAction {
    GroupoidPtr G;
    Side side = Side::Left;
    int carrier = 0;
    std::vector<int> anchor;
    std::vector<int> table;  // table[g*carrier + y], -1 undefined

    int act(int g, int y) const { return table[(size_t)g * carrier + y]; }
};

Report validate_action(const GroupoidAction& a);
// nullopt when basic; otherwise a point and a nonunit arrow fixing it
std::optional<std::pair<int, int>> check_basic(const GroupoidAction& a);

struct OrbitSpace {
    std::vector<int> proj;  // point → orbit
    std::vector<int> reps;  // least point of each orbit
    int size() const { return (int)reps.size(); }
};

OrbitSpace orbit_space(const GroupoidAction& a);

struct PartialBijection {
    std::vector<int> map;  // -1 where undefined

    static PartialBijection identity(int n);
    static PartialBijection empty(int n);
    static PartialBijection restricted_identity(int n, const std::vector<int>& domain);

    int size() const { return (int)map.size(); }
    int operator()(int y) const { return map[y]; }
    bool defined(int y) const { return map[y] >= 0; }
    // (*this) ∘ g
    PartialBijection compose(const PartialBijection& g) const;
    PartialBijection inverse() const;
    std::vector<int> domain() const;
    std::vector<int> image() const;
    bool is_injective() const;
    bool is_empty() const;
    bool extends(const PartialBijection& g) const;
    std::string str() const;
    auto operator<=>(const PartialBijection&) const = default;
};

struct LabeledMap {
    std::string label;
    PartialBijection map;
};

// closure under composition and partial inverses, including the empty map
std::vector<LabeledMap> pseudogroup_closure(const std::vector<LabeledMap>& gens, int n);

struct GermGroupoid {
    FinGroupoid groupoid;
    std::vector<std::string> labels;  // least label realizing each germ
};

GermGroupoid germ_groupoid(const std::vector<LabeledMap>& gens, int n, const std::vector<std::string>& points = {});

// Element calculus of an inverse semigroup acting on finitely many points.
struct GermCalculus {
    int num_points = 0;
    std::vector<std::string> point_names;
    std::vector<std::string> labels;
    std::function<std::optional<int>(int t, int x)> apply;
    // does [t,x] = [u,x]; nullopt when the oracle declines
    std::function<std::optional<bool>(int t, int u, int x)> same_germ;
    // element s with [s,x] = [u t, x]; nullopt when the oracle declines
    std::function<std::optional<int>(int u, int t, int x)> product_germ;
};

struct TransformationGroupoid {
    FinGroupoid groupoid;
    std::vector<std::pair<int, int>> rep;  // (element, point) per arrow
};

TransformationGroupoid transformation_groupoid(const GermCalculus& calc);
// germ relation by pointwise values; elems must be closed under composition
GermCalculus pointwise_calculus(const std::vector<LabeledMap>& elems, int n);

struct IsgRoundTrip {
    FinGroupoid groupoid;  // S⋉X
    GroupoidAction action;  // on Y, anchored by f
    std::vector<PartialBijection> recovered;
    bool round_trip = false;
};

// S given by generators acting on Y and on X; f: Y → X must intertwine them
IsgRoundTrip isg_action_vs_groupoid_action(const std::vector<PartialBijection>& on_y,
                                           const std::vector<PartialBijection>& on_x, const std::vector<int>& f);

}  // namespace gcm

#endif
