#ifndef GCM_FINCAT_HPP
#define GCM_FINCAT_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcm/common.hpp"

namespace gcm {

// Finite category. Composition convention: compose(g,h) = g∘h, defined iff src(g) = dst(h).
struct FinCategory {
    std::vector<std::string> object_names;
    std::vector<std::string> arrow_names;
    std::vector<int> src, dst;
    std::vector<int> identity;  // per object
    std::vector<int> table;     // row-major arrows × arrows, -1 when undefined

    int num_objects() const { return (int)object_names.size(); }
    int num_arrows() const { return (int)arrow_names.size(); }
    int compose(int g, int h) const { return table[(size_t)g * num_arrows() + h]; }
    bool is_identity(int g) const { return identity[src[g]] == g; }
    int find_object(const std::string& name) const;
    int find_arrow(const std::string& name) const;
};

class CategoryBuilder {
public:
    // adds the object together with its identity arrow
    int add_object(const std::string& name, const std::string& identity_name = "");
    int add_arrow(const std::string& name, int src, int dst);
    void set_compose(int g, int h, int gh);
    // fills identity products; undefined entries stay -1
    FinCategory build() const;

private:
    FinCategory cat_;
    std::map<std::pair<int, int>, int> products_;
};

Report validate_category(const FinCategory& cat);
FinCategory terminal_category();
// one-object category from a multiplication table; element 0 is the identity
FinCategory monoid_category(const std::vector<std::string>& names, const std::vector<int>& table);

enum class ShapeKind { FreeMonoid, PathCategory, FreeCommutative, Group, Finite };

// Arrow of a presented shape. word is a generator sequence in composition order
// (free kinds), an exponent vector (FreeCommutative) or {arrow id} (Group/Finite).
struct ShapeArrow {
    int src = 0, dst = 0;
    std::vector<int> word;
    auto operator<=>(const ShapeArrow&) const = default;
};

struct PresentedShape {
    ShapeKind kind = ShapeKind::Finite;
    std::vector<std::string> object_names;
    std::vector<std::string> gen_names;
    std::vector<int> gen_src, gen_dst;
    FinCategory cat;
    int length_bound = 3;

    static PresentedShape free_monoid(const std::vector<std::string>& gens, int bound);
    static PresentedShape path_category(const std::vector<std::string>& vertices,
                                        const std::vector<std::string>& edges,
                                        const std::vector<int>& src, const std::vector<int>& dst,
                                        int bound);
    static PresentedShape free_commutative(const std::vector<std::string>& gens, int bound);
    static PresentedShape group(const FinCategory& cat);
    static PresentedShape finite(const FinCategory& cat);

    int num_objects() const { return (int)object_names.size(); }
    bool is_free() const { return kind == ShapeKind::FreeMonoid || kind == ShapeKind::PathCategory; }
    ShapeArrow identity(int x) const;
    bool is_identity(const ShapeArrow& a) const;
    std::optional<ShapeArrow> compose(const ShapeArrow& g, const ShapeArrow& h) const;
    int length(const ShapeArrow& a) const;
    // generator sequence used for ordering and naming
    std::vector<int> expansion(const ShapeArrow& a) const;
    bool shortlex_less(const ShapeArrow& a, const ShapeArrow& b) const;
    std::vector<ShapeArrow> enumerate(int bound) const;
    std::vector<ShapeArrow> enumerate() const { return enumerate(length_bound); }
    // single generators (free kinds) or a greedy generating set (finite kinds)
    std::vector<ShapeArrow> generators() const;
    ShapeArrow generator(int i) const;
    std::string name(const ShapeArrow& a) const;
};

struct OreResult {
    enum Status { IsOre, NotOre, Unknown } status = Unknown;
    int condition = 0;  // failing condition for NotOre
    std::vector<ShapeArrow> witness;
    std::string describe(const PresentedShape& shape) const;
};

OreResult ore_check(const PresentedShape& shape, int search_depth);

struct Zigzag {
    ShapeArrow fwd, bwd;
};

// Zigzag classes g h⁻¹ with |g|,|h| ≤ bound; exact for Finite and Group kinds.
class GroupoidCompletion {
public:
    GroupoidCompletion(const PresentedShape& shape, int bound);

    const PresentedShape& shape() const { return shape_; }
    int bound() const { return bound_; }
    int num_classes() const { return (int)reps_.size(); }
    const Zigzag& rep(int c) const { return reps_[c]; }
    const std::vector<int>& members(int c) const { return members_[c]; }
    const Zigzag& zigzag(int i) const { return zigzags_[i]; }
    // -1 when the zigzag is outside the bound
    int class_of(const ShapeArrow& g, const ShapeArrow& h) const;
    int src(int c) const { return reps_[c].bwd.dst; }
    int dst(int c) const { return reps_[c].fwd.dst; }
    int unit(int x) const;
    int inverse(int c) const;
    int embed(const ShapeArrow& g) const;
    // throws BoundExceeded when no common multiple lies within the bound
    int multiply(int c1, int c2) const;
    std::string name(int c) const;

private:
    PresentedShape shape_;
    int bound_;
    std::vector<ShapeArrow> arrows_;
    std::map<ShapeArrow, int> arrow_index_;
    std::vector<Zigzag> zigzags_;
    std::map<std::pair<int, int>, int> zigzag_index_;
    std::vector<int> class_of_zigzag_;
    std::vector<Zigzag> reps_;
    std::vector<std::vector<int>> members_;
};

GroupoidCompletion groupoid_completion(const PresentedShape& shape, int bound);

struct SliceCategory {
    struct Arrow {
        int from, to;
        ShapeArrow h;
    };
    std::vector<ShapeArrow> objects;
    std::vector<Arrow> arrows;
};

// arrows into x, with h: g1 → g2 whenever g1 = g2 h
SliceCategory slice_category(const PresentedShape& shape, int x, int bound);

}  // namespace gcm

#endif
