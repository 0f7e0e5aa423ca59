#ifndef GCM_PRESENTATION_HPP
#define GCM_PRESENTATION_HPP

#include <string>
#include <vector>

#include "gcm/groupoid.hpp"

namespace gcm {

struct Letter {
    int gen;
    int exp;  // +1 or -1
    auto operator<=>(const Letter&) const = default;
};

// Words are in composition order: the rightmost letter acts first.
using Word = std::vector<Letter>;

// Groupoid presentation; a group presentation has one object and only loops.
struct Presentation {
    std::vector<std::string> object_names;
    std::vector<std::string> gen_names;
    std::vector<int> gen_src, gen_dst;
    std::vector<Word> relators;

    static Presentation group(const std::vector<std::string>& gens, const std::vector<Word>& relators);
    int num_gens() const { return (int)gen_names.size(); }
    int find_gen(const std::string& name) const;
    int add_gen(const std::string& name, int src, int dst);
};

Word free_reduce(const Word& w);
Word cyclic_reduce(const Word& w);
Word inverse(const Word& w);
std::string word_str(const Presentation& p, const Word& w);
std::string presentation_str(const Presentation& p);
// endpoints of a composable word, or {-1,-1}
std::pair<int, int> word_endpoints(const Presentation& p, const Word& w, int empty_at = 0);
Report validate_presentation(const Presentation& p);

// relators reduced, rotated and inverted to a least form, sorted and deduplicated
Presentation canonical(const Presentation& p);
bool same_presentation(const Presentation& a, const Presentation& b);

// generators are the nonunit arrows; relators come from the composition table
Presentation presentation_of(const FinGroupoid& g);
Word word_of_arrow(const FinGroupoid& g, int arrow);

// Vertex group at root from tree words tree[x]: x → root. Generator a becomes
// tree[dst a]·a·tree[src a]⁻¹; relators keep their letters; tree generators become relators.
Presentation vertex_group(const Presentation& p, int root, const std::vector<Word>& tree);
// Eliminates removable generators that occur in a relator of length one or two.
Presentation tietze_eliminate(const Presentation& p, const std::vector<char>& removable);

// maps f: A → B preserving colors with f(F_i(a)) = G_i(f(a)) and matching definedness
std::vector<std::vector<int>> equivariant_maps_generic(const std::vector<int>& color_a, const std::vector<int>& color_b,
                                                       const std::vector<std::vector<int>>& fa,
                                                       const std::vector<std::vector<int>>& fb);

// Action of a presented groupoid on {0..n-1}: one bijection between fibers per generator.
struct PresAction {
    int n = 0;
    std::vector<int> anchor;
    std::vector<std::vector<int>> perm;  // perm[g][y], -1 off the source fiber
    auto operator<=>(const PresAction&) const = default;
};

int apply_word(const PresAction& a, const Word& w, int y);
bool satisfies_relators(const Presentation& p, const PresAction& a);
PresAction canonical_form(const PresAction& a);
PresAction relabel(const PresAction& a, const std::vector<int>& perm);
// all actions on 0..n points, one per isomorphism class
std::vector<PresAction> enumerate_presentation_actions(const Presentation& p, int n);
// maps f with f(g·y) = g·f(y) and matching anchors
std::vector<std::vector<int>> presentation_equivariant_maps(const PresAction& a, const PresAction& b);
bool presentation_invariant(const PresAction& a, const std::vector<int>& f);

}  // namespace gcm

#endif
