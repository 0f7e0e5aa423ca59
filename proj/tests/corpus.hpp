#ifndef GCM_TESTS_CORPUS_HPP
#define GCM_TESTS_CORPUS_HPP

#include <string>
#include <vector>

#include "gcm/cgx.hpp"
#include "gcm/corr.hpp"
#include "gcm/diagram.hpp"
#include "gcm/model.hpp"
#include "gcm/selfsim.hpp"

namespace gcm::corpus {

GroupoidPtr point(const std::string& name = "u");
GroupoidPtr group(const FinGroup& g);
GroupoidPtr space(const std::vector<std::string>& points);

// letters 0, 1 over Z/2 = {1, a}; a flips the letter and restricts to a
Correspondence e1_corr();
// a fixes both letters and restricts to a
Correspondence e2_corr();
SelfSimilar e1();
SelfSimilar e2();
// Γ = Z/2 fixing two vertices; a swaps e1, e2 (restricting to a) and fixes e3 (restricting to 1)
SelfSimilar exel_pardo();

Diagram n_shape(GroupoidPtr G, const Correspondence& X, int bound);
Diagram n_point(int bound);
Diagram e1_diagram(int bound);
Diagram e2_diagram(int bound);
// Z/2 and Z/3 over two objects, no arrows
Diagram discrete_z2_z3();
// Z/2 acting on Z/2 with X_c = Z/2 and μ(ξ,η) = ξηa
Diagram group_z2();
// x ← y with spaces {p,q} and {r}, X_g the constant map
Diagram map_diagram();
// x ← y over points with |X_g| = k
Diagram arrow_diagram(int k);
// free monoid on a, b over the space {1,2}: a swaps, b is constant
Diagram non_ore_tight(int bound);

// Z with t ↦ t^|g|, or Z/2 when with_relator
GroupoidModel cyclic_model(const Diagram& n_point_diagram, bool with_relator);

struct NamedComplex {
    std::string name;
    ComplexOfGroups c;
};
// one arrow with trivial groups, free product, twisted 2-arrow, loop
std::vector<NamedComplex> complexes();

struct NamedCorr {
    std::string name;
    Correspondence c;
};
std::vector<NamedCorr> correspondences();

}  // namespace gcm::corpus

#endif
