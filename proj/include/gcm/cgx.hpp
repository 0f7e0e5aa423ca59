#ifndef GCM_CGX_HPP
#define GCM_CGX_HPP

#include <map>
#include <string>
#include <vector>

#include "gcm/diagram.hpp"
#include "gcm/model.hpp"
#include "gcm/presentation.hpp"

namespace gcm {

// Groups G_x, homomorphisms φ_g: G_{r(g)} → G_{s(g)} and twists u_{g,h} ∈ G_{s(h)}.
// Missing twists are 1.
struct ComplexOfGroups {
    FinCategory C;
    std::vector<FinGroup> groups;
    std::vector<std::vector<int>> phi;  // phi[g][γ]
    std::map<std::pair<int, int>, int> twist;

    int u(int g, int h) const;
};

Report validate_cgx(const ComplexOfGroups& c);
// injective φ and no loops
bool is_bridson_haefliger(const ComplexOfGroups& c);

// tight diagram with X_g = _{φ_g}G_{s(g)} and μ(γ1, γ2) = u_{g,h} φ_h(γ1) γ2
Diagram cgx_diagram(const ComplexOfGroups& c);

// one generator per nonidentity arrow and per nonunit group element
Presentation fundamental_group(const ComplexOfGroups& c);
Presentation model_presentation(const ComplexOfGroups& c);
// ξ ∈ X_g acts by the word g·ξ
GroupoidModel cgx_model(const ComplexOfGroups& c);

// adds ∞ with trivial group and arrows (g,∞): s(g) → ∞
ComplexOfGroups cone_extend(const ComplexOfGroups& c);
// vertex group of the cone model at ∞ with the (g,∞) eliminated
Presentation isotropy_at_infinity(const ComplexOfGroups& c);

// generators sorted by name, relators canonical
Presentation canonical_renaming(const Presentation& p);

// group presentations only
long long count_homs(const Presentation& p, int n);

// Morphism c1 → c2: ψ_x: G²_x → G¹_x and v_g ∈ G¹_{s(g)}.
struct CgxMorphism {
    std::vector<std::vector<int>> psi;
    std::vector<int> v;
};

Report morphism_check(const ComplexOfGroups& c1, const ComplexOfGroups& c2, const CgxMorphism& m);
CgxMorphism identity_morphism(const ComplexOfGroups& c);
// m23 after m12, c1 ← c2 ← c3 on the group side
CgxMorphism compose_morphisms(const ComplexOfGroups& c1, const CgxMorphism& m12, const CgxMorphism& m23);
// w_x ∈ G¹_x with Ad(w_x)ψ¹_x = ψ²_x and φ¹_g(w_{r(g)})·v¹_g = v²_g·w_{s(g)}
Report homotopy_check(const ComplexOfGroups& c1, const ComplexOfGroups& c2, const CgxMorphism& m1,
                      const CgxMorphism& m2, const std::vector<int>& w);

}  // namespace gcm

#endif
