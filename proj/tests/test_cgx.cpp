#include "doctest.h"

#include "corpus.hpp"
#include "gcm/cgx.hpp"

using namespace gcm;

namespace {

ComplexOfGroups named(const std::string& name) {
    for (auto& nc : corpus::complexes())
        if (nc.name == name) return nc.c;
    throw Error("no complex " + name);
}

}  // namespace

TEST_CASE("corpus complexes are valid") {
    for (const auto& [name, c] : corpus::complexes()) {
        INFO(name);
        CHECK(validate_cgx(c).ok());
        CHECK(validate_cgx(cone_extend(c)).ok());
        CHECK(validate_diagram(cgx_diagram(c)).ok());
    }
}

TEST_CASE("a non-homomorphism is rejected") {
    ComplexOfGroups c = named("loop");
    c.phi[c.C.find_arrow("t")] = {0, 1, 1};
    CHECK_FALSE(validate_cgx(c).ok());
}

TEST_CASE("Bridson-Haefliger flag") {
    CHECK(is_bridson_haefliger(named("arrow")));
    CHECK(is_bridson_haefliger(named("free_product")));
    CHECK_FALSE(is_bridson_haefliger(named("loop")));
}

TEST_CASE("hom counts into symmetric groups") {
    Presentation free1 = Presentation::group({"g"}, {});
    Presentation z2 = Presentation::group({"g"}, {Word{{0, 1}, {0, 1}}});
    CHECK(count_homs(free1, 3) == 6);
    CHECK(count_homs(z2, 3) == 4);
    CHECK(count_homs(z2, 4) == 10);
    // Z/2 * Z/3 into S_3: 4 choices for the involution times 3 for the order-3 element
    CHECK(count_homs(fundamental_group(named("free_product")), 3) == 12);
}

TEST_CASE("fundamental group of one arrow is free on one generator") {
    Presentation p = canonical_renaming(fundamental_group(named("arrow")));
    CHECK(p.num_gens() == 1);
    CHECK(p.relators.empty());
    CHECK(count_homs(p, 3) == 6);
}

TEST_CASE("Π₁ agrees with the isotropy at infinity") {
    for (const auto& [name, c] : corpus::complexes()) {
        INFO(name);
        Presentation p = canonical_renaming(fundamental_group(c));
        Presentation q = canonical_renaming(isotropy_at_infinity(c));
        CHECK(same_presentation(p, q));
        for (int k = 1; k <= 4; ++k) CHECK(count_homs(p, k) == count_homs(q, k));
    }
}

TEST_CASE("model presentation of one arrow") {
    Presentation m = model_presentation(named("arrow"));
    CHECK(m.object_names.size() == 2);
    CHECK(m.num_gens() == 1);
    CHECK(m.relators.empty());
    CHECK(validate_presentation(m).ok());
}

TEST_CASE("cone models are transitive") {
    for (const auto& [name, c] : corpus::complexes()) {
        INFO(name);
        Presentation m = model_presentation(cone_extend(c));
        int n = (int)m.object_names.size();
        UnionFind uf(n);
        for (int g = 0; g < m.num_gens(); ++g) uf.unite(m.gen_src[g], m.gen_dst[g]);
        for (int x = 0; x < n; ++x) CHECK(uf.find(x) == uf.find(0));
    }
}

TEST_CASE("models of complexes verify against diagram actions") {
    for (const auto& [name, c] : corpus::complexes()) {
        INFO(name);
        CHECK_NOTHROW(verify_model(cgx_diagram(c), cgx_model(c), 3));
    }
}

TEST_CASE("morphisms and homotopies") {
    for (const auto& [name, c] : corpus::complexes()) {
        INFO(name);
        CgxMorphism id = identity_morphism(c);
        CHECK(morphism_check(c, c, id).ok());
        CgxMorphism idid = compose_morphisms(c, id, id);
        CHECK(morphism_check(c, c, idid).ok());
        std::vector<int> w(c.C.num_objects(), 0);
        CHECK(homotopy_check(c, c, id, idid, w).ok());
    }
}

TEST_CASE("conjugation by a central element is a self-homotopy") {
    ComplexOfGroups c = named("free_product");
    CgxMorphism id = identity_morphism(c);
    // Z/2 is abelian, so w = (a, 1) conjugates trivially
    CHECK(homotopy_check(c, c, id, id, {1, 0}).ok());
}

TEST_CASE("a broken morphism is rejected") {
    ComplexOfGroups c = named("loop");
    CgxMorphism m = identity_morphism(c);
    m.psi[0] = {0, 0, 0};
    CHECK(morphism_check(c, c, m).ok());
    m.psi[0] = {0, 1, 1};
    CHECK_FALSE(morphism_check(c, c, m).ok());
}
