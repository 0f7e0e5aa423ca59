#include "doctest.h"

#include <set>

#include "corpus.hpp"
#include "gcm/model.hpp"

using namespace gcm;

namespace {

bool has_order_four(const FinGroupoid& L) {
    for (int g = 0; g < L.num_arrows(); ++g) {
        int g2 = L.mul(g, g);
        if (!L.is_unit(g2) && L.is_unit(L.mul(g2, g2))) return true;
    }
    return false;
}

Diagram swap_shape(int bound) {
    auto V = corpus::space({"1", "2"});
    return corpus::n_shape(V, from_map(V, V, {1, 0}), bound);
}

}  // namespace

TEST_CASE("discrete shapes") {
    Diagram d = corpus::discrete_z2_z3();
    FinGroupoid U = model_discrete_shape(d);
    CHECK(U.num_objects() == 2);
    CHECK(U.num_arrows() == 5);
    VerifyStats st = verify_model(d, discrete_model(d), 3);
    CHECK(st.classes > 0);
}

TEST_CASE("group shape: the graded groupoid") {
    Diagram d = corpus::group_z2();
    GradedGroupoid L = model_group_shape(d);
    CHECK(validate_groupoid(L.L).ok());
    CHECK(L.L.num_arrows() == 4);
    int unit_piece = 0;
    for (int i = 0; i < L.L.num_arrows(); ++i) unit_piece += d.is_identity(L.grade[i]);
    CHECK(unit_piece == 2);
    // μ(ξ, η) = ξηa makes the nonunit piece square into a
    CHECK(has_order_four(L.L));
    CHECK_NOTHROW(verify_model(d, graded_model(d, L), 3));
}

TEST_CASE("group shape with trivial twist gives the Klein group") {
    auto z2 = corpus::group(FinGroup::cyclic(2));
    auto shape = PresentedShape::group(FinGroupoid::from_group(FinGroup::cyclic(2, "c")).cat);
    Diagram skel = diagram_skeleton(shape, {z2});
    int c = -1;
    for (int i = 0; i < skel.num_arrows(); ++i)
        if (!skel.is_identity(i)) c = i;
    Diagram d = diagram_from_tables(shape, {z2}, {{c, identity_correspondence(z2)}}, {{{c, c}, {0, 1, 1, 0}}});
    REQUIRE(validate_diagram(d).ok());
    GradedGroupoid L = model_group_shape(d);
    CHECK(L.L.num_arrows() == 4);
    CHECK_FALSE(has_order_four(L.L));
    CHECK_NOTHROW(verify_model(d, graded_model(d, L), 3));
}

TEST_CASE("tight universal actions are terminal") {
    for (Diagram d : {corpus::map_diagram(), corpus::group_z2(), corpus::discrete_z2_z3()}) {
        FAction u = tight_universal_action(d);
        CHECK(validate_action(d, u).ok());
        CHECK(terminality_check(d, u, 3).ok());
    }
    CHECK_THROWS_AS(tight_universal_action(corpus::e1_diagram(2)), NotTight);
}

TEST_CASE("the point diagram over N is modeled by Z and not by Z/2") {
    Diagram d = corpus::n_point(4);
    VerifyStats st = verify_model(d, corpus::cyclic_model(d, false), 4);
    // permutations of at most 4 points up to conjugacy: 1 + 1 + 2 + 3 + 5
    CHECK(st.classes == 12);
    bool threw = false;
    try {
        verify_model(d, corpus::cyclic_model(d, true), 3);
    } catch (const Mismatch& e) {
        threw = true;
        CHECK_FALSE(e.witness.empty());
    }
    CHECK(threw);
}

TEST_CASE("free point model") {
    Diagram d = corpus::n_point(3);
    GroupoidModel m = free_point_model(d);
    CHECK(m.U.num_gens() == 1);
    CHECK(m.U.relators.empty());
    CHECK_NOTHROW(verify_model(d, m, 3));
    CHECK_THROWS_AS(free_point_model(corpus::e1_diagram(2)), NotSupported);
}

TEST_CASE("Ore universal action of the swap") {
    OreUniversal o = ore_universal_action(swap_shape(3), 2, 2);
    CHECK(o.points.size() == 2);
    CHECK(tightness_scan(o).ok());
    Diagram t = tighten(o);
    CHECK(validate_diagram(t).ok());
    PairModel pm(o);
    std::map<int, int> per_grade;
    for (const auto& p : pm.arrows(4)) ++per_grade[pm.grade(p)];
    for (int k = -4; k <= 4; ++k) CHECK(per_grade[k] == 2);
}

TEST_CASE("pair model of the point diagram is Z") {
    OreUniversal o = ore_universal_action(corpus::n_point(3), 2, 2);
    CHECK(o.points.size() == 1);
    PairModel pm(o);
    auto arrows = pm.arrows(4);
    CHECK(arrows.size() == 9);
    std::set<int> grades;
    for (const auto& p : arrows) grades.insert(pm.grade(p));
    CHECK(grades.size() == 9);
    GroupoidCompletion comp = groupoid_completion(PresentedShape::free_monoid({"t"}, 4), 4);
    std::set<int> classes;
    for (const auto& p : arrows) classes.insert(pair_completion_class(comp, p));
    CHECK(classes.size() == 9);
    for (const auto& p : arrows)
        for (const auto& q : arrows) {
            PairArrow pq = pm.mul(p, q);
            CHECK(pm.grade(pq) == pm.grade(p) + pm.grade(q));
        }
}

TEST_CASE("pair model groupoid laws on E1") {
    OreUniversal o = ore_universal_action(corpus::e1_diagram(3), 1, 1);
    CHECK(tightness_scan(o).ok());
    PairModel pm(o);
    auto arrows = pm.arrows(2);
    for (const auto& p : arrows) {
        CHECK(pm.is_unit(pm.mul(p, pm.inverse(p))));
        CHECK(pm.equal(pm.mul(p, pm.unit(pm.source(p))), p));
        CHECK(pm.equal(pm.extend(p), p));
        for (const auto& q : arrows) {
            if (pm.source(p) != pm.range(q)) continue;
            for (const auto& r : arrows) {
                if (pm.source(q) != pm.range(r)) continue;
                CHECK(pm.equal(pm.mul(pm.mul(p, q), r), pm.mul(p, pm.mul(q, r))));
            }
        }
    }
}

TEST_CASE("effective quotient") {
    // the swap is effective: two points, Z acting through Z/2
    GermGroupoid g = effective_quotient(corpus::map_diagram());
    CHECK(validate_groupoid(g.groupoid).ok());
    CHECK(g.groupoid.num_objects() == 3);
    GermGroupoid q = effective_quotient(corpus::non_ore_tight(3));
    CHECK(q.groupoid.num_objects() == 2);
    CHECK(q.groupoid.num_arrows() == 4);
}
