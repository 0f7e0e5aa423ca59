#include "doctest.h"

#include <set>

#include "corpus.hpp"
#include "gcm/groupoid.hpp"

using namespace gcm;

TEST_CASE("finite groups") {
    for (int n = 1; n <= 6; ++n) CHECK(validate_group(FinGroup::cyclic(n)).ok());
    FinGroup k4 = FinGroup::product(FinGroup::cyclic(2), FinGroup::cyclic(2, "b"));
    CHECK(k4.order() == 4);
    CHECK(validate_group(k4).ok());
    for (int g = 0; g < 4; ++g) CHECK(k4.mul(g, g) == 0);
    FinGroup z5 = FinGroup::cyclic(5);
    for (int g = 0; g < 5; ++g) CHECK(z5.mul(g, z5.inv(g)) == 0);
}

TEST_CASE("standard groupoids are valid") {
    CHECK(validate_groupoid(FinGroupoid::space({"p", "q"})).ok());
    FinGroupoid P = FinGroupoid::pair({"1", "2", "3"});
    CHECK(validate_groupoid(P).ok());
    CHECK(P.num_arrows() == 9);
    FinGroupoid T = FinGroupoid::transformation(FinGroup::cyclic(2), {"p", "q"}, {0, 1, 1, 0});
    CHECK(validate_groupoid(T).ok());
    CHECK(T.num_arrows() == 4);
    FinGroupoid U = FinGroupoid::disjoint_union({P, T}, {"P.", "T."});
    CHECK(validate_groupoid(U).ok());
    CHECK(U.num_arrows() == 13);
    CHECK(U.num_objects() == 5);
}

TEST_CASE("right action of the self-similar correspondence is basic with two orbits") {
    Correspondence X = corpus::e1_corr();
    GroupoidAction r = right_action(X);
    CHECK(validate_action(r).ok());
    CHECK_FALSE(check_basic(r).has_value());
    CHECK(orbit_space(r).size() == 2);
}

TEST_CASE("a group acting on one point is not basic") {
    auto z2 = corpus::group(FinGroup::cyclic(2));
    GroupoidAction a{z2, Side::Left, 1, {0}, {0, 0}};
    CHECK(validate_action(a).ok());
    auto w = check_basic(a);
    REQUIRE(w.has_value());
    CHECK(w->second == 1);
}

TEST_CASE("pseudogroup closure of a swap") {
    auto cl = pseudogroup_closure({{"s", PartialBijection{{1, 0}}}}, 2);
    std::set<PartialBijection> maps;
    for (const auto& m : cl) maps.insert(m.map);
    CHECK(maps.count(PartialBijection::identity(2)) == 1);
    CHECK(maps.count(PartialBijection{{1, 0}}) == 1);
    CHECK(maps.count(PartialBijection::empty(2)) == 1);
    CHECK(maps.size() == 3);
}

TEST_CASE("pseudogroup closure is closed") {
    std::vector<LabeledMap> gens = {{"f", PartialBijection{{1, -1, 0}}}, {"g", PartialBijection{{-1, 2, -1}}}};
    auto cl = pseudogroup_closure(gens, 3);
    std::set<PartialBijection> maps;
    for (const auto& m : cl) maps.insert(m.map);
    for (const auto& a : maps) {
        CHECK(maps.count(a.inverse()) == 1);
        for (const auto& b : maps) CHECK(maps.count(a.compose(b)) == 1);
    }
}

TEST_CASE("germ groupoid of an involution is the graph of the group it generates") {
    GermGroupoid g = germ_groupoid({{"s", PartialBijection{{1, 0}}}}, 2);
    CHECK(g.groupoid.num_objects() == 2);
    CHECK(g.groupoid.num_arrows() == 4);
    CHECK(validate_groupoid(g.groupoid).ok());
}

TEST_CASE("transformation groupoid from pointwise germs") {
    std::vector<LabeledMap> elems = {{"1", PartialBijection::identity(3)},
                                     {"r", PartialBijection{{1, 2, 0}}},
                                     {"r2", PartialBijection{{2, 0, 1}}}};
    TransformationGroupoid t = transformation_groupoid(pointwise_calculus(elems, 3));
    CHECK(validate_groupoid(t.groupoid).ok());
    CHECK(t.groupoid.num_arrows() == 9);
}

TEST_CASE("inverse semigroup action through the fold map") {
    // X = {0,1} with a swap; Y two copies of X
    std::vector<PartialBijection> on_x = {PartialBijection{{1, 0}}};
    std::vector<PartialBijection> on_y = {PartialBijection{{1, 0, 3, 2}}};
    IsgRoundTrip r = isg_action_vs_groupoid_action(on_y, on_x, {0, 1, 0, 1});
    CHECK(r.round_trip);
    CHECK(validate_action(r.action).ok());
    REQUIRE(r.recovered.size() == 1);
    CHECK(r.recovered[0] == on_y[0]);
}

TEST_CASE("partial bijection algebra") {
    PartialBijection f{{2, -1, 0}}, g{{-1, 0, 1}};
    CHECK(f.compose(g).map == std::vector<int>{-1, 2, -1});
    CHECK(f.inverse().map == std::vector<int>{2, -1, 0});
    CHECK(f.compose(f.inverse()) == PartialBijection::restricted_identity(3, {0, 2}));
    CHECK(PartialBijection::identity(3).extends(f.compose(f.inverse())));
    CHECK_FALSE(PartialBijection{{0, 0}}.is_injective());
}
