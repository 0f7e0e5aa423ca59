#include "doctest.h"

#include "corpus.hpp"
#include "gcm/corr.hpp"
#include "gcm/model.hpp"

using namespace gcm;

TEST_CASE("corpus correspondences are valid") {
    for (const auto& [name, c] : corpus::correspondences()) {
        INFO(name);
        CHECK(validate_correspondence(c).ok());
    }
}

TEST_CASE("broken left action is reported") {
    Correspondence c = corpus::e1_corr();
    c.lact[1 * c.n + 0] = c.lact[1 * c.n + 1];
    CHECK_FALSE(validate_correspondence(c).ok());
}

TEST_CASE("inner products on the self-similar correspondence") {
    Correspondence X = corpus::e1_corr();
    int x01 = X.find("0.1"), x0a = X.find("0.a"), x11 = X.find("1.1");
    int a = X.G->cat.find_arrow("a");
    CHECK(inner_product(X, x01, x0a) == a);
    CHECK(inner_product(X, x01, x01) == X.G->unit(0));
    CHECK_THROWS_AS(inner_product(X, x01, x11), NotCoOrbital);
    CHECK(braket(X, {x01}, {x0a}) == Slice{a});
    CHECK(braket(X, {x01}, {x11}).empty());
}

TEST_CASE("composition with units") {
    for (const auto& [name, X] : corpus::correspondences()) {
        INFO(name);
        Composite xg = compose(X, identity_correspondence(X.G));
        CHECK(check_isomorphism(xg.c, X, right_unitor(X, xg)).ok());
        Composite hx = compose(identity_correspondence(X.H), X);
        CHECK(check_isomorphism(hx.c, X, left_unitor(X, hx)).ok());
    }
}

TEST_CASE("iterated self-similar correspondence") {
    Correspondence X = corpus::e1_corr();
    Composite xx = compose(X, X);
    CHECK(xx.c.n == 8);
    CHECK(validate_correspondence(xx.c).ok());
    CHECK_FALSE(isomorphisms(xx.c, iterate(corpus::e1(), 2)).empty());
}

TEST_CASE("associator on three self-similar factors") {
    Correspondence X = corpus::e1_corr(), Y = corpus::e2_corr();
    Composite xy = compose(X, Y), yx = compose(Y, X);
    Composite xy_x = compose(xy.c, X), x_yx = compose(X, yx.c);
    CHECK(check_isomorphism(xy_x.c, x_yx.c, associator(xy_x, xy, x_yx, yx)).ok());
}

TEST_CASE("maps between spaces compose contravariantly") {
    auto V3 = corpus::space({"1", "2", "3"}), V2 = corpus::space({"a", "b"}), V1 = corpus::space({"z"});
    std::vector<int> f = {0, 1, 1}, g = {0, 0};
    Composite c = compose(from_map(V3, V2, f), from_map(V2, V1, g));
    std::vector<int> gf = {g[f[0]], g[f[1]], g[f[2]]};
    CHECK_FALSE(isomorphisms(c.c, from_map(V3, V1, gf)).empty());
}

TEST_CASE("classification") {
    Classification e1 = classify(corpus::e1_corr());
    CHECK(e1.proper);
    CHECK(e1.regular);
    CHECK_FALSE(e1.tight);
    auto V3 = corpus::space({"1", "2", "3"}), V2 = corpus::space({"a", "b"});
    CHECK(classify(from_map(V3, V2, {0, 1, 1})).tight);
    Classification id = classify(identity_correspondence(corpus::group(FinGroup::cyclic(3))));
    CHECK(id.tight);
}

TEST_CASE("tight composed with tight is tight") {
    auto V3 = corpus::space({"1", "2", "3"}), V2 = corpus::space({"a", "b"});
    Composite c = compose(from_map(V2, V3, {2, 0}), from_map(V3, V2, {0, 1, 1}));
    CHECK(classify(c.c).tight);
}

TEST_CASE("morita equivalences") {
    std::string why;
    CHECK_FALSE(morita_check(corpus::e1_corr(), &why));
    CHECK_FALSE(why.empty());
    CHECK(morita_check(identity_correspondence(corpus::group(FinGroup::cyclic(2)))));
    // each graded piece of L is an equivalence
    Diagram d = corpus::group_z2();
    CHECK(model_group_shape(d).L.num_arrows() == 4);
    for (int g = 0; g < d.num_arrows(); ++g) CHECK(morita_check(d.corr[g]));
}

TEST_CASE("slice operations") {
    auto P = std::make_shared<const FinGroupoid>(FinGroupoid::pair({"1", "2"}));
    int a12 = -1, a21 = -1;
    for (int g = 0; g < P->num_arrows(); ++g) {
        if (P->src(g) == 0 && P->dst(g) == 1) a12 = g;
        if (P->src(g) == 1 && P->dst(g) == 0) a21 = g;
    }
    CHECK(is_groupoid_slice(*P, {a12}));
    CHECK_FALSE(is_groupoid_slice(*P, {std::min(a12, P->unit(0)), std::max(a12, P->unit(0))}));
    CHECK(groupoid_star(*P, {a12}) == Slice{a21});
    CHECK(groupoid_mul(*P, {a21}, {a12}) == Slice{P->unit(0)});
    Correspondence X = corpus::e1_corr();
    int x01 = X.find("0.1"), x1a = X.find("1.a");
    // one object, so s is injective only on singletons
    CHECK(is_slice(X, {x1a}));
    CHECK_FALSE(is_slice(X, {x01, x1a}));
    int a = X.G->cat.find_arrow("a");
    CHECK(slice_right(X, {x01}, {a}) == Slice{X.find("0.a")});
    CHECK(slice_left(X, {a}, {x01}) == Slice{X.find("1.a")});
}

TEST_CASE("disjoint union lift") {
    Correspondence X = corpus::e1_corr();
    Correspondence L = disjoint_union_lift(X);
    CHECK(validate_correspondence(L).ok());
    CHECK(L.n == X.n);
}
