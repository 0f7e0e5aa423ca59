#include "doctest.h"

#include "gcm/fincat.hpp"

using namespace gcm;

namespace {

ShapeArrow power(int k) { return ShapeArrow{0, 0, std::vector<int>(k, 0)}; }

FinCategory single_edge() {
    CategoryBuilder b;
    int x = b.add_object("x"), y = b.add_object("y");
    b.add_arrow("e", x, y);
    return b.build();
}

}  // namespace

TEST_CASE("category builder and validation") {
    FinCategory c = single_edge();
    CHECK(c.num_objects() == 2);
    CHECK(c.num_arrows() == 3);
    CHECK(validate_category(c).ok());
    int e = c.find_arrow("e");
    CHECK(c.compose(e, c.identity[0]) == e);
    CHECK(c.compose(c.identity[1], e) == e);
    CHECK(c.compose(e, e) == -1);
    CHECK(validate_category(terminal_category()).ok());
}

TEST_CASE("nonassociative table is rejected") {
    // 1, a, b with (aa)b = a but a(ab) = b
    FinCategory c = monoid_category({"1", "a", "b"}, {0, 1, 2, 1, 2, 1, 2, 2, 1});
    Report r = validate_category(c);
    CHECK_FALSE(r.ok());
    CHECK(r.str().find("associativ") != std::string::npos);
}

TEST_CASE("shape composition is associative on enumerated arrows") {
    std::vector<PresentedShape> shapes = {
        PresentedShape::free_monoid({"a", "b"}, 3),
        PresentedShape::free_commutative({"a", "b"}, 3),
        PresentedShape::path_category({"1", "2"}, {"h", "v", "w"}, {0, 0, 1}, {1, 1, 1}, 3),
        PresentedShape::finite(monoid_category({"1", "t"}, {0, 1, 1, 1})),
    };
    for (const auto& sh : shapes) {
        auto arrows = sh.enumerate(2);
        for (const auto& f : arrows) {
            CHECK(sh.compose(f, sh.identity(f.src)) == f);
            CHECK(sh.compose(sh.identity(f.dst), f) == f);
            for (const auto& g : arrows)
                for (const auto& h : arrows) {
                    auto gh = sh.compose(g, h), fg = sh.compose(f, g);
                    if (!gh || !fg) continue;
                    CHECK(sh.compose(f, *gh) == sh.compose(*fg, h));
                }
        }
    }
}

TEST_CASE("ore check") {
    CHECK(ore_check(PresentedShape::free_monoid({"t"}, 4), 4).status == OreResult::IsOre);
    CHECK(ore_check(PresentedShape::free_commutative({"a", "b"}, 4), 4).status == OreResult::IsOre);
    CHECK(ore_check(PresentedShape::group(monoid_category({"1", "a"}, {0, 1, 1, 0})), 3).status == OreResult::IsOre);
    PresentedShape free2 = PresentedShape::free_monoid({"a", "b"}, 4);
    OreResult r = ore_check(free2, 4);
    REQUIRE(r.status == OreResult::NotOre);
    REQUIRE(r.witness.size() == 2);
    CHECK(r.witness[0].word == std::vector<int>{0});
    CHECK(r.witness[1].word == std::vector<int>{1});
}

TEST_CASE("completion of N is a window of Z") {
    GroupoidCompletion comp = groupoid_completion(PresentedShape::free_monoid({"t"}, 5), 5);
    CHECK(comp.num_classes() == 11);
    // t^m (t^n)^-1 depends only on m - n
    for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n)
            for (int m2 = 0; m2 <= 5; ++m2)
                for (int n2 = 0; n2 <= 5; ++n2)
                    CHECK((comp.class_of(power(m), power(n)) == comp.class_of(power(m2), power(n2))) ==
                          (m - n == m2 - n2));
    int plus2 = comp.class_of(power(2), power(0)), minus3 = comp.class_of(power(0), power(3));
    CHECK(comp.multiply(plus2, minus3) == comp.class_of(power(0), power(1)));
    CHECK(comp.multiply(plus2, comp.inverse(plus2)) == comp.unit(0));
    CHECK(comp.embed(power(4)) == comp.class_of(power(4), power(0)));
}

TEST_CASE("completion of an idempotent monoid is trivial") {
    GroupoidCompletion c = groupoid_completion(PresentedShape::finite(monoid_category({"1", "t"}, {0, 1, 1, 1})), 3);
    CHECK(c.num_classes() == 1);
}

TEST_CASE("completion of a finite group is the group") {
    PresentedShape z3 = PresentedShape::group(monoid_category({"1", "b", "b2"}, {0, 1, 2, 1, 2, 0, 2, 0, 1}));
    CHECK(groupoid_completion(z3, 2).num_classes() == 3);
}

TEST_CASE("slice categories of a single edge") {
    PresentedShape sh = PresentedShape::path_category({"1", "2"}, {"e"}, {0}, {1}, 2);
    CHECK(slice_category(sh, 0, 2).objects.size() == 1);
    SliceCategory d1 = slice_category(sh, 1, 2);
    CHECK(d1.objects.size() == 2);
    bool found = false;
    for (const auto& a : d1.arrows)
        if (!sh.is_identity(a.h)) found = true;
    CHECK(found);
}
