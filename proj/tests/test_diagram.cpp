#include "doctest.h"

#include <numeric>

#include "corpus.hpp"
#include "gcm/diagram.hpp"
#include "gcm/model.hpp"

using namespace gcm;

namespace {

std::vector<std::pair<std::string, Diagram>> diagrams() {
    return {{"n_point", corpus::n_point(3)},       {"e1", corpus::e1_diagram(3)},
            {"e2", corpus::e2_diagram(3)},         {"discrete", corpus::discrete_z2_z3()},
            {"group_z2", corpus::group_z2()},      {"map", corpus::map_diagram()},
            {"arrow3", corpus::arrow_diagram(3)},  {"non_ore", corpus::non_ore_tight(3)}};
}

// letters {0,1} over a point, one per generator
std::vector<Correspondence> binary_letters(int k) {
    auto pt = corpus::point();
    std::vector<Correspondence> out;
    for (int i = 0; i < k; ++i)
        out.push_back(make_correspondence(
            pt, pt, {"0", "1"}, {0, 0}, {0, 0}, [](int, int x) { return x; }, [](int x, int) { return x; }));
    return out;
}

// Σ_{j,i}(x, y) = (y, x), or (y, x xor y) when scrambled
std::map<std::pair<int, int>, std::vector<int>> flips(const std::vector<Correspondence>& g, bool scramble) {
    std::map<std::pair<int, int>, std::vector<int>> braid;
    int k = (int)g.size();
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < j; ++i) {
            Composite from = compose(g[j], g[i]), to = compose(g[i], g[j]);
            std::vector<int> m(from.c.n);
            for (int e = 0; e < from.c.n; ++e) {
                auto [x, y] = from.pair_of[e];
                int a = y, b = x;
                if (scramble) b = x ^ y;
                m[e] = to.of(a, b);
            }
            braid[{j, i}] = m;
        }
    return braid;
}

}  // namespace

TEST_CASE("corpus diagrams are valid") {
    for (const auto& [name, d] : diagrams()) {
        INFO(name);
        CHECK(validate_diagram(d).ok());
    }
}

TEST_CASE("corrupted multiplication is reported") {
    Diagram d = corpus::group_z2();
    for (auto& [k, m] : d.mu)
        if (!d.is_identity(k.first) && !d.is_identity(k.second)) std::swap(m[0], m[1]);
    CHECK_FALSE(validate_diagram(d).ok());
}

TEST_CASE("commutative shapes: braiding and hexagon") {
    PresentedShape sh = PresentedShape::free_commutative({"a", "b", "c"}, 2);
    auto gens = binary_letters(3);
    auto pt = corpus::point();
    auto good = flips(gens, false);
    CHECK(check_braiding(gens, good).ok());
    Diagram d = extend_from_generators(sh, {pt}, gens, good);
    CHECK(validate_diagram(d).ok());
    // X_{ab} has |X_a||X_b| elements whichever order is used
    int ab = d.find(ShapeArrow{0, 0, {1, 1, 0}});
    REQUIRE(ab >= 0);
    CHECK(d.corr[ab].n == 4);

    auto bad = flips(gens, true);
    Report r = check_braiding(gens, bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.str().find("hexagon") != std::string::npos);
    CHECK_THROWS_AS(extend_from_generators(sh, {pt}, gens, bad), HexagonViolation);
}

TEST_CASE("action counts") {
    // permutations of at most 3 points up to conjugacy: 1 + 1 + 2 + 3
    CHECK(enumerate_actions(corpus::n_point(3), 3).size() == 7);
    // |A × Y| = |Y| has no nonempty solution
    auto e1 = enumerate_actions(corpus::e1_diagram(2), 3);
    REQUIRE(e1.size() == 1);
    CHECK(e1[0].n == 0);
}

TEST_CASE("enumerated actions are valid and pairwise nonisomorphic") {
    for (const auto& [name, d] : diagrams()) {
        if (name == "e1" || name == "e2" || name == "non_ore") continue;
        INFO(name);
        auto acts = enumerate_actions(d, 3);
        for (size_t i = 0; i < acts.size(); ++i) {
            CHECK(validate_action(d, acts[i]).ok());
            CHECK(canonical_form(acts[i]) == acts[i]);
            for (size_t j = i + 1; j < acts.size(); ++j) CHECK_FALSE(acts[i] == acts[j]);
        }
    }
}

TEST_CASE("theta on singleton slices is the graph of the groupoid action") {
    Diagram d = corpus::group_z2();
    int unit = d.identity(0);
    for (const auto& a : enumerate_actions(d, 4)) {
        Theta th = theta_from_action(d, a);
        for (int gamma = 0; gamma < d.groupoids[0]->num_arrows(); ++gamma)
            for (int y = 0; y < a.n; ++y) CHECK(th[unit][gamma](y) == act_groupoid(d, a, gamma, y));
    }
}

TEST_CASE("theta round trip and reconstruction of the universal action") {
    Diagram d = corpus::map_diagram();
    FAction u = tight_universal_action(d);
    CHECK(action_from_theta(d, u.piece, u.anchor, theta_from_action(d, u)) == u);
    for (const auto& a : enumerate_actions(d, 3)) {
        auto maps = equivariant_maps(d, a, u);
        CHECK(maps.size() == 1);
        for (const auto& f : maps) CHECK(is_equivariant(d, a, u, f));
    }
}

TEST_CASE("relabeling preserves validity and the canonical form") {
    Diagram d = corpus::n_point(3);
    for (const auto& a : enumerate_actions(d, 3)) {
        std::vector<int> perm(a.n);
        std::iota(perm.begin(), perm.end(), 0);
        std::reverse(perm.begin(), perm.end());
        FAction b = relabel(a, perm);
        CHECK(validate_action(d, b).ok());
        CHECK(canonical_form(b) == canonical_form(a));
    }
}

TEST_CASE("completion of generator data") {
    Diagram d = corpus::n_point(3);
    for (const auto& a : enumerate_actions(d, 3)) {
        FAction partial = a;
        for (int g = 0; g < d.num_arrows(); ++g)
            if (d.arrows[g].word.size() > 1) partial.alpha[g].clear();
        auto c = complete_action(d, partial);
        REQUIRE(c.has_value());
        CHECK(*c == a);
    }
}

TEST_CASE("transformations") {
    for (const auto& [name, d] : diagrams()) {
        if (name == "e1" || name == "e2") continue;
        INFO(name);
        Transformation id = identity_transformation(d);
        CHECK(validate_transformation(d, d, id).ok());
        Transformation id2 = compose_transformations(d, d, d, id, id);
        CHECK(validate_transformation(d, d, id2).ok());
        std::vector<std::vector<int>> w;
        for (const auto& y : id.Y) {
            std::vector<int> iota(y.n);
            std::iota(iota.begin(), iota.end(), 0);
            w.push_back(iota);
        }
        CHECK(validate_modification(d, d, id, id, w).ok());
    }
}

TEST_CASE("a corrupted transformation is rejected") {
    Diagram d = corpus::group_z2();
    Transformation t = identity_transformation(d);
    bool changed = false;
    for (auto& v : t.V)
        if (v.size() >= 2) {
            std::swap(v[0], v[1]);
            changed = true;
            break;
        }
    REQUIRE(changed);
    CHECK_FALSE(validate_transformation(d, d, t).ok());
}
