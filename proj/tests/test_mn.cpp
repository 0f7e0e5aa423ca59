#include "doctest.h"

#include <functional>

#include "gcm/mn.hpp"

using namespace gcm;

namespace {

std::vector<PartialBijection> partial_injections(int k) {
    std::vector<PartialBijection> out;
    std::vector<int> m(k, -1);
    std::function<void(int)> rec = [&](int y) {
        if (y == k) {
            PartialBijection p{m};
            if (p.is_injective()) out.push_back(p);
            return;
        }
        for (int t = -1; t < k; ++t) {
            m[y] = t;
            rec(y + 1);
        }
    };
    rec(0);
    return out;
}

// valid (1,1)-systems on at most k points
std::vector<PartialFreeAction> valid_11(int k) {
    std::vector<PartialFreeAction> out;
    for (int n = 0; n <= k; ++n) {
        auto P = partial_injections(n);
        for (const auto& a : P)
            for (const auto& b : P) {
                PartialFreeAction p{1, 1, {a, b}};
                if (check_conditions(p).ok()) out.push_back(p);
            }
    }
    return out;
}

}  // namespace

TEST_CASE("the diagram E_{m,n}") {
    Diagram d = make_emn(2, 3);
    CHECK(validate_diagram(d).ok());
    int h = -1, v = -1;
    for (int g = 0; g < d.num_arrows(); ++g) {
        if (d.arrow_name(g) == "h") h = g;
        if (d.arrow_name(g) == "v") v = g;
    }
    REQUIRE(h >= 0);
    REQUIRE(v >= 0);
    CHECK(d.corr[h].n == 3);
    CHECK(d.corr[v].n == 2);
    CHECK(validate_diagram(make_emn(1, 1)).ok());
}

TEST_CASE("single point system") {
    MNAction a{2, {1, 2}, {{1, -1}}, {{1, -1}}};
    CHECK(validate_mn_action(a, 1, 1).ok());
    PartialFreeAction p = to_partial_action(a, 1, 1);
    CHECK(check_conditions(p).ok());
    CHECK(from_partial_action(p) == a);
    Diagram d = make_emn(1, 1);
    CHECK(validate_action(d, mn_to_faction(d, a)).ok());
}

TEST_CASE("unequal ranks admit no nonempty system") {
    // h1, h2 split Y2 = {q, r} but v1 alone cannot cover it
    MNAction a{3, {1, 2, 2}, {{1, -1, -1}, {2, -1, -1}}, {{1, -1, -1}}};
    CHECK_FALSE(validate_mn_action(a, 1, 2).ok());
    CHECK(validate_mn_action(MNAction{0, {}, {{}, {}}, {{}}}, 1, 2).ok());
    auto acts = enumerate_actions(make_emn(1, 2), 4);
    REQUIRE(acts.size() == 1);
    CHECK(acts[0].n == 0);
}

TEST_CASE("validators agree on (1,1) instances up to three points") {
    Diagram d = make_emn(1, 1);
    for (int k = 0; k <= 3; ++k) {
        auto P = partial_injections(k);
        for (const auto& a : P)
            for (const auto& b : P) {
                PartialFreeAction p{1, 1, {a, b}};
                MNAction x = from_partial_action(p);
                bool v = validate_mn_action(x, 1, 1).ok();
                CHECK(v == check_conditions(p).ok());
                if (v) CHECK(validate_action(d, mn_to_faction(d, x)).ok());
            }
    }
}

TEST_CASE("configuration counts") {
    std::vector<int> c11, c12, c21;
    for (int d = 0; d <= 3; ++d) {
        c11.push_back((int)omega_depth(1, 1, d).size());
        c12.push_back((int)omega_depth(1, 2, d).size());
        c21.push_back((int)omega_depth(2, 1, d).size());
    }
    CHECK(c11 == std::vector<int>{1, 2, 2, 2});
    CHECK(c12 == std::vector<int>{1, 3, 4, 6});
    CHECK(c21 == c12);
    CHECK(omega_depth(2, 2, 1).size() == 5);
    CHECK(omega_depth(2, 2, 2).size() == 20);
}

TEST_CASE("configurations are closed under dropping the last letter applied") {
    for (const auto& c : omega_depth(2, 2, 2))
        for (const auto& w : c.words)
            if (!w.empty()) CHECK(c.contains(Word(w.begin() + 1, w.end())));
}

TEST_CASE("restriction maps are onto") {
    CHECK(restriction_surjective(1, 2, 1));
    CHECK(restriction_surjective(1, 1, 2));
    for (const auto& c : omega_depth(1, 2, 2)) CHECK(restrict_config(c, 1).depth == 1);
}

TEST_CASE("points map equivariantly to configurations") {
    const int depth = 3;
    for (const auto& p : valid_11(3)) {
        int n = p.gen[0].size();
        auto omega = omega_depth(1, 1, depth);
        for (int y = 0; y < n; ++y) {
            MNConfiguration c = config_of_point(p, y, depth);
            CHECK(std::binary_search(omega.begin(), omega.end(), c));
            for (const auto& g : c.words) {
                int gy = word_action(p, g)(y);
                REQUIRE(gy >= 0);
                int rest = depth - (int)g.size();
                CHECK(translate(c, g) == config_of_point(p, gy, rest));
            }
        }
    }
}

TEST_CASE("depth-truncated groupoid") {
    MNGroupoid G(1, 1, 2);
    CHECK(G.objects().size() == 2);
    for (const auto& a : G.arrows()) {
        int r = G.range(a);
        auto inv = G.inverse(a);
        CHECK(inv.source == r);
        CHECK(G.range(inv) == a.source);
        CHECK(G.compose(inv, a) == G.unit(a.source));
        CHECK(G.range(G.unit(a.source)) == a.source);
    }
    bool threw = false;
    for (const auto& a : G.arrows())
        for (const auto& b : G.arrows())
            if (b.source == G.range(a) && a.g.size() + b.g.size() > 2) {
                Word w = b.g;
                w.insert(w.end(), a.g.begin(), a.g.end());
                if (free_reduce(w).size() > 2) {
                    CHECK_THROWS_AS(G.compose(b, a), DepthInsufficient);
                    threw = true;
                }
            }
    CHECK(threw);
}

TEST_CASE("free words") {
    CHECK(reduced_words(2, 2).size() == 1 + 4 + 12);
    CHECK(free_word_str({}, 1, 1) == "ε");
    CHECK(free_word_str(Word{{0, 1}, {1, -1}}, 1, 1) == "h1v1⁻¹");
}
