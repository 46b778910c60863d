#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlab/perm.hpp"

#include <numeric>
#include <random>

using namespace qlab;

namespace {

Permutation random_permutation(const GroundSet& ground, std::mt19937_64& rng) {
    std::vector<Label> image = ground.labels();
    for (std::size_t i = image.size(); i > 1; --i)
        std::swap(image[i - 1], image[rng() % i]);
    return Permutation(ground, std::move(image));
}

// order oracle: compose f with itself until the identity returns
std::int64_t order_by_composition(const Permutation& f) {
    Permutation power = f;
    std::int64_t m = 1;
    while (!power.is_identity()) {
        power = compose(f, power);
        ++m;
    }
    return m;
}

}  // namespace

TEST_CASE("compose basics") {
    GroundSet g = GroundSet::range(3);
    Permutation id(g);
    CHECK(compose(id, id) == id);

    Permutation swap12 = Permutation::from_cycles(g, {{1, 2}});
    CHECK(compose(swap12, swap12) == id);

    // f = (1 2), g = (2 3): pointwise x -> f(g(x)) gives the 3-cycle 1->2->3->1
    Permutation swap23 = Permutation::from_cycles(g, {{2, 3}});
    Permutation product = compose(swap12, swap23);
    CHECK(product == Permutation::from_cycles(g, {{1, 2, 3}}));
    CHECK(product(1) == 2);
    CHECK(product(2) == 3);
    CHECK(product(3) == 1);
}

TEST_CASE("compose rejects mismatched ground sets") {
    Permutation f(GroundSet::range(3));
    Permutation g(GroundSet::range(4));
    CHECK_THROWS_WITH_AS(compose(f, g), "ground-set mismatch", std::invalid_argument);
}

TEST_CASE("cycle decomposition is canonical") {
    GroundSet g = GroundSet::range(4);
    CHECK(cycle_decomposition(Permutation(g)).cycles.empty());

    Permutation f(g, {2, 1, 4, 3});
    auto cycles = cycle_decomposition(f).cycles;
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0] == std::vector<Label>{1, 2});
    CHECK(cycles[1] == std::vector<Label>{3, 4});

    GroundSet g5 = GroundSet::range(5);
    Permutation five(g5, {2, 3, 4, 5, 1});
    auto single = cycle_decomposition(five).cycles;
    REQUIRE(single.size() == 1);
    CHECK(single[0] == std::vector<Label>{1, 2, 3, 4, 5});
}

TEST_CASE("cycle decomposition round-trips on random permutations") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        GroundSet g = GroundSet::range(2 + static_cast<int>(rng() % 8));
        Permutation f = random_permutation(g, rng);
        CHECK(Permutation::from_cycles(g, cycle_decomposition(f).cycles) == f);
    }
}

TEST_CASE("order equals the cycle-length lcm") {
    GroundSet g = GroundSet::range(5);
    CHECK(order(Permutation(g)) == 1);
    CHECK(order(Permutation::from_cycles(g, {{1, 2}, {3, 4}})) == 2);
    CHECK(order(Permutation::from_cycles(g, {{1, 2, 3}, {4, 5}})) == 6);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        GroundSet ground = GroundSet::range(2 + static_cast<int>(rng() % 7));
        Permutation f = random_permutation(ground, rng);
        CHECK(order(f) == order_by_composition(f));
    }
}

TEST_CASE("bounded p-element predicate") {
    GroundSet g = GroundSet::range(4);
    Permutation two_swaps = Permutation::from_cycles(g, {{1, 2}, {3, 4}});
    CHECK(is_bounded_p_element(two_swaps, 2, 2));
    CHECK_FALSE(is_bounded_p_element(two_swaps, 2, 1));
    CHECK_FALSE(is_bounded_p_element(Permutation(g), 2, 3));
    CHECK_FALSE(is_bounded_p_element(Permutation(g), 3, 1));

    GroundSet g3 = GroundSet::range(3);
    CHECK(is_bounded_p_element(Permutation::from_cycles(g3, {{1, 2, 3}}), 3, 1));
    CHECK_FALSE(is_bounded_p_element(Permutation::from_cycles(g3, {{1, 2}}), 3, 1));

    CHECK_THROWS_AS(is_bounded_p_element(two_swaps, 4, 1), std::invalid_argument);
}

TEST_CASE("bounded p-element implies order p and support at most ap") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        GroundSet g = GroundSet::range(2 + static_cast<int>(rng() % 8));
        Permutation f = random_permutation(g, rng);
        for (int p : {2, 3})
            for (int a : {1, 2})
                if (is_bounded_p_element(f, p, a)) {
                    CHECK(order(f) == p);
                    CHECK(support(f).size() <= a * p);
                    CHECK(support(f).size() % p == 0);
                }
    }
}

TEST_CASE("commutation") {
    GroundSet g = GroundSet::range(4);
    CHECK(commutes(Permutation::from_cycles(g, {{1, 2}}),
                   Permutation::from_cycles(g, {{3, 4}})));
    CHECK_FALSE(commutes(Permutation::from_cycles(g, {{1, 2}}),
                         Permutation::from_cycles(g, {{1, 3}})));
    // both products equal (1 4)(2 3)
    Permutation x = Permutation::from_cycles(g, {{1, 2}, {3, 4}});
    Permutation y = Permutation::from_cycles(g, {{1, 3}, {2, 4}});
    CHECK(commutes(x, y));
    CHECK(compose(x, y) == Permutation::from_cycles(g, {{1, 4}, {2, 3}}));
    CHECK(compose(y, x) == Permutation::from_cycles(g, {{1, 4}, {2, 3}}));
}

TEST_CASE("disjoint supports commute, exhaustively for n <= 6") {
    for (int n = 2; n <= 6; ++n) {
        GroundSet g = GroundSet::range(n);
        std::vector<Permutation> elements;
        std::vector<Label> image = g.labels();
        // all permutations via ordered images
        std::sort(image.begin(), image.end());
        do {
            elements.emplace_back(g, image);
        } while (std::next_permutation(image.begin(), image.end()));
        for (std::size_t i = 0; i < elements.size(); i += 7)
            for (std::size_t j = 0; j < elements.size(); j += 5) {
                const Permutation& f = elements[i];
                const Permutation& h = elements[j];
                GroundSet overlap =
                    set_difference(support(f), set_difference(support(f), support(h)));
                if (overlap.empty()) CHECK(commutes(f, h));
            }
    }
}

TEST_CASE("support") {
    GroundSet g10 = GroundSet::range(10);
    CHECK(support(Permutation(g10)).empty());
    CHECK(support(Permutation::from_cycles(g10, {{1, 2}, {3, 4}})) ==
          GroundSet({1, 2, 3, 4}));
    GroundSet g7 = GroundSet::range(7);
    CHECK(support(Permutation::from_cycles(g7, {{5, 6, 7}})) == GroundSet({5, 6, 7}));
}

TEST_CASE("relabel") {
    GroundSet s2 = GroundSet::range(2);
    GroundSet s7 = GroundSet::range(7);
    Injection j(s2, s7, {3, 7});
    CHECK(relabel(Permutation(s2), j) == Permutation(s7));
    CHECK(relabel(Permutation::from_cycles(s2, {{1, 2}}), j) ==
          Permutation::from_cycles(s7, {{3, 7}}));

    GroundSet s3 = GroundSet::range(3);
    GroundSet s5 = GroundSet::range(5);
    Injection inc = Injection::inclusion(s3, s5);
    CHECK(relabel(Permutation::from_cycles(s3, {{1, 2, 3}}), inc) ==
          Permutation::from_cycles(s5, {{1, 2, 3}}));

    CHECK_THROWS_WITH_AS(relabel(Permutation(s5), j), "domain mismatch",
                         std::invalid_argument);
}

TEST_CASE("relabel is functorial") {
    std::mt19937_64 rng(17);
    GroundSet s4 = GroundSet::range(4);
    GroundSet s6 = GroundSet::range(6);
    GroundSet s9 = GroundSet::range(9);
    for (int trial = 0; trial < 40; ++trial) {
        // random injections s4 -> s6 -> s9
        std::vector<Label> pool6 = s6.labels();
        for (std::size_t i = pool6.size(); i > 1; --i)
            std::swap(pool6[i - 1], pool6[rng() % i]);
        pool6.resize(4);
        Injection j1(s4, s6, pool6);
        std::vector<Label> pool9 = s9.labels();
        for (std::size_t i = pool9.size(); i > 1; --i)
            std::swap(pool9[i - 1], pool9[rng() % i]);
        pool9.resize(6);
        Injection j2(s6, s9, pool9);
        Permutation f = random_permutation(s4, rng);
        CHECK(relabel(f, compose(j2, j1)) == relabel(relabel(f, j1), j2));
    }
}

TEST_CASE("compose is associative and inverses cancel") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        GroundSet g = GroundSet::range(2 + static_cast<int>(rng() % 9));
        Permutation f = random_permutation(g, rng);
        Permutation h = random_permutation(g, rng);
        Permutation k = random_permutation(g, rng);
        CHECK(compose(compose(f, h), k) == compose(f, compose(h, k)));
        CHECK(compose(f, f.inverse()) == Permutation(g));
        CHECK(compose(f.inverse(), f) == Permutation(g));
    }
}

TEST_CASE("cycle notation") {
    GroundSet g = GroundSet::range(4);
    CHECK(cycle_string(Permutation(g)) == "()");
    CHECK(cycle_string(Permutation::from_cycles(g, {{3, 4}, {1, 2}})) == "(1 2)(3 4)");
    GroundSet g5 = GroundSet::range(5);
    CHECK(cycle_string(Permutation::from_cycles(g5, {{1, 3, 2}})) == "(1 3 2)");
}
