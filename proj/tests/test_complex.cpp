#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlab/complex.hpp"
#include "qlab/errors.hpp"

#include <set>
#include <sstream>

using namespace qlab;

namespace {

std::shared_ptr<const LabeledGraph> commuting(int n, int p, int a, int threads = 1) {
    return std::make_shared<const LabeledGraph>(
        build_commuting_graph(GroundSet::range(n), p, CycleBound::bounded(a), threads));
}

std::shared_ptr<const LabeledGraph> kneser(int n, int p, int threads = 1) {
    return std::make_shared<const LabeledGraph>(
        build_kneser_graph(GroundSet::range(n), p, threads));
}

// k-matchings of the complete graph K_n: n! / (2^k k! (n-2k)!)
std::int64_t matching_count(int n, int k) {
    if (2 * k > n) return 0;
    std::int64_t numerator = 1;
    for (int i = 0; i < 2 * k; ++i) numerator *= n - i;
    std::int64_t denominator = 1;
    for (int i = 0; i < k; ++i) denominator *= 2;
    for (int i = 2; i <= k; ++i) denominator *= i;
    return numerator / denominator;
}

}  // namespace

TEST_CASE("clique complex examples") {
    CliqueComplex k42 = clique_complex(kneser(4, 2), 1);
    CHECK(k42.count(0) == 6);
    CHECK(k42.count(1) == 3);
    CHECK(k42.count(2) == 0);

    CliqueComplex m6 = clique_complex(commuting(6, 2, 1), 2);
    CHECK(m6.count(2) == 15);  // perfect matchings of K_6
    for (std::int64_t i = 0; i < m6.count(2); ++i)
        CHECK(simplex_support(m6, 2, i).size() == 6);

    CliqueComplex empty = clique_complex(commuting(1, 2, 1), 2);
    CHECK(empty.count(0) == 0);
    CHECK(empty.top_nonempty_dim() == -1);
}

TEST_CASE("matching numbers count the skeleton simplices") {
    for (int n = 2; n <= 11; ++n) {
        CliqueComplex cx = clique_complex(commuting(n, 2, 1), 4, {}, 2);
        for (int k = 0; k <= 4; ++k) CHECK(cx.count(k) == matching_count(n, k + 1));
    }
}

TEST_CASE("skeleta are closed under faces and sorted") {
    CliqueComplex cx = clique_complex(commuting(7, 2, 2), 2);
    for (int k = 1; k <= cx.top_dim(); ++k) {
        for (std::int64_t i = 0; i < cx.count(k); ++i) {
            auto s = cx.simplex(k, i);
            CHECK(std::is_sorted(s.begin(), s.end()));
            std::vector<std::int32_t> facet(s.size() - 1);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                for (std::size_t j = 0, w = 0; j < s.size(); ++j)
                    if (j != drop) facet[w++] = s[j];
                CHECK(cx.index_of(k - 1, facet) >= 0);
            }
        }
        // lexicographic simplex order
        for (std::int64_t i = 1; i < cx.count(k); ++i) {
            auto prev = cx.simplex(k, i - 1);
            auto curr = cx.simplex(k, i);
            CHECK(std::lexicographical_compare(prev.begin(), prev.end(), curr.begin(),
                                               curr.end()));
        }
    }
}

TEST_CASE("boundary matrices") {
    // every edge column carries -1 at its lower vertex and +1 at the upper
    CliqueComplex k42 = clique_complex(kneser(4, 2), 1);
    SparseIntMatrix d1 = boundary_matrix(k42, 1, false);
    CHECK(d1.rows() == 6);
    CHECK(d1.cols() == 3);
    for (std::int64_t c = 0; c < 3; ++c) {
        auto s = k42.simplex(1, c);
        Int low = 0, high = 0;
        for (const Triplet& t : d1.entries())
            if (t.col == c) {
                if (t.row == s[0]) low = t.value;
                if (t.row == s[1]) high = t.value;
            }
        CHECK(low == -1);
        CHECK(high == 1);
    }

    // augmentation row in reduced mode
    SparseIntMatrix d0 = boundary_matrix(k42, 0, true);
    CHECK(d0.rows() == 1);
    CHECK(d0.cols() == 6);
    CHECK(d0.nnz() == 6);
    CHECK(boundary_matrix(k42, 0, false).rows() == 0);

    CHECK_THROWS_AS(boundary_matrix(k42, 5, true), std::invalid_argument);
}

TEST_CASE("boundary of boundary vanishes across the small matrix") {
    std::vector<CliqueComplex> complexes;
    for (int n = 3; n <= 7; ++n) complexes.push_back(clique_complex(commuting(n, 2, 1), 2));
    for (int n = 4; n <= 6; ++n) complexes.push_back(clique_complex(commuting(n, 2, 2), 2));
    for (int n = 3; n <= 7; ++n) complexes.push_back(clique_complex(commuting(n, 3, 1), 2));
    for (int n = 4; n <= 7; ++n) complexes.push_back(clique_complex(kneser(n, 2), 2));
    for (int n = 6; n <= 8; ++n) complexes.push_back(clique_complex(kneser(n, 3), 2));
    for (const CliqueComplex& cx : complexes)
        for (int k = 1; k <= cx.top_dim(); ++k)
            CHECK(multiply(boundary_matrix(cx, k - 1, true), boundary_matrix(cx, k, true))
                      .is_zero());
}

TEST_CASE("simplex support") {
    CliqueComplex cx = clique_complex(commuting(4, 2, 1), 1);
    GroundSet g4 = GroundSet::range(4);
    std::int64_t v = cx.graph().find_perm_vertex(Permutation::from_cycles(g4, {{1, 2}}));
    REQUIRE(v >= 0);
    CHECK(simplex_support(cx, 0, cx.index_of(0, std::vector<std::int32_t>{
                                                     static_cast<std::int32_t>(v)})) ==
          GroundSet({1, 2}));

    // a 2-simplex of the n=10, a=2 complex covering all ten letters
    auto g = commuting(10, 2, 2);
    CliqueComplex big = clique_complex(g, 2);
    GroundSet g10 = GroundSet::range(10);
    std::vector<std::int32_t> triple = {
        static_cast<std::int32_t>(g->find_perm_vertex(
            Permutation::from_cycles(g10, {{1, 2}, {3, 4}}))),
        static_cast<std::int32_t>(g->find_perm_vertex(
            Permutation::from_cycles(g10, {{5, 6}, {7, 8}}))),
        static_cast<std::int32_t>(g->find_perm_vertex(
            Permutation::from_cycles(g10, {{9, 10}}))),
    };
    std::sort(triple.begin(), triple.end());
    std::int64_t idx = big.index_of(2, triple);
    REQUIRE(idx >= 0);
    CHECK(simplex_support(big, 2, idx) == g10);

    // subset graphs take the union of the subsets
    CliqueComplex kx = clique_complex(kneser(6, 2), 1);
    for (std::int64_t i = 0; i < kx.count(1); ++i)
        CHECK(simplex_support(kx, 1, i).size() == 4);
}

TEST_CASE("budget exceeded is explicit") {
    Budget tiny{.max_entries = 10, .max_bits = 8192};
    CHECK_THROWS_WITH_AS(clique_complex(commuting(7, 2, 1), 2, tiny),
                         doctest::Contains("budget exceeded"), BudgetError);
}

TEST_CASE("complex file round-trip and corruption handling") {
    CliqueComplex cx = clique_complex(commuting(5, 2, 1), 1);
    std::ostringstream out;
    write_complex_file(cx, out);
    CHECK(out.str().starts_with("qlab-complex v1 5 2 1 1\n"));
    std::istringstream in(out.str());
    ComplexFile file = read_complex_file(in);
    CHECK(file.n == 5);
    CHECK(file.max_dim == 1);
    for (int k = 0; k <= cx.top_dim(); ++k)
        CHECK(file.skeleton[static_cast<std::size_t>(k)] == cx.flat(k));

    std::istringstream bad("qlab-complex v1 5 2 1 1\n0: 1\n9: 1 2\n");
    CHECK_THROWS(read_complex_file(bad));
}
