#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlab/coreduce.hpp"
#include "qlab/homology.hpp"

#include <random>

using namespace qlab;

namespace {

std::shared_ptr<const LabeledGraph> commuting(int n, int p, int a) {
    return std::make_shared<const LabeledGraph>(
        build_commuting_graph(GroundSet::range(n), p, CycleBound::bounded(a), 1));
}

std::shared_ptr<const LabeledGraph> kneser(int n, int p) {
    return std::make_shared<const LabeledGraph>(
        build_kneser_graph(GroundSet::range(n), p, 1));
}

// all complexes in the cross-validation matrix, built to full dimension
std::vector<CliqueComplex> small_matrix() {
    std::vector<CliqueComplex> out;
    auto add = [&](std::shared_ptr<const LabeledGraph> g) {
        if (g->vertex_count() == 0) return;
        int dim = static_cast<int>(max_clique(*g).size()) - 1;
        out.push_back(clique_complex(std::move(g), std::max(dim, 0)));
    };
    for (int n = 2; n <= 7; ++n) add(commuting(n, 2, 1));
    for (int n = 4; n <= 6; ++n) add(commuting(n, 2, 2));
    for (int n = 3; n <= 7; ++n) add(commuting(n, 3, 1));
    for (int n = 6; n <= 6; ++n) add(commuting(n, 3, 2));
    for (int n = 4; n <= 7; ++n) add(kneser(n, 2));
    for (int n = 6; n <= 8; ++n) add(kneser(n, 3));
    return out;
}

SparseIntMatrix permuted(const SparseIntMatrix& m, const std::vector<std::int64_t>& rows,
                         const std::vector<std::int64_t>& cols) {
    std::vector<Triplet> entries;
    for (const Triplet& t : m.entries())
        entries.push_back({rows[static_cast<std::size_t>(t.row)],
                           cols[static_cast<std::size_t>(t.col)], t.value});
    return SparseIntMatrix(m.rows(), m.cols(), std::move(entries));
}

std::vector<std::int64_t> random_permutation_vector(std::int64_t n, std::mt19937_64& rng) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
    return v;
}

}  // namespace

TEST_CASE("homology group rendering") {
    CHECK(to_string(HomologyGroup{}) == "0");
    CHECK(to_string(HomologyGroup{6, {}}) == "Z^6");
    CHECK(to_string(HomologyGroup{0, {3}}) == "Z^0 + Z/3");
    CHECK(to_string(HomologyGroup{2, {2, 4}}) == "Z^2 + Z/2 + Z/4");
    nlohmann::json j = homology_json(HomologyGroup{0, {3}});
    CHECK(j.dump() == R"({"betti":0,"torsion":[3]})");
}

TEST_CASE("reduced homology of the stock examples") {
    {
        CliqueComplex cx = clique_complex(commuting(4, 2, 1), 0);
        auto h = complex_homology(cx, 0);
        CHECK(h[0] == HomologyGroup{2, {}});
    }
    {
        CliqueComplex cx = clique_complex(commuting(5, 2, 1), 1);
        auto h = complex_homology(cx, 1);
        CHECK(h[0] == HomologyGroup{0, {}});
        // the complex is the Petersen graph: rank 15 - 10 + 1 = 6
        CHECK(h[1] == HomologyGroup{6, {}});
    }
    {
        CliqueComplex cx = clique_complex(commuting(7, 2, 1), 1);
        auto h = complex_homology(cx, 1);
        CHECK(h[0] == HomologyGroup{0, {}});
        CHECK(h[1] == HomologyGroup{0, {3}});
    }
}

TEST_CASE("the empty complex has vanishing reduced homology") {
    CliqueComplex empty = clique_complex(commuting(1, 2, 1), 2);
    auto h = complex_homology(empty, 0, 2, {});
    for (const auto& g : h) CHECK(g.trivial());
}

TEST_CASE("degree-0 betti counts components") {
    for (const CliqueComplex& cx : small_matrix()) {
        auto h = complex_homology(cx, 0);
        CHECK(h[0].betti + 1 == component_count(cx.graph()));
        CHECK(h[0].torsion.empty());
    }
}

TEST_CASE("homology requires a chain segment") {
    CliqueComplex cx = clique_complex(commuting(5, 2, 1), 1);
    SparseIntMatrix d1 = boundary_matrix(cx, 1, true);
    // d1 against itself is not composable as a chain segment
    CHECK_THROWS_AS(homology(cx.count(1), d1, d1), std::invalid_argument);
}

TEST_CASE("Euler characteristic consistency on full complexes") {
    for (const CliqueComplex& cx : small_matrix()) {
        int dim = cx.max_dim();
        auto h = complex_homology(cx, 0, dim, {});
        Int chain = -1, homological = 0;
        for (int k = 0; k <= dim; ++k) {
            chain += (k % 2 == 0 ? 1 : -1) * Int(cx.count(k));
            homological += (k % 2 == 0 ? 1 : -1) * Int(h[static_cast<std::size_t>(k)].betti);
        }
        CHECK(chain == homological);
    }
}

TEST_CASE("coreduction path equals the direct path") {
    for (const CliqueComplex& cx : small_matrix()) {
        int top = std::min(cx.max_dim(), 2);
        auto direct = complex_homology(cx, 0, top, {});
        auto reduced = complex_homology(cx, 0, top, {.coreduce = true});
        CHECK(direct == reduced);
    }
}

TEST_CASE("rank fast path gives the same betti numbers") {
    for (int n : {5, 6, 7}) {
        CliqueComplex cx = clique_complex(commuting(n, 2, 1), 1);
        auto plain = complex_homology(cx, 1, 1, {});
        auto fast = complex_homology(cx, 1, 1, {.rank_fast_path = true});
        CHECK(plain == fast);
    }
}

TEST_CASE("homology is invariant under basis permutations") {
    std::mt19937_64 rng(29);
    CliqueComplex cx = clique_complex(commuting(6, 2, 2), 1);
    SparseIntMatrix d1 = boundary_matrix(cx, 1, true);
    SparseIntMatrix d2 = boundary_matrix(cx, 2, true);
    HomologyGroup reference = homology(cx.count(1), d1, d2);
    for (int trial = 0; trial < 5; ++trial) {
        auto rows0 = random_permutation_vector(d1.rows(), rng);
        auto perm1 = random_permutation_vector(cx.count(1), rng);
        auto perm2 = random_permutation_vector(cx.count(2), rng);
        HomologyGroup shuffled =
            homology(cx.count(1), permuted(d1, rows0, perm1), permuted(d2, perm1, perm2));
        CHECK(shuffled == reference);
    }
}

TEST_CASE("homology bases carry verified cycle representatives") {
    {
        CliqueComplex cx = clique_complex(commuting(5, 2, 1), 1);
        HomologyBasis basis = homology_basis(cx.count(1), boundary_matrix(cx, 1, true),
                                             boundary_matrix(cx, 2, true));
        CHECK(basis.free_generators.size() == 6);
        CHECK(basis.torsion_generators.empty());
        CHECK(basis.group() == HomologyGroup{6, {}});
    }
    {
        CliqueComplex cx = clique_complex(commuting(7, 2, 1), 1);
        HomologyBasis basis = homology_basis(cx.count(1), boundary_matrix(cx, 1, true),
                                             boundary_matrix(cx, 2, true));
        CHECK(basis.free_generators.empty());
        REQUIRE(basis.torsion_generators.size() == 1);
        CHECK(basis.torsion_generators[0].second == 3);
        // the torsion class is nonzero: its representative is not a boundary
        CHECK_FALSE(solve_in_image(boundary_matrix(cx, 2, true),
                                   basis.torsion_generators[0].first)
                        .solvable);
    }
    {
        CliqueComplex cx = clique_complex(commuting(6, 2, 1), 0);
        HomologyBasis basis = homology_basis(cx.count(0), boundary_matrix(cx, 0, true),
                                             boundary_matrix(cx, 1, true));
        CHECK(basis.size() == 0);
    }
}

TEST_CASE("basis groups agree with homology groups across the matrix") {
    for (const CliqueComplex& cx : small_matrix()) {
        int top = std::min(cx.max_dim(), 1);
        for (int k = 0; k <= top; ++k) {
            HomologyGroup group = complex_homology(cx, k, k, {})[0];
            HomologyBasis basis = homology_basis(
                cx.count(k), boundary_matrix(cx, k, true), boundary_matrix(cx, k + 1, true));
            CHECK(basis.group() == group);
        }
    }
}

TEST_CASE("carried cycles classify correctly through coreduction") {
    // Petersen complex: all six independent cycles survive, none bound
    CliqueComplex cx = clique_complex(commuting(5, 2, 1), 1);
    HomologyBasis basis = homology_basis(cx.count(1), boundary_matrix(cx, 1, true),
                                         boundary_matrix(cx, 2, true));
    std::vector<std::vector<Int>> cycles = basis.free_generators;
    // plus one known boundary: the boundary of nothing, the zero cycle
    cycles.emplace_back(static_cast<std::size_t>(cx.count(1)), Int(0));
    CycleClassification cls = classify_cycles(cx, 1, cycles);
    CHECK(cls.core_basis.group() == HomologyGroup{6, {}});
    for (std::size_t i = 0; i < 6; ++i) CHECK_FALSE(cls.is_boundary[i]);
    CHECK(cls.is_boundary[6]);
}
