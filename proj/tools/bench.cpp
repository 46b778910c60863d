// Compares the serial reference kernels against the OpenMP versions on a
// mid-size commuting graph and its clique complex, and reports one Smith
// elimination as a yardstick.

#include "qlab/complex.hpp"
#include "qlab/graph.hpp"
#include "qlab/snf.hpp"

#include <cstdio>
#include <omp.h>

using namespace qlab;

namespace {

double time_edges_serial(const std::vector<Permutation>& vertices, std::int64_t& edges) {
    double start = omp_get_wtime();
    edges = static_cast<std::int64_t>(commuting_edges_serial(vertices).size());
    return omp_get_wtime() - start;
}

double time_edges_parallel(const std::vector<Permutation>& vertices, int threads,
                           std::int64_t& edges) {
    double start = omp_get_wtime();
    edges = static_cast<std::int64_t>(commuting_edges_parallel(vertices, threads).size());
    return omp_get_wtime() - start;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 12;
    int threads = omp_get_max_threads();
    GroundSet ground = GroundSet::range(n);
    Budget budget;

    std::printf("commuting graph n=%d p=2 a=2, %d threads available\n", n, threads);
    auto vertices = bounded_p_elements(ground, 2, 2);
    std::printf("  vertices: %zu\n", vertices.size());

    std::int64_t edges_serial = 0, edges_parallel = 0;
    double t_serial = time_edges_serial(vertices, edges_serial);
    double t_parallel = time_edges_parallel(vertices, threads, edges_parallel);
    std::printf("  edges serial:   %8lld in %.3f s\n",
                static_cast<long long>(edges_serial), t_serial);
    std::printf("  edges parallel: %8lld in %.3f s (x%.2f)\n",
                static_cast<long long>(edges_parallel), t_parallel,
                t_parallel > 0 ? t_serial / t_parallel : 0.0);
    if (edges_serial != edges_parallel) {
        std::printf("  MISMATCH between serial and parallel edge counts\n");
        return 1;
    }

    auto graph = std::make_shared<const LabeledGraph>(
        build_commuting_graph(ground, 2, CycleBound::bounded(2), threads));
    double start = omp_get_wtime();
    auto serial_levels = enumerate_cliques_serial(*graph, 3, budget);
    double t_cs = omp_get_wtime() - start;
    start = omp_get_wtime();
    auto parallel_levels = enumerate_cliques_parallel(*graph, 3, budget, threads);
    double t_cp = omp_get_wtime() - start;
    std::printf("  cliques (size <= 3) serial:   %.3f s\n", t_cs);
    std::printf("  cliques (size <= 3) parallel: %.3f s (x%.2f)\n", t_cp,
                t_cp > 0 ? t_cs / t_cp : 0.0);
    if (serial_levels != parallel_levels) {
        std::printf("  MISMATCH between serial and parallel clique lists\n");
        return 1;
    }

    // Smith yardstick: the matching-complex boundary the stock checks lean on.
    auto matching = std::make_shared<const LabeledGraph>(
        build_commuting_graph(GroundSet::range(11), 2, CycleBound::bounded(1), threads));
    CliqueComplex cx = clique_complex(matching, 1, budget, threads);
    start = omp_get_wtime();
    SNFResult snf = smith_normal_form(boundary_matrix(cx, 2, true), {.budget = budget});
    std::printf("matching complex n=11: smith form of d_2 (%lld x %lld), rank %lld in %.3f s\n",
                static_cast<long long>(cx.count(1)), static_cast<long long>(cx.count(2)),
                static_cast<long long>(snf.rank), omp_get_wtime() - start);
    return 0;
}
