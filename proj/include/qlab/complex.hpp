#pragma once

#include "qlab/config.hpp"
#include "qlab/graph.hpp"
#include "qlab/matrix.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace qlab {

// The clique complex of a graph up to dimension max_dim + 1, one level above
// the requested homology cap so the boundary map out of degree max_dim + 1 is
// available.  Each skeleton level is a flat array of sorted vertex-index
// tuples in lexicographic order, which fixes both the simplex indexing and
// the orientation convention.
class CliqueComplex {
public:
    CliqueComplex(std::shared_ptr<const LabeledGraph> graph, int max_dim,
                  std::vector<std::vector<std::int32_t>> skeleton);

    const LabeledGraph& graph() const { return *graph_; }
    std::shared_ptr<const LabeledGraph> graph_ptr() const { return graph_; }
    int max_dim() const { return max_dim_; }
    int top_dim() const { return max_dim_ + 1; }

    std::int64_t count(int k) const;  // number of k-simplices, 0 outside range
    std::span<const std::int32_t> simplex(int k, std::int64_t index) const;
    std::int64_t index_of(int k, std::span<const std::int32_t> vertices) const;  // -1 if absent
    const std::vector<std::int32_t>& flat(int k) const;
    // Largest k with at least one stored k-simplex, or -1 for the empty complex.
    int top_nonempty_dim() const;

private:
    std::shared_ptr<const LabeledGraph> graph_;
    int max_dim_ = 0;
    std::vector<std::vector<std::int32_t>> skeleton_;  // level k: (k+1)-tuples
};

// Enumerates all cliques of size 1..max_dim+2.  Throws BudgetError with the
// counts seen so far if the stored simplex count would exceed the budget.
CliqueComplex clique_complex(std::shared_ptr<const LabeledGraph> graph, int max_dim,
                             const Budget& budget = {}, int threads = default_threads());

// Signed boundary matrix C_k -> C_{k-1} with entries (-1)^i on the i-th
// facet.  In reduced mode k = 0 yields the 1 x |C_0| all-ones augmentation;
// otherwise the 0 x |C_0| matrix.
SparseIntMatrix boundary_matrix(const CliqueComplex& cx, int k, bool reduced);

// Union of the supports of a simplex's vertices (of the subsets themselves
// on subset graphs).
GroundSet simplex_support(const CliqueComplex& cx, int k, std::int64_t index);

// Clique enumeration kernels; the parallel one splits by root vertex and
// concatenates in root order, so output is identical for every thread count.
std::vector<std::vector<std::int32_t>> enumerate_cliques_serial(const LabeledGraph& g,
                                                                int max_size,
                                                                const Budget& budget);
std::vector<std::vector<std::int32_t>> enumerate_cliques_parallel(const LabeledGraph& g,
                                                                  int max_size,
                                                                  const Budget& budget,
                                                                  int threads);

// Complex cache format: "qlab-complex v1 n p a max_dim" then one line
// "k: i_0 i_1 ... i_k" per simplex in sorted order.
void write_complex_file(const CliqueComplex& cx, std::ostream& out);

struct ComplexFile {
    int n = 0, p = 0, a = 0, max_dim = 0;
    std::vector<std::vector<std::int32_t>> skeleton;
};
ComplexFile read_complex_file(std::istream& in);

}  // namespace qlab
