#pragma once

#include "qlab/config.hpp"
#include "qlab/ground.hpp"
#include "qlab/perm.hpp"

#include "json.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qlab {

enum class VertexKind { BoundedPElement, PSubset };

// Bound on the number of disjoint p-cycles per vertex.  Unbounded means
// floor(n/p), which imposes no restriction; it is represented as that value
// rather than a separate code path.
class CycleBound {
public:
    static CycleBound bounded(int a);
    static CycleBound unbounded() { return CycleBound(); }
    bool is_unbounded() const { return unbounded_; }
    int effective(int n, int p) const { return unbounded_ ? n / p : value_; }

private:
    CycleBound() = default;
    int value_ = 0;
    bool unbounded_ = true;
};

using Edge = std::pair<std::int32_t, std::int32_t>;

// An undirected graph with a deterministic vertex order: vertices are sorted
// by their canonical encoding (image array for permutations, sorted label
// list for subsets), so indices are reproducible across runs and thread
// counts.  Edges are stored once as (i, j) with i < j; adjacency is also kept
// as bit rows for clique enumeration.  Immutable after construction.
class LabeledGraph {
public:
    const GroundSet& ground() const { return ground_; }
    VertexKind kind() const { return kind_; }
    int p() const { return p_; }
    // Effective cycle bound (floor(n/p) when unbounded); 0 for subset graphs.
    int a() const { return a_; }
    bool unbounded() const { return unbounded_; }

    int vertex_count() const;
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<Permutation>& perm_vertices() const { return perm_vertices_; }
    const std::vector<std::vector<Label>>& subset_vertices() const { return subset_vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool adjacent(int i, int j) const;
    // Bit row for vertex i, blocks_per_row() words of 64 vertices each.
    const std::uint64_t* adjacency_row(int i) const;
    int blocks_per_row() const { return blocks_per_row_; }

    int find_perm_vertex(const Permutation& f) const;        // -1 if absent
    int find_subset_vertex(const std::vector<Label>& s) const;  // -1 if absent

private:
    friend LabeledGraph build_commuting_graph(const GroundSet&, int, CycleBound, int);
    friend LabeledGraph build_kneser_graph(const GroundSet&, int, int);
    void finish_edges(std::vector<Edge> edges);

    GroundSet ground_;
    VertexKind kind_ = VertexKind::BoundedPElement;
    int p_ = 0;
    int a_ = 0;
    bool unbounded_ = false;
    std::vector<Permutation> perm_vertices_;
    std::vector<std::vector<Label>> subset_vertices_;
    std::vector<Edge> edges_;
    std::vector<std::uint64_t> adjacency_;
    int blocks_per_row_ = 0;
};

// All nonidentity permutations of `ground` that are products of at most
// `max_cycles` disjoint p-cycles, in canonical order.
std::vector<Permutation> bounded_p_elements(const GroundSet& ground, int p, int max_cycles);

// Commuting graph on the bounded p-elements.  n < p yields the empty graph.
LabeledGraph build_commuting_graph(const GroundSet& ground, int p, CycleBound a,
                                   int threads = default_threads());

// Graph on the size-p subsets of `ground` with edges between disjoint
// subsets.  p need not be prime here.
LabeledGraph build_kneser_graph(const GroundSet& ground, int p,
                                int threads = default_threads());

int component_count(const LabeledGraph& g);

// Exact maximum clique by branch and bound with greedy colouring bounds.
// Returns the vertex indices of one maximum clique, sorted.
std::vector<int> max_clique(const LabeledGraph& g);

// Edge kernels.  The parallel versions split the pair loop across threads;
// results are identical to the serial reference for every thread count.
std::vector<Edge> commuting_edges_serial(const std::vector<Permutation>& vertices);
std::vector<Edge> commuting_edges_parallel(const std::vector<Permutation>& vertices, int threads);
std::vector<Edge> disjointness_edges_serial(const std::vector<std::vector<Label>>& vertices);
std::vector<Edge> disjointness_edges_parallel(const std::vector<std::vector<Label>>& vertices,
                                              int threads);

nlohmann::json graph_json(const LabeledGraph& g);

}  // namespace qlab
