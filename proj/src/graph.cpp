#include "qlab/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include <omp.h>

namespace qlab {

int default_threads() {
    return omp_get_max_threads();
}

CycleBound CycleBound::bounded(int a) {
    if (a < 1) throw std::invalid_argument("cycle bound must be at least 1");
    CycleBound b;
    b.value_ = a;
    b.unbounded_ = false;
    return b;
}

int LabeledGraph::vertex_count() const {
    return kind_ == VertexKind::BoundedPElement ? static_cast<int>(perm_vertices_.size())
                                                : static_cast<int>(subset_vertices_.size());
}

bool LabeledGraph::adjacent(int i, int j) const {
    return (adjacency_[static_cast<std::size_t>(i) * blocks_per_row_ + j / 64] >>
            (j % 64)) & 1u;
}

const std::uint64_t* LabeledGraph::adjacency_row(int i) const {
    return adjacency_.data() + static_cast<std::size_t>(i) * blocks_per_row_;
}

int LabeledGraph::find_perm_vertex(const Permutation& f) const {
    auto it = std::lower_bound(perm_vertices_.begin(), perm_vertices_.end(), f, image_less);
    if (it == perm_vertices_.end() || !(*it == f)) return -1;
    return static_cast<int>(it - perm_vertices_.begin());
}

int LabeledGraph::find_subset_vertex(const std::vector<Label>& s) const {
    auto it = std::lower_bound(subset_vertices_.begin(), subset_vertices_.end(), s);
    if (it == subset_vertices_.end() || *it != s) return -1;
    return static_cast<int>(it - subset_vertices_.begin());
}

void LabeledGraph::finish_edges(std::vector<Edge> edges) {
    edges_ = std::move(edges);
    int n = vertex_count();
    blocks_per_row_ = (n + 63) / 64;
    adjacency_.assign(static_cast<std::size_t>(n) * blocks_per_row_, 0);
    for (const auto& [i, j] : edges_) {
        adjacency_[static_cast<std::size_t>(i) * blocks_per_row_ + j / 64] |= 1ull << (j % 64);
        adjacency_[static_cast<std::size_t>(j) * blocks_per_row_ + i / 64] |= 1ull << (i % 64);
    }
}

namespace {

// All cyclic arrangements of `subset` starting at its minimum: the tail runs
// through every permutation, giving the (p-1)! distinct p-cycles on it.
void append_cycle_arrangements(const std::vector<Label>& subset,
                               std::vector<std::vector<Label>>& out) {
    std::vector<Label> tail(subset.begin() + 1, subset.end());
    std::sort(tail.begin(), tail.end());
    do {
        std::vector<Label> arrangement;
        arrangement.reserve(subset.size());
        arrangement.push_back(subset.front());
        arrangement.insert(arrangement.end(), tail.begin(), tail.end());
        out.push_back(std::move(arrangement));
    } while (std::next_permutation(tail.begin(), tail.end()));
}

struct ElementEnumerator {
    const std::vector<Label>& labels;
    int p;
    int max_cycles;
    std::vector<char> used;
    std::vector<std::vector<Label>> chosen;  // disjoint p-subsets, minima increasing
    std::vector<Permutation>& out;
    GroundSet ground;

    void emit() {
        // One permutation per combination of cyclic arrangements of the
        // chosen subsets.
        std::vector<std::vector<std::vector<Label>>> options;
        options.reserve(chosen.size());
        for (const auto& subset : chosen) {
            options.emplace_back();
            append_cycle_arrangements(subset, options.back());
        }
        std::vector<std::size_t> pick(options.size(), 0);
        while (true) {
            std::vector<std::vector<Label>> cycles;
            cycles.reserve(options.size());
            for (std::size_t i = 0; i < options.size(); ++i)
                cycles.push_back(options[i][pick[i]]);
            out.push_back(Permutation::from_cycles(ground, cycles));
            std::size_t i = 0;
            for (; i < options.size(); ++i) {
                if (++pick[i] < options[i].size()) break;
                pick[i] = 0;
            }
            if (i == options.size()) break;
        }
    }

    // Extend the current family with subsets whose minima lie at or after
    // `start`; minima strictly increase along the recursion, so every family
    // is produced exactly once.
    void recurse(std::size_t start) {
        if (!chosen.empty()) emit();
        if (chosen.size() == static_cast<std::size_t>(max_cycles)) return;
        for (std::size_t m = start; m < labels.size(); ++m) {
            if (used[m]) continue;
            std::vector<std::size_t> pool;
            for (std::size_t i = m + 1; i < labels.size(); ++i)
                if (!used[i]) pool.push_back(i);
            if (pool.size() + 1 < static_cast<std::size_t>(p)) break;
            // choose p-1 partners from pool (combinations in lex order)
            std::vector<std::size_t> comb(static_cast<std::size_t>(p - 1));
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                std::vector<Label> subset{labels[m]};
                for (std::size_t c : comb) subset.push_back(labels[pool[c]]);
                used[m] = 1;
                for (std::size_t c : comb) used[pool[c]] = 1;
                chosen.push_back(subset);
                recurse(m + 1);
                chosen.pop_back();
                used[m] = 0;
                for (std::size_t c : comb) used[pool[c]] = 0;
                // next combination
                int i = p - 2;
                while (i >= 0 &&
                       comb[static_cast<std::size_t>(i)] ==
                           pool.size() - static_cast<std::size_t>(p - 1 - i))
                    --i;
                if (i < 0) break;
                ++comb[static_cast<std::size_t>(i)];
                for (std::size_t k = static_cast<std::size_t>(i) + 1;
                     k < comb.size(); ++k)
                    comb[k] = comb[k - 1] + 1;
            }
        }
    }
};

}  // namespace

std::vector<Permutation> bounded_p_elements(const GroundSet& ground, int p, int max_cycles) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    std::vector<Permutation> out;
    if (max_cycles < 1 || ground.size() < p) return out;
    ElementEnumerator enumerator{ground.labels(), p, max_cycles, {}, {}, out, ground};
    enumerator.used.assign(ground.labels().size(), 0);
    enumerator.recurse(0);
    std::sort(out.begin(), out.end(), image_less);
    return out;
}

namespace {

// Images as positions into the ground set, plus a 64-bit support mask when
// the ground set is small enough.  Turns the commutation test into plain
// array lookups.
struct PackedPerms {
    int n = 0;
    std::vector<std::int32_t> pos;  // vertex-major, n entries each
    std::vector<std::uint64_t> mask;
    bool have_masks = false;

    explicit PackedPerms(const std::vector<Permutation>& vertices) {
        if (vertices.empty()) return;
        const GroundSet& ground = vertices.front().ground();
        n = ground.size();
        have_masks = n <= 64;
        pos.resize(vertices.size() * static_cast<std::size_t>(n));
        mask.assign(vertices.size(), 0);
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            for (int i = 0; i < n; ++i) {
                int j = ground.index_of(vertices[v].image_at(i));
                pos[v * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)] =
                    static_cast<std::int32_t>(j);
                if (have_masks && j != i) mask[v] |= 1ull << i;
            }
        }
    }

    bool commute(std::size_t u, std::size_t v) const {
        if (have_masks && (mask[u] & mask[v]) == 0) return true;
        const std::int32_t* pu = pos.data() + u * static_cast<std::size_t>(n);
        const std::int32_t* pv = pos.data() + v * static_cast<std::size_t>(n);
        for (int i = 0; i < n; ++i)
            if (pu[pv[i]] != pv[pu[i]]) return false;
        return true;
    }
};

template <typename Adjacent>
std::vector<Edge> pair_scan_serial(int count, Adjacent&& adjacent) {
    std::vector<Edge> edges;
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
            if (adjacent(i, j))
                edges.emplace_back(i, j);
    return edges;
}

template <typename Adjacent>
std::vector<Edge> pair_scan_parallel(int count, int threads, Adjacent&& adjacent) {
    std::vector<std::vector<Edge>> rows(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
    for (int i = 0; i < count; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < count; ++j)
            if (adjacent(i, j))
                row.emplace_back(i, j);
    }
    std::vector<Edge> edges;
    for (auto& row : rows) edges.insert(edges.end(), row.begin(), row.end());
    return edges;
}

bool subsets_disjoint(const std::vector<Label>& a, const std::vector<Label>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return false;
        if (a[i] < b[j]) ++i; else ++j;
    }
    return true;
}

}  // namespace

std::vector<Edge> commuting_edges_serial(const std::vector<Permutation>& vertices) {
    PackedPerms packed(vertices);
    return pair_scan_serial(static_cast<int>(vertices.size()), [&](int i, int j) {
        return packed.commute(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    });
}

std::vector<Edge> commuting_edges_parallel(const std::vector<Permutation>& vertices,
                                           int threads) {
    PackedPerms packed(vertices);
    return pair_scan_parallel(static_cast<int>(vertices.size()), threads, [&](int i, int j) {
        return packed.commute(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    });
}

std::vector<Edge> disjointness_edges_serial(const std::vector<std::vector<Label>>& vertices) {
    return pair_scan_serial(static_cast<int>(vertices.size()), [&](int i, int j) {
        return subsets_disjoint(vertices[static_cast<std::size_t>(i)],
                                vertices[static_cast<std::size_t>(j)]);
    });
}

std::vector<Edge> disjointness_edges_parallel(const std::vector<std::vector<Label>>& vertices,
                                              int threads) {
    return pair_scan_parallel(static_cast<int>(vertices.size()), threads, [&](int i, int j) {
        return subsets_disjoint(vertices[static_cast<std::size_t>(i)],
                                vertices[static_cast<std::size_t>(j)]);
    });
}

LabeledGraph build_commuting_graph(const GroundSet& ground, int p, CycleBound a, int threads) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    LabeledGraph g;
    g.ground_ = ground;
    g.kind_ = VertexKind::BoundedPElement;
    g.p_ = p;
    g.a_ = a.effective(ground.size(), p);
    g.unbounded_ = a.is_unbounded();
    g.perm_vertices_ = bounded_p_elements(ground, p, g.a_);
    g.finish_edges(threads > 1 ? commuting_edges_parallel(g.perm_vertices_, threads)
                               : commuting_edges_serial(g.perm_vertices_));
    return g;
}

LabeledGraph build_kneser_graph(const GroundSet& ground, int p, int threads) {
    if (p < 1) throw std::invalid_argument("subset size must be positive");
    LabeledGraph g;
    g.ground_ = ground;
    g.kind_ = VertexKind::PSubset;
    g.p_ = p;
    g.a_ = 0;
    // subsets in lexicographic order
    std::vector<std::vector<Label>> vertices;
    if (ground.size() >= p) {
        const auto& labels = ground.labels();
        std::vector<int> comb(static_cast<std::size_t>(p));
        std::iota(comb.begin(), comb.end(), 0);
        while (true) {
            std::vector<Label> subset;
            subset.reserve(static_cast<std::size_t>(p));
            for (int c : comb) subset.push_back(labels[static_cast<std::size_t>(c)]);
            vertices.push_back(std::move(subset));
            int i = p - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == ground.size() - p + i) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (std::size_t k = static_cast<std::size_t>(i) + 1; k < comb.size(); ++k)
                comb[k] = comb[k - 1] + 1;
        }
    }
    g.subset_vertices_ = std::move(vertices);
    g.finish_edges(threads > 1 ? disjointness_edges_parallel(g.subset_vertices_, threads)
                               : disjointness_edges_serial(g.subset_vertices_));
    return g;
}

int component_count(const LabeledGraph& g) {
    int n = g.vertex_count();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    int components = n;
    for (const auto& [i, j] : g.edges()) {
        int ri = find(i), rj = find(j);
        if (ri != rj) {
            parent[static_cast<std::size_t>(ri)] = rj;
            --components;
        }
    }
    return components;
}

namespace {

struct CliqueSearch {
    const LabeledGraph& g;
    int n;
    int blocks;
    std::vector<int> best;
    std::vector<int> current;

    int lowest_bit(const std::vector<std::uint64_t>& bits) const {
        for (int b = 0; b < blocks; ++b)
            if (bits[static_cast<std::size_t>(b)])
                return b * 64 + std::countr_zero(bits[static_cast<std::size_t>(b)]);
        return -1;
    }

    void expand(std::vector<std::uint64_t>& candidates, int candidate_count) {
        if (candidate_count == 0) {
            if (current.size() > best.size()) best = current;
            return;
        }
        // Greedy colouring: vertices within a colour class are pairwise
        // non-adjacent, so a clique meets each class at most once and the
        // colour number bounds what a branch can still reach.
        std::vector<int> order;
        std::vector<int> colors;
        order.reserve(static_cast<std::size_t>(candidate_count));
        colors.reserve(static_cast<std::size_t>(candidate_count));
        {
            std::vector<std::uint64_t> uncolored = candidates;
            int color = 0;
            int left = candidate_count;
            while (left > 0) {
                ++color;
                std::vector<std::uint64_t> admissible = uncolored;
                int v;
                while ((v = lowest_bit(admissible)) >= 0) {
                    order.push_back(v);
                    colors.push_back(color);
                    uncolored[static_cast<std::size_t>(v / 64)] &= ~(1ull << (v % 64));
                    --left;
                    const std::uint64_t* row = g.adjacency_row(v);
                    for (int b = 0; b < blocks; ++b)
                        admissible[static_cast<std::size_t>(b)] &=
                            ~row[static_cast<std::size_t>(b)];
                    admissible[static_cast<std::size_t>(v / 64)] &= ~(1ull << (v % 64));
                }
            }
        }
        // Branch highest colour first.
        for (int idx = static_cast<int>(order.size()) - 1; idx >= 0; --idx) {
            int v = order[static_cast<std::size_t>(idx)];
            if (static_cast<int>(current.size()) + colors[static_cast<std::size_t>(idx)] <=
                static_cast<int>(best.size()))
                return;
            std::vector<std::uint64_t> next(static_cast<std::size_t>(blocks));
            const std::uint64_t* row = g.adjacency_row(v);
            int next_count = 0;
            for (int b = 0; b < blocks; ++b) {
                next[static_cast<std::size_t>(b)] =
                    candidates[static_cast<std::size_t>(b)] & row[static_cast<std::size_t>(b)];
                next_count += std::popcount(next[static_cast<std::size_t>(b)]);
            }
            current.push_back(v);
            expand(next, next_count);
            current.pop_back();
            candidates[static_cast<std::size_t>(v / 64)] &= ~(1ull << (v % 64));
        }
    }
};

}  // namespace

std::vector<int> max_clique(const LabeledGraph& g) {
    int n = g.vertex_count();
    if (n == 0) return {};
    CliqueSearch search{g, n, g.blocks_per_row(), {}, {}};
    std::vector<std::uint64_t> all(static_cast<std::size_t>(g.blocks_per_row()), 0);
    for (int v = 0; v < n; ++v)
        all[static_cast<std::size_t>(v / 64)] |= 1ull << (v % 64);
    search.expand(all, n);
    std::sort(search.best.begin(), search.best.end());
    return search.best;
}

nlohmann::json graph_json(const LabeledGraph& g) {
    nlohmann::json j;
    j["n"] = g.ground().size();
    j["p"] = g.p();
    if (g.kind() == VertexKind::BoundedPElement)
        j["a"] = g.a();
    else
        j["a"] = nullptr;
    j["kind"] = g.kind() == VertexKind::BoundedPElement ? "commuting" : "kneser";
    nlohmann::json vertices = nlohmann::json::array();
    if (g.kind() == VertexKind::BoundedPElement) {
        for (const auto& v : g.perm_vertices()) vertices.push_back(cycle_string(v));
    } else {
        for (const auto& v : g.subset_vertices()) vertices.push_back(v);
    }
    j["vertices"] = std::move(vertices);
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
    j["edges"] = std::move(edges);
    return j;
}

}  // namespace qlab
