#include "qlab/complex.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qlab {

CliqueComplex::CliqueComplex(std::shared_ptr<const LabeledGraph> graph, int max_dim,
                             std::vector<std::vector<std::int32_t>> skeleton)
    : graph_(std::move(graph)), max_dim_(max_dim), skeleton_(std::move(skeleton)) {
    if (max_dim_ < 0) throw std::invalid_argument("max_dim must be nonnegative");
    skeleton_.resize(static_cast<std::size_t>(max_dim_) + 2);
}

std::int64_t CliqueComplex::count(int k) const {
    if (k < 0 || k > top_dim()) return 0;
    return static_cast<std::int64_t>(skeleton_[static_cast<std::size_t>(k)].size()) / (k + 1);
}

std::span<const std::int32_t> CliqueComplex::simplex(int k, std::int64_t index) const {
    const auto& level = skeleton_[static_cast<std::size_t>(k)];
    return {level.data() + index * (k + 1), static_cast<std::size_t>(k + 1)};
}

const std::vector<std::int32_t>& CliqueComplex::flat(int k) const {
    return skeleton_[static_cast<std::size_t>(k)];
}

std::int64_t CliqueComplex::index_of(int k, std::span<const std::int32_t> vertices) const {
    if (k < 0 || k > top_dim() || static_cast<int>(vertices.size()) != k + 1) return -1;
    std::int64_t lo = 0, hi = count(k);
    while (lo < hi) {
        std::int64_t mid = (lo + hi) / 2;
        auto s = simplex(k, mid);
        if (std::lexicographical_compare(s.begin(), s.end(), vertices.begin(), vertices.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo < count(k)) {
        auto s = simplex(k, lo);
        if (std::equal(s.begin(), s.end(), vertices.begin())) return lo;
    }
    return -1;
}

int CliqueComplex::top_nonempty_dim() const {
    for (int k = top_dim(); k >= 0; --k)
        if (count(k) > 0) return k;
    return -1;
}

namespace {

// Depth-first clique extension from one root, ascending vertex order, which
// emits every level in lexicographic order.
struct RootEnumeration {
    const LabeledGraph& g;
    int max_size;
    int blocks;
    std::vector<std::vector<std::int32_t>>& sink;  // sink[size-1], flat tuples
    std::vector<std::int32_t> clique;
    std::vector<std::vector<std::uint64_t>> cand_stack;
    std::int64_t emitted = 0;

    void emit() {
        auto& level = sink[clique.size() - 1];
        level.insert(level.end(), clique.begin(), clique.end());
        ++emitted;
    }

    void extend(int depth) {
        emit();
        if (static_cast<int>(clique.size()) >= max_size) return;
        auto& cand = cand_stack[static_cast<std::size_t>(depth)];
        auto& next = cand_stack[static_cast<std::size_t>(depth) + 1];
        for (int b = 0; b < blocks; ++b) {
            std::uint64_t word = cand[static_cast<std::size_t>(b)];
            while (word) {
                int v = b * 64 + std::countr_zero(word);
                word &= word - 1;
                const std::uint64_t* row = g.adjacency_row(v);
                // candidates after v that are adjacent to everything so far
                for (int b2 = 0; b2 < blocks; ++b2)
                    next[static_cast<std::size_t>(b2)] =
                        cand[static_cast<std::size_t>(b2)] & row[static_cast<std::size_t>(b2)];
                next[static_cast<std::size_t>(b)] &=
                    (v % 64 == 63) ? 0ull : ~((2ull << (v % 64)) - 1);
                for (int b2 = 0; b2 < b; ++b2) next[static_cast<std::size_t>(b2)] = 0;
                clique.push_back(static_cast<std::int32_t>(v));
                extend(depth + 1);
                clique.pop_back();
            }
        }
    }

    void run(int root) {
        clique.assign(1, static_cast<std::int32_t>(root));
        auto& cand = cand_stack[0];
        const std::uint64_t* row = g.adjacency_row(root);
        for (int b = 0; b < blocks; ++b) cand[static_cast<std::size_t>(b)] = row[static_cast<std::size_t>(b)];
        // restrict to vertices after the root
        cand[static_cast<std::size_t>(root / 64)] &=
            (root % 64 == 63) ? 0ull : ~((2ull << (root % 64)) - 1);
        for (int b = 0; b < root / 64; ++b) cand[static_cast<std::size_t>(b)] = 0;
        extend(0);
    }
};

RootEnumeration make_enumeration(const LabeledGraph& g, int max_size,
                                 std::vector<std::vector<std::int32_t>>& sink) {
    RootEnumeration e{g, max_size, g.blocks_per_row(), sink, {}, {}, 0};
    e.cand_stack.assign(static_cast<std::size_t>(max_size) + 1,
                        std::vector<std::uint64_t>(static_cast<std::size_t>(g.blocks_per_row()), 0));
    return e;
}

[[noreturn]] void throw_clique_budget(const std::vector<std::vector<std::int32_t>>& levels,
                                      const Budget& budget) {
    std::ostringstream msg;
    msg << "budget exceeded: clique enumeration passed " << budget.max_entries
        << " stored simplices; counts so far:";
    for (std::size_t k = 0; k < levels.size(); ++k)
        msg << " dim" << k << "=" << levels[k].size() / (k + 1);
    throw BudgetError(msg.str());
}

}  // namespace

std::vector<std::vector<std::int32_t>> enumerate_cliques_serial(const LabeledGraph& g,
                                                                int max_size,
                                                                const Budget& budget) {
    std::vector<std::vector<std::int32_t>> levels(static_cast<std::size_t>(max_size));
    if (g.vertex_count() == 0) return levels;
    auto e = make_enumeration(g, max_size, levels);
    std::int64_t total = 0;
    for (int root = 0; root < g.vertex_count(); ++root) {
        e.run(root);
        total += std::exchange(e.emitted, 0);
        if (total > budget.max_entries) throw_clique_budget(levels, budget);
    }
    return levels;
}

std::vector<std::vector<std::int32_t>> enumerate_cliques_parallel(const LabeledGraph& g,
                                                                  int max_size,
                                                                  const Budget& budget,
                                                                  int threads) {
    const int n = g.vertex_count();
    std::vector<std::vector<std::vector<std::int32_t>>> per_root(static_cast<std::size_t>(n));
    std::atomic<std::int64_t> total{0};
    std::atomic<bool> over{false};
#pragma omp parallel num_threads(threads)
    {
        std::vector<std::vector<std::int32_t>> local(static_cast<std::size_t>(max_size));
        auto e = make_enumeration(g, max_size, local);
#pragma omp for schedule(dynamic, 4)
        for (int root = 0; root < n; ++root) {
            if (over.load(std::memory_order_relaxed)) continue;
            for (auto& level : local) level.clear();
            e.run(root);
            per_root[static_cast<std::size_t>(root)] = local;
            if (total.fetch_add(std::exchange(e.emitted, 0)) > budget.max_entries)
                over.store(true, std::memory_order_relaxed);
        }
    }
    std::vector<std::vector<std::int32_t>> levels(static_cast<std::size_t>(max_size));
    for (auto& chunk : per_root)
        for (std::size_t k = 0; k < chunk.size(); ++k)
            levels[k].insert(levels[k].end(), chunk[k].begin(), chunk[k].end());
    if (over.load()) throw_clique_budget(levels, budget);
    return levels;
}

CliqueComplex clique_complex(std::shared_ptr<const LabeledGraph> graph, int max_dim,
                             const Budget& budget, int threads) {
    if (max_dim < 0) throw std::invalid_argument("max_dim must be nonnegative");
    const int max_size = max_dim + 2;
    auto levels = threads > 1 ? enumerate_cliques_parallel(*graph, max_size, budget, threads)
                              : enumerate_cliques_serial(*graph, max_size, budget);
    return CliqueComplex(std::move(graph), max_dim, std::move(levels));
}

SparseIntMatrix boundary_matrix(const CliqueComplex& cx, int k, bool reduced) {
    if (k < 0 || k > cx.top_dim()) throw std::invalid_argument("boundary degree out of range");
    const std::int64_t cols = cx.count(k);
    if (k == 0) {
        if (!reduced) return SparseIntMatrix(0, cols);
        std::vector<Triplet> ones;
        ones.reserve(static_cast<std::size_t>(cols));
        for (std::int64_t c = 0; c < cols; ++c) ones.push_back({0, c, 1});
        return SparseIntMatrix(1, cols, std::move(ones));
    }
    const std::int64_t rows = cx.count(k - 1);
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(cols) * (k + 1));
    std::vector<std::int32_t> facet(static_cast<std::size_t>(k));
    for (std::int64_t c = 0; c < cols; ++c) {
        auto s = cx.simplex(k, c);
        for (int drop = 0; drop <= k; ++drop) {
            for (int i = 0, j = 0; i <= k; ++i)
                if (i != drop) facet[static_cast<std::size_t>(j++)] = s[static_cast<std::size_t>(i)];
            std::int64_t r = cx.index_of(k - 1, facet);
            if (r < 0) throw std::logic_error("missing facet: complex not closed under faces");
            entries.push_back({r, c, (drop % 2 == 0) ? 1 : -1});
        }
    }
    return SparseIntMatrix(rows, cols, std::move(entries));
}

GroundSet simplex_support(const CliqueComplex& cx, int k, std::int64_t index) {
    auto s = cx.simplex(k, index);
    GroundSet acc;
    const LabeledGraph& g = cx.graph();
    for (std::int32_t v : s) {
        if (g.kind() == VertexKind::BoundedPElement)
            acc = set_union(acc, support(g.perm_vertices()[static_cast<std::size_t>(v)]));
        else
            acc = set_union(acc, GroundSet(g.subset_vertices()[static_cast<std::size_t>(v)]));
    }
    return acc;
}

void write_complex_file(const CliqueComplex& cx, std::ostream& out) {
    out << "qlab-complex v1 " << cx.graph().ground().size() << ' ' << cx.graph().p() << ' '
        << cx.graph().a() << ' ' << cx.max_dim() << '\n';
    for (int k = 0; k <= cx.top_dim(); ++k) {
        for (std::int64_t i = 0; i < cx.count(k); ++i) {
            out << k << ':';
            for (std::int32_t v : cx.simplex(k, i)) out << ' ' << v;
            out << '\n';
        }
    }
}

ComplexFile read_complex_file(std::istream& in) {
    std::string magic, version;
    ComplexFile file;
    if (!(in >> magic >> version >> file.n >> file.p >> file.a >> file.max_dim) ||
        magic != "qlab-complex" || version != "v1")
        throw std::runtime_error("not a qlab-complex v1 file");
    file.skeleton.assign(static_cast<std::size_t>(file.max_dim) + 2, {});
    std::string tag;
    while (in >> tag) {
        if (tag.empty() || tag.back() != ':')
            throw std::runtime_error("malformed simplex line in qlab-complex file");
        int k = std::stoi(tag.substr(0, tag.size() - 1));
        if (k < 0 || k > file.max_dim + 1)
            throw std::runtime_error("simplex dimension out of range in qlab-complex file");
        for (int i = 0; i <= k; ++i) {
            std::int32_t v;
            if (!(in >> v)) throw std::runtime_error("truncated qlab-complex file");
            file.skeleton[static_cast<std::size_t>(k)].push_back(v);
        }
    }
    return file;
}

}  // namespace qlab
