#include "qlab/coreduce.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace qlab {

namespace {

// Cells of the augmented complex in one flat id space: level 0 is the
// augmentation cell, level k+1 holds the k-simplices.
struct CellComplex {
    int levels = 0;                       // k_max + 3 including the augmentation
    std::vector<std::int64_t> offset;     // offset[L]..offset[L+1) are level-L cells
    std::vector<std::vector<std::pair<std::int64_t, int>>> bd;  // (face id, sign)
    std::vector<std::vector<std::int64_t>> cofaces;
    std::vector<char> alive;
    std::vector<int> live_bd;

    std::int64_t total() const { return offset.back(); }
    int level_of(std::int64_t id) const {
        int L = 0;
        while (offset[static_cast<std::size_t>(L + 1)] <= id) ++L;
        return L;
    }
};

CellComplex build_cells(const CliqueComplex& cx, int k_max,
                        const std::vector<SparseIntMatrix>& boundaries) {
    CellComplex cells;
    cells.levels = k_max + 3;
    cells.offset.assign(static_cast<std::size_t>(cells.levels) + 1, 0);
    const bool has_aug = cx.count(0) > 0;
    cells.offset[1] = has_aug ? 1 : 0;
    for (int k = 0; k <= k_max + 1; ++k)
        cells.offset[static_cast<std::size_t>(k) + 2] =
            cells.offset[static_cast<std::size_t>(k) + 1] + cx.count(k);
    const std::int64_t total = cells.total();
    cells.bd.assign(static_cast<std::size_t>(total), {});
    cells.cofaces.assign(static_cast<std::size_t>(total), {});
    cells.alive.assign(static_cast<std::size_t>(total), 1);
    for (int k = 0; k <= k_max + 1; ++k) {
        const std::int64_t row_base = cells.offset[static_cast<std::size_t>(k)];
        const std::int64_t col_base = cells.offset[static_cast<std::size_t>(k) + 1];
        for (const Triplet& t : boundaries[static_cast<std::size_t>(k)].entries()) {
            std::int64_t face = row_base + t.row;
            std::int64_t cell = col_base + t.col;
            cells.bd[static_cast<std::size_t>(cell)].emplace_back(
                face, static_cast<int>(t.value));
            cells.cofaces[static_cast<std::size_t>(face)].push_back(cell);
        }
    }
    cells.live_bd.assign(static_cast<std::size_t>(total), 0);
    for (std::int64_t c = 0; c < total; ++c)
        cells.live_bd[static_cast<std::size_t>(c)] =
            static_cast<int>(cells.bd[static_cast<std::size_t>(c)].size());
    return cells;
}

void run_coreduction(CellComplex& cells, std::int64_t& removed_pairs) {
    std::deque<std::int64_t> queue;
    for (std::int64_t c = 0; c < cells.total(); ++c)
        if (cells.live_bd[static_cast<std::size_t>(c)] == 1) queue.push_back(c);
    auto kill = [&](std::int64_t cell) {
        cells.alive[static_cast<std::size_t>(cell)] = 0;
        for (std::int64_t up : cells.cofaces[static_cast<std::size_t>(cell)]) {
            if (!cells.alive[static_cast<std::size_t>(up)]) continue;
            if (--cells.live_bd[static_cast<std::size_t>(up)] == 1) queue.push_back(up);
        }
    };
    while (!queue.empty()) {
        std::int64_t b = queue.front();
        queue.pop_front();
        if (!cells.alive[static_cast<std::size_t>(b)] ||
            cells.live_bd[static_cast<std::size_t>(b)] != 1)
            continue;
        std::int64_t a = -1;
        int sign = 0;
        for (const auto& [face, s] : cells.bd[static_cast<std::size_t>(b)]) {
            if (cells.alive[static_cast<std::size_t>(face)]) {
                a = face;
                sign = s;
                break;
            }
        }
        if (a < 0) throw std::logic_error("live boundary count out of sync");
        if (sign != 1 && sign != -1) continue;  // non-unit entry, not reducible
        kill(b);
        kill(a);
        ++removed_pairs;
    }
}

}  // namespace

ReducedSegment coreduce(const CliqueComplex& cx, int k_max,
                        std::span<const std::vector<Int>> carried, int carry_degree,
                        const BoundarySource& source) {
    if (k_max < 0 || k_max > cx.max_dim())
        throw std::invalid_argument("coreduction degree out of stored range");
    std::vector<SparseIntMatrix> boundaries;
    boundaries.reserve(static_cast<std::size_t>(k_max) + 2);
    for (int k = 0; k <= k_max + 1; ++k)
        boundaries.push_back(source ? source(cx, k) : boundary_matrix(cx, k, /*reduced=*/true));
    for (const auto& z : carried) {
        if (carry_degree < 0 || carry_degree > k_max)
            throw std::invalid_argument("carried chains outside the reduced range");
        if (static_cast<std::int64_t>(z.size()) != cx.count(carry_degree))
            throw std::invalid_argument("carried chain has wrong length");
        auto image = boundaries[static_cast<std::size_t>(carry_degree)].apply(z);
        for (const Int& v : image)
            if (v != 0) throw std::invalid_argument("carried chain is not a cycle");
    }

    CellComplex cells = build_cells(cx, k_max, boundaries);
    ReducedSegment seg;
    seg.k_max = k_max;
    seg.carry_degree = carry_degree;
    run_coreduction(cells, seg.removed_pairs);

    // Re-index survivors per level and restrict the boundary matrices.
    std::vector<std::vector<std::int64_t>> new_index(static_cast<std::size_t>(cells.levels));
    std::vector<std::int64_t> level_count(static_cast<std::size_t>(cells.levels), 0);
    for (int L = 0; L < cells.levels; ++L) {
        auto& index = new_index[static_cast<std::size_t>(L)];
        index.assign(
            static_cast<std::size_t>(cells.offset[static_cast<std::size_t>(L) + 1] -
                                     cells.offset[static_cast<std::size_t>(L)]),
            -1);
        for (std::int64_t id = cells.offset[static_cast<std::size_t>(L)];
             id < cells.offset[static_cast<std::size_t>(L) + 1]; ++id)
            if (cells.alive[static_cast<std::size_t>(id)])
                index[static_cast<std::size_t>(id - cells.offset[static_cast<std::size_t>(L)])] =
                    level_count[static_cast<std::size_t>(L)]++;
    }
    seg.dims.assign(static_cast<std::size_t>(k_max) + 2, 0);
    for (int k = 0; k <= k_max + 1; ++k)
        seg.dims[static_cast<std::size_t>(k)] = level_count[static_cast<std::size_t>(k) + 1];
    seg.boundaries.reserve(static_cast<std::size_t>(k_max) + 2);
    for (int k = 0; k <= k_max + 1; ++k) {
        const auto& face_index = new_index[static_cast<std::size_t>(k)];
        const auto& cell_index = new_index[static_cast<std::size_t>(k) + 1];
        std::vector<Triplet> entries;
        for (const Triplet& t : boundaries[static_cast<std::size_t>(k)].entries()) {
            std::int64_t r = face_index[static_cast<std::size_t>(t.row)];
            std::int64_t c = cell_index[static_cast<std::size_t>(t.col)];
            if (r >= 0 && c >= 0) entries.push_back({r, c, t.value});
        }
        seg.boundaries.emplace_back(level_count[static_cast<std::size_t>(k)],
                                    level_count[static_cast<std::size_t>(k) + 1],
                                    std::move(entries));
    }
    if (carry_degree >= 0) {
        const auto& index = new_index[static_cast<std::size_t>(carry_degree) + 1];
        for (const auto& z : carried) {
            std::vector<Int> reduced(
                static_cast<std::size_t>(seg.dims[static_cast<std::size_t>(carry_degree)]),
                Int(0));
            for (std::size_t i = 0; i < z.size(); ++i)
                if (index[i] >= 0) reduced[static_cast<std::size_t>(index[i])] = z[i];
            seg.carried.push_back(std::move(reduced));
        }
    }
    return seg;
}

std::vector<HomologyGroup> complex_homology(const CliqueComplex& cx, int k_min, int k_max,
                                            const HomologyOptions& options,
                                            const BoundarySource& source) {
    if (k_min < 0 || k_min > k_max) throw std::invalid_argument("bad degree range");
    if (k_max > cx.max_dim())
        throw std::invalid_argument("degree exceeds the stored dimension cap");

    std::vector<std::int64_t> dims;
    std::vector<SparseIntMatrix> boundaries;
    if (options.coreduce) {
        ReducedSegment seg = coreduce(cx, k_max, {}, -1, source);
        dims = std::move(seg.dims);
        boundaries = std::move(seg.boundaries);
    } else {
        for (int k = 0; k <= k_max + 1; ++k) {
            dims.push_back(cx.count(k));
            boundaries.push_back(source ? source(cx, k)
                                        : boundary_matrix(cx, k, /*reduced=*/true));
        }
    }
    for (int k = 1; k <= k_max + 1; ++k)
        if (!multiply(boundaries[static_cast<std::size_t>(k - 1)],
                      boundaries[static_cast<std::size_t>(k)])
                 .is_zero())
            throw std::logic_error("boundary composition is nonzero");

    // Invariant factors are consumed for degrees k_min..k_max, i.e. from the
    // boundaries k_min+1..k_max+1; the bottom matrix only contributes rank.
    std::vector<std::int64_t> ranks(static_cast<std::size_t>(k_max) + 2, 0);
    std::vector<std::vector<Int>> factors(static_cast<std::size_t>(k_max) + 2);
    for (int k = k_min; k <= k_max + 1; ++k) {
        const SparseIntMatrix& b = boundaries[static_cast<std::size_t>(k)];
        if (k == k_min && options.rank_fast_path) {
            ranks[static_cast<std::size_t>(k)] = integer_rank(b, options.budget);
        } else {
            SNFResult snf = smith_normal_form(b, {.budget = options.budget});
            ranks[static_cast<std::size_t>(k)] = snf.rank;
            factors[static_cast<std::size_t>(k)] = std::move(snf.invariant_factors);
        }
    }
    std::vector<HomologyGroup> out;
    for (int k = k_min; k <= k_max; ++k) {
        HomologyGroup g;
        g.betti = dims[static_cast<std::size_t>(k)] - ranks[static_cast<std::size_t>(k)] -
                  ranks[static_cast<std::size_t>(k) + 1];
        if (g.betti < 0) throw std::logic_error("negative betti number");
        for (const Int& d : factors[static_cast<std::size_t>(k) + 1])
            if (d > 1) g.torsion.push_back(d);
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

SparseIntMatrix hstack(const SparseIntMatrix& left, const SparseIntMatrix& right) {
    if (left.rows() != right.rows()) throw std::invalid_argument("hstack row mismatch");
    std::vector<Triplet> entries = left.entries();
    for (const Triplet& t : right.entries())
        entries.push_back({t.row, t.col + left.cols(), t.value});
    return SparseIntMatrix(left.rows(), left.cols() + right.cols(), std::move(entries));
}

}  // namespace

CycleClassification classify_cycles(const CliqueComplex& cx, int k,
                                    const std::vector<std::vector<Int>>& cycles,
                                    const Budget& budget) {
    ReducedSegment seg = coreduce(cx, k, cycles, k);
    const SparseIntMatrix& bd_k = seg.boundaries[static_cast<std::size_t>(k)];
    const SparseIntMatrix& bd_k1 = seg.boundaries[static_cast<std::size_t>(k) + 1];
    CycleClassification out;
    out.core_basis = homology_basis(seg.dims[static_cast<std::size_t>(k)], bd_k, bd_k1,
                                    {.budget = budget});
    // Generators as columns, torsion first to match the basis order.
    std::vector<Triplet> gen_entries;
    std::int64_t col = 0;
    auto add_column = [&](const std::vector<Int>& v) {
        for (std::size_t r = 0; r < v.size(); ++r)
            if (v[r] != 0) gen_entries.push_back({static_cast<std::int64_t>(r), col, v[r]});
        ++col;
    };
    for (const auto& [cycle, order] : out.core_basis.torsion_generators) add_column(cycle);
    for (const auto& cycle : out.core_basis.free_generators) add_column(cycle);
    SparseIntMatrix generators(seg.dims[static_cast<std::size_t>(k)], col,
                               std::move(gen_entries));
    SparseIntMatrix span = hstack(generators, bd_k1);
    for (const auto& z : seg.carried) {
        auto residue = bd_k.apply(z);
        for (const Int& v : residue)
            if (v != 0) throw std::logic_error("carried chain lost the cycle property");
    }
    std::vector<SolveResult> direct = solve_in_image_many(bd_k1, seg.carried, budget);
    std::vector<SolveResult> mixed;
    if (col > 0) mixed = solve_in_image_many(span, seg.carried, budget);
    for (std::size_t i = 0; i < seg.carried.size(); ++i) {
        out.is_boundary.push_back(direct[i].solvable);
        if (col == 0) {
            out.coordinates.emplace_back();
            continue;
        }
        if (!mixed[i].solvable)
            throw std::logic_error("cycle does not lie in the span of the homology basis");
        out.coordinates.emplace_back(mixed[i].witness.begin(), mixed[i].witness.begin() + col);
    }
    return out;
}

}  // namespace qlab
