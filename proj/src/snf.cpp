#include "qlab/snf.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qlab {

namespace {

// Thrown inside the machine-word lane when an operation would overflow;
// the working state is untouched at that point, so the driver can copy it
// into the arbitrary-precision lane and continue.
struct PromoteSignal {};

inline std::uint64_t uabs64(std::int64_t v) {
    return v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
}

// out = a - q*b; true if the result does not fit (INT64_MIN is excluded so
// negation stays safe).
inline bool mulsub_overflows(std::int64_t a, std::int64_t q, std::int64_t b,
                             std::int64_t& out) {
    std::int64_t t;
    if (__builtin_mul_overflow(q, b, &t)) return true;
    if (__builtin_sub_overflow(a, t, &out)) return true;
    return out == std::numeric_limits<std::int64_t>::min();
}

std::int64_t bit_length(const Int& v) {
    if (v == 0) return 0;
    return static_cast<std::int64_t>(boost::multiprecision::msb(abs(v))) + 1;
}

template <typename T>
struct Dense {
    std::int64_t rows = 0, cols = 0;
    std::vector<T> cells;

    void init(std::int64_t r, std::int64_t c) {
        rows = r;
        cols = c;
        cells.assign(static_cast<std::size_t>(r * c), T(0));
    }
    void init_identity(std::int64_t n) {
        init(n, n);
        for (std::int64_t i = 0; i < n; ++i) at(i, i) = T(1);
    }
    T* row(std::int64_t r) { return cells.data() + r * cols; }
    const T* row(std::int64_t r) const { return cells.data() + r * cols; }
    T& at(std::int64_t r, std::int64_t c) { return cells[static_cast<std::size_t>(r * cols + c)]; }
    const T& at(std::int64_t r, std::int64_t c) const {
        return cells[static_cast<std::size_t>(r * cols + c)];
    }
};

template <typename T>
struct ElimState {
    Dense<T> d, u, uinv, v, vinv;
    std::vector<std::uint64_t> dmax;  // per-row bound on |entry|, word lane only
    bool track = false;
    bool rank_only = false;
    std::int64_t resume = 0;
    Budget budget{};

    std::int64_t rows() const { return d.rows; }
    std::int64_t cols() const { return d.cols; }
};

constexpr std::uint64_t kSafeBound = std::uint64_t(1) << 62;

template <typename T>
void check_bits(const ElimState<T>& st, const T& value) {
    if constexpr (std::is_same_v<T, Int>) {
        if (bit_length(value) > st.budget.max_bits) {
            std::ostringstream msg;
            msg << "budget exceeded: matrix entry reached " << bit_length(value)
                << " bits (ceiling " << st.budget.max_bits << ")";
            throw BudgetError(msg.str());
        }
    } else {
        (void)st;
        (void)value;
    }
}

// row dst -= q * row src over D (columns from..end), with the matching
// updates of U (same row op) and U^-1 (col src += q * col dst).
template <typename T>
void row_op(ElimState<T>& st, std::int64_t dst, std::int64_t src, T q, std::int64_t from) {
    T* pd = st.d.row(dst);
    const T* ps = st.d.row(src);
    const std::int64_t n = st.cols();
    if constexpr (std::is_same_v<T, std::int64_t>) {
        unsigned __int128 need =
            static_cast<unsigned __int128>(st.dmax[static_cast<std::size_t>(dst)]) +
            static_cast<unsigned __int128>(uabs64(q)) *
                st.dmax[static_cast<std::size_t>(src)];
        if (!st.track && need < kSafeBound) {
            for (std::int64_t c = from; c < n; ++c) pd[c] -= q * ps[c];
            st.dmax[static_cast<std::size_t>(dst)] = static_cast<std::uint64_t>(need);
            return;
        }
        // Verify every affected cell first so a promotion never sees a
        // half-applied operation.
        std::int64_t scratch;
        for (std::int64_t c = from; c < n; ++c)
            if (mulsub_overflows(pd[c], q, ps[c], scratch)) throw PromoteSignal{};
        if (st.track) {
            for (std::int64_t c = 0; c < st.u.cols; ++c)
                if (mulsub_overflows(st.u.at(dst, c), q, st.u.at(src, c), scratch))
                    throw PromoteSignal{};
            for (std::int64_t r = 0; r < st.uinv.rows; ++r)
                if (mulsub_overflows(st.uinv.at(r, src), -q, st.uinv.at(r, dst), scratch))
                    throw PromoteSignal{};
        }
        std::uint64_t rowmax = 0;
        for (std::int64_t c = from; c < n; ++c) {
            pd[c] -= q * ps[c];
            rowmax = std::max(rowmax, uabs64(pd[c]));
        }
        st.dmax[static_cast<std::size_t>(dst)] = rowmax;
        if (st.track) {
            for (std::int64_t c = 0; c < st.u.cols; ++c) st.u.at(dst, c) -= q * st.u.at(src, c);
            for (std::int64_t r = 0; r < st.uinv.rows; ++r)
                st.uinv.at(r, src) += q * st.uinv.at(r, dst);
        }
    } else {
        for (std::int64_t c = from; c < n; ++c) {
            pd[c] -= q * ps[c];
            check_bits(st, pd[c]);
        }
        if (st.track) {
            for (std::int64_t c = 0; c < st.u.cols; ++c) {
                st.u.at(dst, c) -= q * st.u.at(src, c);
                check_bits(st, st.u.at(dst, c));
            }
            for (std::int64_t r = 0; r < st.uinv.rows; ++r) {
                st.uinv.at(r, src) += q * st.uinv.at(r, dst);
                check_bits(st, st.uinv.at(r, src));
            }
        }
    }
}

// col dst -= q * col src over D (rows from..end, or the single pivot row when
// the source column is already clear below it), with V and V^-1 updates.
template <typename T>
void col_op(ElimState<T>& st, std::int64_t dst, std::int64_t src, T q, std::int64_t from,
            bool src_clear_below) {
    const std::int64_t m = st.rows();
    const std::int64_t last = src_clear_below ? from + 1 : m;
    if constexpr (std::is_same_v<T, std::int64_t>) {
        std::int64_t scratch;
        for (std::int64_t r = from; r < last; ++r)
            if (mulsub_overflows(st.d.at(r, dst), q, st.d.at(r, src), scratch))
                throw PromoteSignal{};
        if (st.track) {
            for (std::int64_t r = 0; r < st.v.rows; ++r)
                if (mulsub_overflows(st.v.at(r, dst), q, st.v.at(r, src), scratch))
                    throw PromoteSignal{};
            for (std::int64_t c = 0; c < st.vinv.cols; ++c)
                if (mulsub_overflows(st.vinv.at(src, c), -q, st.vinv.at(dst, c), scratch))
                    throw PromoteSignal{};
        }
        for (std::int64_t r = from; r < last; ++r) {
            st.d.at(r, dst) -= q * st.d.at(r, src);
            st.dmax[static_cast<std::size_t>(r)] =
                std::max(st.dmax[static_cast<std::size_t>(r)], uabs64(st.d.at(r, dst)));
        }
        if (st.track) {
            for (std::int64_t r = 0; r < st.v.rows; ++r) st.v.at(r, dst) -= q * st.v.at(r, src);
            for (std::int64_t c = 0; c < st.vinv.cols; ++c)
                st.vinv.at(src, c) += q * st.vinv.at(dst, c);
        }
    } else {
        for (std::int64_t r = from; r < last; ++r) {
            st.d.at(r, dst) -= q * st.d.at(r, src);
            check_bits(st, st.d.at(r, dst));
        }
        if (st.track) {
            for (std::int64_t r = 0; r < st.v.rows; ++r) {
                st.v.at(r, dst) -= q * st.v.at(r, src);
                check_bits(st, st.v.at(r, dst));
            }
            for (std::int64_t c = 0; c < st.vinv.cols; ++c) {
                st.vinv.at(src, c) += q * st.vinv.at(dst, c);
                check_bits(st, st.vinv.at(src, c));
            }
        }
    }
}

template <typename T>
void swap_rows(ElimState<T>& st, std::int64_t r1, std::int64_t r2) {
    if (r1 == r2) return;
    for (std::int64_t c = 0; c < st.cols(); ++c) std::swap(st.d.at(r1, c), st.d.at(r2, c));
    if constexpr (std::is_same_v<T, std::int64_t>)
        std::swap(st.dmax[static_cast<std::size_t>(r1)], st.dmax[static_cast<std::size_t>(r2)]);
    if (st.track) {
        for (std::int64_t c = 0; c < st.u.cols; ++c) std::swap(st.u.at(r1, c), st.u.at(r2, c));
        for (std::int64_t r = 0; r < st.uinv.rows; ++r)
            std::swap(st.uinv.at(r, r1), st.uinv.at(r, r2));
    }
}

template <typename T>
void swap_cols(ElimState<T>& st, std::int64_t c1, std::int64_t c2) {
    if (c1 == c2) return;
    for (std::int64_t r = 0; r < st.rows(); ++r) std::swap(st.d.at(r, c1), st.d.at(r, c2));
    if (st.track) {
        for (std::int64_t r = 0; r < st.v.rows; ++r) std::swap(st.v.at(r, c1), st.v.at(r, c2));
        for (std::int64_t c = 0; c < st.vinv.cols; ++c)
            std::swap(st.vinv.at(c1, c), st.vinv.at(c2, c));
    }
}

template <typename T>
void negate_row(ElimState<T>& st, std::int64_t r) {
    for (std::int64_t c = 0; c < st.cols(); ++c) st.d.at(r, c) = -st.d.at(r, c);
    if (st.track) {
        for (std::int64_t c = 0; c < st.u.cols; ++c) st.u.at(r, c) = -st.u.at(r, c);
        for (std::int64_t rr = 0; rr < st.uinv.rows; ++rr)
            st.uinv.at(rr, r) = -st.uinv.at(rr, r);
    }
}

template <typename T>
std::uint64_t entry_abs(const T& v) {
    if constexpr (std::is_same_v<T, std::int64_t>) {
        return uabs64(v);
    } else {
        return 0;  // unused
    }
}

// Smallest nonzero |entry| in the window [i..m) x [i..n); ties go to the
// first position in row-major order.  Returns false when the window is zero.
template <typename T>
bool move_min_to_pivot(ElimState<T>& st, std::int64_t i) {
    const std::int64_t m = st.rows(), n = st.cols();
    std::int64_t best_r = -1, best_c = -1;
    if constexpr (std::is_same_v<T, std::int64_t>) {
        std::uint64_t best = 0;
        for (std::int64_t r = i; r < m && best != 1; ++r) {
            const T* row = st.d.row(r);
            for (std::int64_t c = i; c < n; ++c) {
                if (row[c] == 0) continue;
                std::uint64_t a = uabs64(row[c]);
                if (best == 0 || a < best) {
                    best = a;
                    best_r = r;
                    best_c = c;
                    if (a == 1) break;
                }
            }
        }
    } else {
        Int best = 0;
        for (std::int64_t r = i; r < m && best != 1; ++r) {
            const T* row = st.d.row(r);
            for (std::int64_t c = i; c < n; ++c) {
                if (row[c] == 0) continue;
                Int a = abs(row[c]);
                if (best == 0 || a < best) {
                    best = a;
                    best_r = r;
                    best_c = c;
                    if (a == 1) break;
                }
            }
        }
    }
    if (best_r < 0) return false;
    swap_rows(st, i, best_r);
    swap_cols(st, i, best_c);
    return true;
}

template <typename T>
std::int64_t eliminate(ElimState<T>& st) {
    const std::int64_t m = st.rows(), n = st.cols();
    std::int64_t i = st.resume;
    for (; i < std::min(m, n); ++i) {
        st.resume = i;
        if (!move_min_to_pivot(st, i)) return i;  // window is zero
        while (true) {
            bool col_clear = true;
            for (std::int64_t r = i + 1; r < m; ++r) {
                if (st.d.at(r, i) == 0) continue;
                T q = st.d.at(r, i) / st.d.at(i, i);
                if (q != 0) row_op(st, r, i, q, i);
                if (st.d.at(r, i) != 0) col_clear = false;
            }
            bool row_clear = true;
            for (std::int64_t c = i + 1; c < n; ++c) {
                if (st.d.at(i, c) == 0) continue;
                T q = st.d.at(i, c) / st.d.at(i, i);
                if (q != 0) col_op(st, c, i, q, i, col_clear);
                if (st.d.at(i, c) != 0) row_clear = false;
            }
            if (col_clear && row_clear) {
                bool pivot_is_unit;
                if constexpr (std::is_same_v<T, std::int64_t>)
                    pivot_is_unit = uabs64(st.d.at(i, i)) == 1;
                else
                    pivot_is_unit = abs(st.d.at(i, i)) == 1;
                if (st.rank_only || pivot_is_unit) break;
                // Divisibility pass: pull a violating row up and continue.
                std::int64_t bad_row = -1;
                for (std::int64_t r = i + 1; r < m && bad_row < 0; ++r)
                    for (std::int64_t c = i + 1; c < n; ++c)
                        if (st.d.at(r, c) % st.d.at(i, i) != 0) {
                            bad_row = r;
                            break;
                        }
                if (bad_row < 0) break;
                row_op(st, i, bad_row, T(-1), i);
                // fall through: pivot search restarts below
            }
            if (!move_min_to_pivot(st, i))
                throw std::logic_error("pivot vanished during reduction");
        }
        if (st.d.at(i, i) < 0) negate_row(st, i);
    }
    return i;
}

template <typename T>
SparseIntMatrix to_sparse(const Dense<T>& d) {
    std::vector<Triplet> entries;
    for (std::int64_t r = 0; r < d.rows; ++r)
        for (std::int64_t c = 0; c < d.cols; ++c)
            if (d.at(r, c) != 0) entries.push_back({r, c, Int(d.at(r, c))});
    return SparseIntMatrix(d.rows, d.cols, std::move(entries));
}

template <typename T>
SNFResult extract(ElimState<T>& st, std::int64_t rank) {
    SNFResult out;
    out.rank = rank;
    out.invariant_factors.reserve(static_cast<std::size_t>(rank));
    for (std::int64_t i = 0; i < rank; ++i) out.invariant_factors.emplace_back(st.d.at(i, i));
    if (!st.rank_only)
        for (std::int64_t i = 0; i + 1 < rank; ++i)
            if (out.invariant_factors[static_cast<std::size_t>(i + 1)] %
                    out.invariant_factors[static_cast<std::size_t>(i)] !=
                0)
                throw std::logic_error("divisibility chain violated");
    if (st.track) {
        out.U = to_sparse(st.u);
        out.U_inv = to_sparse(st.uinv);
        out.V = to_sparse(st.v);
        out.V_inv = to_sparse(st.vinv);
    }
    return out;
}

template <typename T>
void init_state(ElimState<T>& st, const SparseIntMatrix& a, bool track, bool rank_only,
                const Budget& budget) {
    st.track = track;
    st.rank_only = rank_only;
    st.budget = budget;
    st.d.init(a.rows(), a.cols());
    for (const Triplet& t : a.entries()) {
        if constexpr (std::is_same_v<T, std::int64_t>)
            st.d.at(t.row, t.col) = static_cast<std::int64_t>(t.value);
        else
            st.d.at(t.row, t.col) = t.value;
    }
    if constexpr (std::is_same_v<T, std::int64_t>) {
        st.dmax.assign(static_cast<std::size_t>(a.rows()), 0);
        for (const Triplet& t : a.entries())
            st.dmax[static_cast<std::size_t>(t.row)] = std::max(
                st.dmax[static_cast<std::size_t>(t.row)],
                uabs64(static_cast<std::int64_t>(t.value)));
    }
    if (track) {
        st.u.init_identity(a.rows());
        st.uinv.init_identity(a.rows());
        st.v.init_identity(a.cols());
        st.vinv.init_identity(a.cols());
    }
}

ElimState<Int> promote(const ElimState<std::int64_t>& st) {
    ElimState<Int> big;
    big.track = st.track;
    big.rank_only = st.rank_only;
    big.resume = st.resume;
    big.budget = st.budget;
    auto copy = [](const Dense<std::int64_t>& from, Dense<Int>& to) {
        to.init(from.rows, from.cols);
        for (std::size_t i = 0; i < from.cells.size(); ++i) to.cells[i] = Int(from.cells[i]);
    };
    copy(st.d, big.d);
    if (st.track) {
        copy(st.u, big.u);
        copy(st.uinv, big.uinv);
        copy(st.v, big.v);
        copy(st.vinv, big.vinv);
    }
    return big;
}

bool fits_word_lane(const SparseIntMatrix& a) {
    static const Int lo(std::numeric_limits<std::int64_t>::min());
    static const Int hi(std::numeric_limits<std::int64_t>::max());
    for (const Triplet& t : a.entries())
        if (t.value <= lo || t.value > hi) return false;
    return true;
}

void check_budget(const SparseIntMatrix& a, bool track, const Budget& budget) {
    std::int64_t cells = a.rows() * a.cols();
    if (track) cells += a.rows() * a.rows() + a.cols() * a.cols();
    if (cells > budget.max_entries) {
        std::ostringstream msg;
        msg << "budget exceeded: dense elimination needs " << cells << " cells for a "
            << a.rows() << "x" << a.cols() << " matrix (ceiling " << budget.max_entries << ")";
        throw BudgetError(msg.str());
    }
}

SNFResult run_snf(const SparseIntMatrix& a, bool track, bool rank_only, const Budget& budget) {
    if (a.is_zero()) {
        SNFResult out;
        out.rank = 0;
        if (track) {
            out.U = SparseIntMatrix::identity(a.rows());
            out.U_inv = SparseIntMatrix::identity(a.rows());
            out.V = SparseIntMatrix::identity(a.cols());
            out.V_inv = SparseIntMatrix::identity(a.cols());
        }
        return out;
    }
    check_budget(a, track, budget);
    if (fits_word_lane(a)) {
        ElimState<std::int64_t> st;
        init_state(st, a, track, rank_only, budget);
        try {
            std::int64_t rank = eliminate(st);
            return extract(st, rank);
        } catch (const PromoteSignal&) {
            ElimState<Int> big = promote(st);
            std::int64_t rank = eliminate(big);
            return extract(big, rank);
        }
    }
    ElimState<Int> big;
    init_state(big, a, track, rank_only, budget);
    std::int64_t rank = eliminate(big);
    return extract(big, rank);
}

}  // namespace

namespace {

// Recompute U·A·V densely and compare against D.  Runs on 128-bit
// accumulators when the entry sizes allow it, otherwise on cpp_int.
template <typename Acc>
void verify_transforms_impl(const SparseIntMatrix& a, const SNFResult& result) {
    const std::int64_t m = a.rows(), n = a.cols();
    std::vector<Acc> av(static_cast<std::size_t>(m * n), Acc(0));
    {
        // av = A·V, accumulated column-block wise via A's sparsity
        std::vector<Acc> v_dense(static_cast<std::size_t>(n * n), Acc(0));
        for (const Triplet& t : result.V->entries())
            v_dense[static_cast<std::size_t>(t.row * n + t.col)] = static_cast<Acc>(t.value);
        for (const Triplet& t : a.entries()) {
            Acc value = static_cast<Acc>(t.value);
            const Acc* vrow = v_dense.data() + t.col * n;
            Acc* out = av.data() + t.row * n;
            for (std::int64_t j = 0; j < n; ++j) out[j] += value * vrow[j];
        }
    }
    std::vector<Acc> u_dense(static_cast<std::size_t>(m * m), Acc(0));
    for (const Triplet& t : result.U->entries())
        u_dense[static_cast<std::size_t>(t.row * m + t.col)] = static_cast<Acc>(t.value);
    for (std::int64_t i = 0; i < m; ++i) {
        for (std::int64_t j = 0; j < n; ++j) {
            Acc acc(0);
            const Acc* urow = u_dense.data() + i * m;
            for (std::int64_t k = 0; k < m; ++k)
                if (urow[k] != 0) acc += urow[k] * av[static_cast<std::size_t>(k * n + j)];
            Acc expected(0);
            if (i == j && i < result.rank)
                expected = static_cast<Acc>(result.invariant_factors[static_cast<std::size_t>(i)]);
            if (acc != expected)
                throw std::logic_error("transform verification failed: U*A*V != D");
        }
    }
}

Int max_abs_entry(const SparseIntMatrix& m) {
    Int best = 0;
    for (const Triplet& t : m.entries()) best = std::max(best, Int(abs(t.value)));
    return best;
}

void verify_transforms(const SparseIntMatrix& a, const SNFResult& result) {
    if (a.is_zero()) {
        if (result.rank != 0) throw std::logic_error("zero matrix with nonzero rank");
        return;
    }
    // m·n·B_u·B_a·B_v must stay inside 128 bits for the fast path.
    Int bound = max_abs_entry(*result.U);
    bound = std::max(bound, Int(1)) * std::max(max_abs_entry(a), Int(1));
    bound *= std::max(max_abs_entry(*result.V), Int(1));
    bound *= Int(a.rows() + 1);
    bound *= Int(a.cols() + 1);
    if (bit_length(bound) < 126)
        verify_transforms_impl<__int128>(a, result);
    else
        verify_transforms_impl<Int>(a, result);
}

}  // namespace

SNFResult smith_normal_form(const SparseIntMatrix& a, const SnfOptions& options) {
    SNFResult result = run_snf(a, options.with_transforms, false, options.budget);
    if (options.with_transforms) verify_transforms(a, result);
    return result;
}

std::int64_t integer_rank(const SparseIntMatrix& a, const Budget& budget) {
    return run_snf(a, false, true, budget).rank;
}

namespace {

SolveResult solve_with_snf(const SparseIntMatrix& a, const SNFResult& snf,
                           std::span<const Int> z) {
    if (static_cast<std::int64_t>(z.size()) != a.rows())
        throw std::invalid_argument("right-hand side length does not match matrix rows");
    std::vector<Int> y = snf.U->apply(z);
    std::vector<Int> reduced(static_cast<std::size_t>(a.cols()), Int(0));
    for (std::int64_t i = 0; i < a.rows(); ++i) {
        const Int& yi = y[static_cast<std::size_t>(i)];
        if (i < snf.rank) {
            const Int& d = snf.invariant_factors[static_cast<std::size_t>(i)];
            if (yi % d != 0) return {};
            reduced[static_cast<std::size_t>(i)] = yi / d;
        } else if (yi != 0) {
            return {};
        }
    }
    SolveResult out;
    out.solvable = true;
    out.witness = snf.V->apply(reduced);
    std::vector<Int> check = a.apply(out.witness);
    for (std::size_t i = 0; i < check.size(); ++i)
        if (check[i] != z[i]) throw std::logic_error("witness verification failed");
    return out;
}

}  // namespace

SolveResult solve_in_image(const SparseIntMatrix& a, std::span<const Int> z,
                           const Budget& budget) {
    SNFResult snf = smith_normal_form(a, {.with_transforms = true, .budget = budget});
    return solve_with_snf(a, snf, z);
}

std::vector<SolveResult> solve_in_image_many(const SparseIntMatrix& a,
                                             const std::vector<std::vector<Int>>& zs,
                                             const Budget& budget) {
    SNFResult snf = smith_normal_form(a, {.with_transforms = true, .budget = budget});
    std::vector<SolveResult> out;
    out.reserve(zs.size());
    for (const auto& z : zs) out.push_back(solve_with_snf(a, snf, z));
    return out;
}

}  // namespace qlab
