#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qlab {

using Int = boost::multiprecision::cpp_int;

struct Triplet {
    std::int64_t row = 0;
    std::int64_t col = 0;
    Int value;

    bool operator==(const Triplet&) const = default;
};

// Exact sparse integer matrix.  Entries are nonzero, unique per position,
// and kept sorted by (col, row); values are arbitrary-precision, so nothing
// ever wraps.  Immutable after construction.
class SparseIntMatrix {
public:
    SparseIntMatrix() = default;
    SparseIntMatrix(std::int64_t rows, std::int64_t cols);
    SparseIntMatrix(std::int64_t rows, std::int64_t cols, std::vector<Triplet> entries);
    static SparseIntMatrix identity(std::int64_t n);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }
    std::int64_t nnz() const { return static_cast<std::int64_t>(entries_.size()); }
    const std::vector<Triplet>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    SparseIntMatrix transposed() const;
    std::vector<Int> apply(std::span<const Int> x) const;  // A·x

    bool operator==(const SparseIntMatrix&) const = default;

private:
    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::vector<Triplet> entries_;
};

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);

// Matrix cache format: a "qlab-matrix v1 n_rows n_cols n_entries" header,
// then one "row col value" triplet per line in (col, row) order.
void write_matrix_file(const SparseIntMatrix& m, std::ostream& out);
SparseIntMatrix read_matrix_file(std::istream& in);

}  // namespace qlab
