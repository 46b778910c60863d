#include "qlab/matrix.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

namespace qlab {

namespace {

bool triplet_position_less(const Triplet& a, const Triplet& b) {
    if (a.col != b.col) return a.col < b.col;
    return a.row < b.row;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(std::int64_t rows, std::int64_t cols)
    : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

SparseIntMatrix::SparseIntMatrix(std::int64_t rows, std::int64_t cols,
                                 std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    std::sort(entries_.begin(), entries_.end(), triplet_position_less);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const Triplet& t = entries_[i];
        if (t.row < 0 || t.row >= rows_ || t.col < 0 || t.col >= cols_)
            throw std::invalid_argument("matrix entry out of range");
        if (t.value == 0) throw std::invalid_argument("explicit zero entry");
        if (i > 0 && entries_[i - 1].row == t.row && entries_[i - 1].col == t.col)
            throw std::invalid_argument("duplicate matrix entry");
    }
}

SparseIntMatrix SparseIntMatrix::identity(std::int64_t n) {
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) entries.push_back({i, i, 1});
    return SparseIntMatrix(n, n, std::move(entries));
}

SparseIntMatrix SparseIntMatrix::transposed() const {
    std::vector<Triplet> entries;
    entries.reserve(entries_.size());
    for (const Triplet& t : entries_) entries.push_back({t.col, t.row, t.value});
    return SparseIntMatrix(cols_, rows_, std::move(entries));
}

std::vector<Int> SparseIntMatrix::apply(std::span<const Int> x) const {
    if (static_cast<std::int64_t>(x.size()) != cols_)
        throw std::invalid_argument("vector length does not match matrix columns");
    std::vector<Int> y(static_cast<std::size_t>(rows_), Int(0));
    for (const Triplet& t : entries_)
        y[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
    return y;
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix shapes are not composable");
    // Group a's entries by column for the inner joins.
    std::vector<std::vector<std::pair<std::int64_t, const Int*>>> a_by_col(
        static_cast<std::size_t>(a.cols()));
    for (const Triplet& t : a.entries())
        a_by_col[static_cast<std::size_t>(t.col)].emplace_back(t.row, &t.value);
    std::map<std::pair<std::int64_t, std::int64_t>, Int> acc;
    for (const Triplet& t : b.entries())
        for (const auto& [row, value] : a_by_col[static_cast<std::size_t>(t.row)])
            acc[{t.col, row}] += (*value) * t.value;
    std::vector<Triplet> entries;
    for (auto& [pos, value] : acc)
        if (value != 0) entries.push_back({pos.second, pos.first, std::move(value)});
    return SparseIntMatrix(a.rows(), b.cols(), std::move(entries));
}

void write_matrix_file(const SparseIntMatrix& m, std::ostream& out) {
    out << "qlab-matrix v1 " << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (const Triplet& t : m.entries())
        out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

SparseIntMatrix read_matrix_file(std::istream& in) {
    std::string magic, version;
    std::int64_t rows = 0, cols = 0, count = 0;
    if (!(in >> magic >> version >> rows >> cols >> count) || magic != "qlab-matrix" ||
        version != "v1")
        throw std::runtime_error("not a qlab-matrix v1 file");
    std::vector<Triplet> entries;
    entries.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        Triplet t;
        std::string value;
        if (!(in >> t.row >> t.col >> value))
            throw std::runtime_error("truncated qlab-matrix file");
        t.value = Int(value);
        entries.push_back(std::move(t));
    }
    return SparseIntMatrix(rows, cols, std::move(entries));
}

}  // namespace qlab
