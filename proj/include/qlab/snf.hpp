#pragma once

#include "qlab/config.hpp"
#include "qlab/matrix.hpp"

#include <optional>

namespace qlab {

struct SnfOptions {
    bool with_transforms = false;
    Budget budget{};
};

// D = U·A·V with U, V unimodular and D diagonal with a divisibility chain.
// The inverses are carried alongside so kernel and cokernel bases come out
// without a second elimination.
struct SNFResult {
    std::vector<Int> invariant_factors;  // positive, each dividing the next
    std::int64_t rank = 0;
    std::optional<SparseIntMatrix> U, V, U_inv, V_inv;
};

// Pivot rule: smallest nonzero absolute value in the working window, ties
// broken by (row, col).  Elimination runs on machine words with overflow
// checks and escalates to arbitrary precision on the first overflow.
SNFResult smith_normal_form(const SparseIntMatrix& a, const SnfOptions& options = {});

// Rank by the same elimination without transforms or divisibility
// normalisation; exact, for use when torsion is not needed.
std::int64_t integer_rank(const SparseIntMatrix& a, const Budget& budget = {});

struct SolveResult {
    bool solvable = false;
    std::vector<Int> witness;  // x with A·x = z, verified, present when solvable
};

// Integer solvability of A·x = z, decided through the Smith transforms.
SolveResult solve_in_image(const SparseIntMatrix& a, std::span<const Int> z,
                           const Budget& budget = {});

// Same decision for many right-hand sides against one Smith form.
std::vector<SolveResult> solve_in_image_many(const SparseIntMatrix& a,
                                             const std::vector<std::vector<Int>>& zs,
                                             const Budget& budget = {});

}  // namespace qlab
