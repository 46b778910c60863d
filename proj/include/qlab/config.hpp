#pragma once

#include <cstdint>

namespace qlab {

// Resource ceilings shared by complex construction and exact linear algebra.
// max_entries bounds stored simplices and dense matrix cells; max_bits bounds
// the bit length of any integer entry after escalation to arbitrary
// precision.  Defaults are sized for the largest stock verification runs.
struct Budget {
    std::int64_t max_entries = 64'000'000;
    std::int64_t max_bits = 8192;
};

// Number of worker threads the OpenMP kernels use by default.
int default_threads();

}  // namespace qlab
