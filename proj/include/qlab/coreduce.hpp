#pragma once

#include "qlab/complex.hpp"
#include "qlab/homology.hpp"

#include <functional>
#include <span>
#include <vector>

namespace qlab {

// Where the pipeline takes its reduced boundary matrices from; the cache
// layer plugs in here so homology is recomputed from cached matrices.
using BoundarySource = std::function<SparseIntMatrix(const CliqueComplex&, int)>;

// What is left of the augmented chain complex after coreduction: cell counts
// and boundary matrices per degree 0..k_max+1, plus any carried degree-k
// chains restricted to the surviving cells.
struct ReducedSegment {
    int k_max = 0;
    std::vector<std::int64_t> dims;           // dims[k] for k = 0..k_max+1
    std::vector<SparseIntMatrix> boundaries;  // boundaries[k]: C_k -> C_{k-1}
    std::vector<std::vector<Int>> carried;
    int carry_degree = -1;
    std::int64_t removed_pairs = 0;
};

// Coreduction over the augmented complex: repeatedly removes a cell pair
// (a, b) where the current boundary of b is the single unit entry a.  The
// result has the same homology in every reported degree.  Carried chains
// must be cycles in degree carry_degree; being a boundary is preserved for
// them, and the transport is plain restriction to the surviving cells.
ReducedSegment coreduce(const CliqueComplex& cx, int k_max,
                        std::span<const std::vector<Int>> carried = {},
                        int carry_degree = -1, const BoundarySource& source = {});

// Reduced homology of the complex for degrees k_min..k_max, via the direct
// Smith pipeline or the coreduction preprocessor per options.coreduce.
std::vector<HomologyGroup> complex_homology(const CliqueComplex& cx, int k_min, int k_max,
                                            const HomologyOptions& options = {},
                                            const BoundarySource& source = {});

inline std::vector<HomologyGroup> complex_homology(const CliqueComplex& cx, int k_max,
                                                   const HomologyOptions& options = {}) {
    return complex_homology(cx, 0, k_max, options);
}

// Classification of degree-k cycles of the complex against its homology:
// whether each one bounds, and its coordinates in a homology basis of the
// coreduced core.  Column j of coordinates describes cycles[j]; rows list
// torsion generators first, then free ones, matching core_basis.
struct CycleClassification {
    HomologyBasis core_basis;
    std::vector<std::vector<Int>> coordinates;  // per cycle, length core_basis.size()
    std::vector<bool> is_boundary;
};

CycleClassification classify_cycles(const CliqueComplex& cx, int k,
                                    const std::vector<std::vector<Int>>& cycles,
                                    const Budget& budget = {});

}  // namespace qlab
