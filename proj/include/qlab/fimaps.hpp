#pragma once

#include "qlab/complex.hpp"
#include "qlab/coreduce.hpp"
#include "qlab/homology.hpp"

#include "json.hpp"

#include <vector>

namespace qlab {

// Chain maps induced by a vertex map between clique complexes: one matrix per
// degree, each column carrying a single signed unit.  The commuting square
// with the boundaries is asserted at construction, not assumed.
struct ChainMap {
    int max_degree = 0;                     // matrices exist for 0..max_degree
    std::vector<SparseIntMatrix> degree;    // degree[k]: C_k(source) -> C_k(target)
};

// Vertex map v -> relabel(v, j) (resp. subset image).  Also covers the
// filtration inclusions: same ground set, larger cycle bound on the target.
ChainMap induced_simplicial_map(const Injection& j, const CliqueComplex& source,
                                const CliqueComplex& target);

struct InducedHomologyMap {
    // Coordinates of each source generator's image in a homology basis of
    // the target (torsion generators first, then free, on both sides).
    SparseIntMatrix matrix;
    bool is_zero = false;
    std::int64_t source_generators = 0;
};

// Pushes every degree-k homology generator of the source through the chain
// map and decides whether the image class bounds.  Falls back from the dense
// transform route to coreduction when the target is too large for the
// entry budget.
InducedHomologyMap induced_homology_map(const Injection& j, const CliqueComplex& source,
                                        const CliqueComplex& target, int k,
                                        const HomologyOptions& options = {});

// Witness that the induced map factors through a cone: a p-cycle on fresh
// labels that commutes with the image of every stored source simplex.
struct ConeCertificate {
    GroundSet cone_labels;     // B, the p smallest labels missed by j
    Permutation cone_vertex;   // the cycle through B in sorted order
    std::int64_t simplices_checked = 0;
    bool ok = false;
};

ConeCertificate cone_certificate(const Injection& j, const CliqueComplex& source, int p,
                                 CycleBound a, int threads = default_threads());
ConeCertificate cone_certificate(const Injection& j, const CliqueComplex& source,
                                 const LabeledGraph& target_graph,
                                 int threads = default_threads());

nlohmann::json certificate_json(const ConeCertificate& cert, const Injection& j, int p, int a);

struct GeneratorDegreeReport {
    bool ok = false;
    std::int64_t max_support = 0;
    std::int64_t bound = 0;
    std::int64_t simplices_checked = 0;
    bool vacuous = false;  // no k-simplices stored at this degree
};

// Every k-simplex moves at most (k+1)*a*p letters; reports the maximum seen.
GeneratorDegreeReport generator_degree_check(const CliqueComplex& cx, int k, int p, int a,
                                             int threads = default_threads());

}  // namespace qlab
