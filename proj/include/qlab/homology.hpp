#pragma once

#include "qlab/config.hpp"
#include "qlab/matrix.hpp"
#include "qlab/snf.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qlab {

// A finitely generated abelian group in invariant-factor form:
// Z^betti + Z/d_1 + ... + Z/d_m with 2 <= d_1 | d_2 | ... | d_m.
struct HomologyGroup {
    std::int64_t betti = 0;
    std::vector<Int> torsion;

    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const HomologyGroup&) const = default;
};

// "0", "Z^6", "Z/3", "Z^0 + Z/3", ...
std::string to_string(const HomologyGroup& g);
nlohmann::json homology_json(const HomologyGroup& g);

struct HomologyOptions {
    // Rank of the outgoing boundary by plain exact elimination instead of a
    // full Smith pass; torsion still always comes from the Smith form.
    bool rank_fast_path = false;
    // Consumed by the complex-level pipeline: coreduce the augmented complex
    // before any Smith elimination.  Off by default.
    bool coreduce = false;
    Budget budget{};
};

// Reduced or plain homology of a chain segment: betti = dim C_k - rank d_k -
// rank d_{k+1}, torsion = invariant factors of d_{k+1} exceeding 1.  The
// composition d_k · d_{k+1} = 0 is checked, not assumed.
HomologyGroup homology(std::int64_t dim_ck, const SparseIntMatrix& bd_k,
                       const SparseIntMatrix& bd_k1, const HomologyOptions& options = {});

// Explicit cycle representatives spanning the homology of a segment, split
// into free generators and torsion generators with their orders.  Each
// representative is verified to be a cycle before it is returned.
struct HomologyBasis {
    std::int64_t dim_ck = 0;
    std::vector<std::vector<Int>> free_generators;
    std::vector<std::pair<std::vector<Int>, Int>> torsion_generators;  // (cycle, order)

    std::int64_t size() const {
        return static_cast<std::int64_t>(free_generators.size() + torsion_generators.size());
    }
    HomologyGroup group() const;
};

HomologyBasis homology_basis(std::int64_t dim_ck, const SparseIntMatrix& bd_k,
                             const SparseIntMatrix& bd_k1, const HomologyOptions& options = {});

}  // namespace qlab
