#pragma once

#include "qlab/complex.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace qlab {

struct CacheInfo {
    bool enabled = false;
    bool hit = false;
    std::string hash;  // fnv:<hex> digest of the stored file
};

std::string fnv_hex(std::string_view bytes);

// On-disk cache for complexes and boundary matrices, keyed by
// (kind, n, p, a, max_dim) and the format version baked into the file
// headers.  Every file carries a sidecar digest; corrupt or mismatched
// entries are ignored with a warning on stderr and recomputed.  Homology is
// always recomputed from the cached matrices.
class Cache {
public:
    Cache() = default;  // disabled
    explicit Cache(std::filesystem::path dir);

    bool enabled() const { return !dir_.empty(); }
    const std::filesystem::path& dir() const { return dir_; }

    // Builds the graph either way (vertex order is deterministic, so cached
    // indices stay valid); only the clique enumeration is skipped on a hit.
    CliqueComplex get_complex(bool kneser, const GroundSet& ground, int p, CycleBound a,
                              int max_dim, const Budget& budget, int threads,
                              CacheInfo* info = nullptr);

    SparseIntMatrix get_boundary(const CliqueComplex& cx, bool kneser, int k,
                                 CacheInfo* info = nullptr);

    // Append-only result log (results.jsonl); writes are serialised.
    void append_result(const std::string& json_line);

private:
    std::filesystem::path dir_;
};

}  // namespace qlab
