#pragma once

#include "qlab/cache.hpp"
#include "qlab/coreduce.hpp"
#include "qlab/fimaps.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qlab {

struct RunConfig {
    int threads = default_threads();
    Budget budget{};
    std::string cache_dir;  // empty disables the cache
    bool coreduce = false;
    std::uint64_t seed = 42;
    std::string format = "json";  // "json" or "csv"
};

struct ComplexRequest {
    bool kneser = false;
    int n = 0;
    int p = 2;
    CycleBound a = CycleBound::bounded(1);
    int max_dim = 0;
};

// Builds (or loads) the complex, computes reduced homology for the degree
// range, records provenance and timing, and appends the record to the result
// log when a cache directory is configured.
nlohmann::json run_homology_job(const ComplexRequest& request, int k_min, int k_max,
                                const RunConfig& config);

nlohmann::json run_graph_job(const ComplexRequest& request, const RunConfig& config);
nlohmann::json run_complex_job(const ComplexRequest& request, const RunConfig& config);

// One row per n; marks the first n in range from which every computed group
// vanishes.  Rows are computed as independent jobs scheduled across threads;
// output order and content are independent of the schedule.
nlohmann::json run_sweep(const ComplexRequest& request, int n_min, int n_max, int k_max,
                         const RunConfig& config);
std::string sweep_csv(const nlohmann::json& sweep);

// Optional per-suite overrides (mostly narrowing the stock grids).
struct VerifyParams {
    std::optional<int> p, a, n, k;
    int trials = 200;
    int size = 5;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::vector<std::string> lines;  // one entry per failed or notable check
    std::int64_t checks = 0;
    double seconds = 0.0;
};

// Suites: fi-torsion | cone | generator-degree | snf | theorem-a |
// kneser-acyclicity | dimension.
SuiteResult verify_suite(const std::string& name, const VerifyParams& params,
                         const RunConfig& config);
std::vector<std::string> verify_suite_names();

struct CriterionResult {
    int id = 0;
    std::string description;
    bool pass = false;
    double seconds = 0.0;
    std::vector<std::string> notes;
};

CriterionResult run_criterion(int id, const RunConfig& config);
constexpr int kCriterionCount = 12;
std::vector<CriterionResult> run_reproduce(const RunConfig& config);

}  // namespace qlab
