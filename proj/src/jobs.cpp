#include "qlab/jobs.hpp"

#include "qlab/errors.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <omp.h>

namespace qlab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json params_json(const ComplexRequest& r, int k_min, int k_max) {
    nlohmann::json p{{"kind", r.kneser ? "kneser" : "commuting"},
                     {"n", r.n},
                     {"p", r.p},
                     {"max_dim", r.max_dim},
                     {"reduced", true}};
    if (r.kneser)
        p["a"] = nullptr;
    else
        p["a"] = r.a.is_unbounded() ? nlohmann::json("unbounded")
                                    : nlohmann::json(r.a.effective(r.n, r.p));
    if (k_min >= 0) {
        p["k_min"] = k_min;
        p["k_max"] = k_max;
    }
    return p;
}

struct BuiltComplex {
    CliqueComplex cx;
    CacheInfo info;
};

BuiltComplex build_complex(const ComplexRequest& r, const RunConfig& config) {
    Cache cache(config.cache_dir);
    CacheInfo info;
    CliqueComplex cx = cache.get_complex(r.kneser, GroundSet::range(r.n), r.p, r.a,
                                         r.max_dim, config.budget, config.threads, &info);
    return {std::move(cx), info};
}

nlohmann::json cache_json(const CacheInfo& info) {
    if (!info.enabled) return nlohmann::json{{"complex", "off"}};
    return nlohmann::json{{"complex", info.hit ? "hit" : "miss"}, {"hash", info.hash}};
}

}  // namespace

nlohmann::json run_homology_job(const ComplexRequest& request, int k_min, int k_max,
                                const RunConfig& config) {
    if (k_min < 0 || k_min > k_max) throw std::invalid_argument("bad degree range");
    if (k_max > request.max_dim)
        throw std::invalid_argument("requested degree exceeds max_dim");
    auto start = Clock::now();
    BuiltComplex built = build_complex(request, config);
    HomologyOptions options{.coreduce = config.coreduce, .budget = config.budget};
    // Matrices come through the cache; homology itself is always recomputed.
    Cache cache(config.cache_dir);
    int matrix_hits = 0, matrix_misses = 0;
    BoundarySource source = [&](const CliqueComplex& cx, int k) {
        CacheInfo info;
        SparseIntMatrix m = cache.get_boundary(cx, request.kneser, k, &info);
        if (info.enabled) (info.hit ? matrix_hits : matrix_misses) += 1;
        return m;
    };
    auto groups = complex_homology(built.cx, k_min, k_max, options, source);
    nlohmann::json homology;
    for (int k = k_min; k <= k_max; ++k)
        homology[std::to_string(k)] = homology_json(groups[static_cast<std::size_t>(k - k_min)]);
    nlohmann::json cache_field = cache_json(built.info);
    if (built.info.enabled)
        cache_field["matrices"] =
            matrix_misses == 0 ? "hit" : (matrix_hits == 0 ? "miss" : "partial");
    nlohmann::json record{{"command", "homology"},
                          {"params", params_json(request, k_min, k_max)},
                          {"homology", homology},
                          {"cache", cache_field},
                          {"threads", config.threads},
                          {"timing_ms", static_cast<std::int64_t>(seconds_since(start) * 1e3)}};
    cache.append_result(record.dump());
    return record;
}

nlohmann::json run_graph_job(const ComplexRequest& request, const RunConfig& config) {
    auto start = Clock::now();
    LabeledGraph g = request.kneser
                         ? build_kneser_graph(GroundSet::range(request.n), request.p,
                                              config.threads)
                         : build_commuting_graph(GroundSet::range(request.n), request.p,
                                                 request.a, config.threads);
    nlohmann::json record = graph_json(g);
    record["components"] = component_count(g);
    record["timing_ms"] = static_cast<std::int64_t>(seconds_since(start) * 1e3);
    return record;
}

nlohmann::json run_complex_job(const ComplexRequest& request, const RunConfig& config) {
    auto start = Clock::now();
    BuiltComplex built = build_complex(request, config);
    nlohmann::json counts = nlohmann::json::array();
    for (int k = 0; k <= built.cx.top_dim(); ++k) counts.push_back(built.cx.count(k));
    nlohmann::json record{{"command", "complex"},
                          {"params", params_json(request, -1, -1)},
                          {"simplices", counts},
                          {"top_nonempty_dim", built.cx.top_nonempty_dim()},
                          {"cache", cache_json(built.info)},
                          {"threads", config.threads},
                          {"timing_ms", static_cast<std::int64_t>(seconds_since(start) * 1e3)}};
    Cache(config.cache_dir).append_result(record.dump());
    return record;
}

nlohmann::json run_sweep(const ComplexRequest& request, int n_min, int n_max, int k_max,
                         const RunConfig& config) {
    if (n_min > n_max) throw std::invalid_argument("bad n range");
    auto start = Clock::now();
    const int cells = n_max - n_min + 1;
    std::vector<nlohmann::json> rows(static_cast<std::size_t>(cells));
    std::vector<std::string> errors(static_cast<std::size_t>(cells));
    // Cells are independent jobs; each runs single-threaded under the sweep
    // scheduler so the row set, not the row, is what parallelises.
    RunConfig cell_config = config;
    cell_config.threads = 1;
#pragma omp parallel for schedule(dynamic) num_threads(config.threads)
    for (int i = 0; i < cells; ++i) {
        ComplexRequest r = request;
        r.n = n_min + i;
        r.max_dim = k_max;
        try {
            nlohmann::json record = run_homology_job(r, 0, k_max, cell_config);
            rows[static_cast<std::size_t>(i)] =
                nlohmann::json{{"n", r.n}, {"homology", record["homology"]}};
        } catch (const BudgetError& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
    nlohmann::json out_rows = nlohmann::json::array();
    for (int i = 0; i < cells; ++i) {
        if (!errors[static_cast<std::size_t>(i)].empty())
            out_rows.push_back(nlohmann::json{{"n", n_min + i},
                                              {"error", errors[static_cast<std::size_t>(i)]}});
        else
            out_rows.push_back(rows[static_cast<std::size_t>(i)]);
    }
    // First n from which every computed group vanishes through the end of
    // the range; nothing is claimed beyond the computed range.
    std::optional<int> onset;
    for (int i = cells - 1; i >= 0; --i) {
        const nlohmann::json& row = out_rows[static_cast<std::size_t>(i)];
        bool vanished = row.contains("homology");
        if (vanished)
            for (const auto& [key, group] : row["homology"].items())
                if (group["betti"] != 0 || !group["torsion"].empty()) vanished = false;
        if (!vanished) break;
        onset = n_min + i;
    }
    nlohmann::json record{{"command", "sweep"},
                          {"params", params_json(request, 0, k_max)},
                          {"rows", out_rows},
                          {"note", "within computed range"},
                          {"timing_ms", static_cast<std::int64_t>(seconds_since(start) * 1e3)}};
    record["params"]["n_min"] = n_min;
    record["params"]["n_max"] = n_max;
    if (onset)
        record["vanish_onset_within_range"] = *onset;
    else
        record["vanish_onset_within_range"] = nullptr;
    Cache(config.cache_dir).append_result(record.dump());
    return record;
}

std::string sweep_csv(const nlohmann::json& sweep) {
    std::ostringstream out;
    const int k_max = sweep["params"]["k_max"].get<int>();
    out << "n";
    for (int k = 0; k <= k_max; ++k) out << ",H" << k;
    out << "\n";
    for (const auto& row : sweep["rows"]) {
        out << row["n"].get<int>();
        if (row.contains("error")) {
            for (int k = 0; k <= k_max; ++k) out << ",budget-error";
        } else {
            for (int k = 0; k <= k_max; ++k) {
                const auto& g = row["homology"][std::to_string(k)];
                HomologyGroup group;
                group.betti = g["betti"].get<std::int64_t>();
                for (const auto& d : g["torsion"]) {
                    if (d.is_string())
                        group.torsion.push_back(Int(d.get<std::string>()));
                    else
                        group.torsion.push_back(Int(d.get<std::int64_t>()));
                }
                out << "," << to_string(group);
            }
        }
        out << "\n";
    }
    if (sweep["vanish_onset_within_range"].is_null())
        out << "# no all-vanishing onset within computed range\n";
    else
        out << "# all computed groups vanish from n=" << sweep["vanish_onset_within_range"]
            << " on, within computed range\n";
    return out.str();
}

}  // namespace qlab
