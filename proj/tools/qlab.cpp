// qlab: build commuting and Kneser complexes of symmetric groups, compute
// their exact integral homology, and run the stock verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 budget exceeded,
// 3 invalid parameters.

#include "qlab/errors.hpp"
#include "qlab/jobs.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace {

struct CliOptions {
    qlab::RunConfig config;
    int n = 0;
    int n_min = 0, n_max = 0;
    int p = 2;
    std::optional<int> a;
    bool unbounded = false;
    bool kneser = false;
    std::string k_spec = "0";
    std::optional<int> max_dim;
    std::string suite;
    qlab::VerifyParams verify;
};

// "1" or "0..2"
std::pair<int, int> parse_degree_range(const std::string& spec) {
    auto dots = spec.find("..");
    if (dots == std::string::npos) {
        int k = std::stoi(spec);
        return {k, k};
    }
    return {std::stoi(spec.substr(0, dots)), std::stoi(spec.substr(dots + 2))};
}

qlab::CycleBound cycle_bound(const CliOptions& opt) {
    if (opt.unbounded) return qlab::CycleBound::unbounded();
    return qlab::CycleBound::bounded(opt.a.value_or(1));
}

qlab::ComplexRequest make_request(const CliOptions& opt, int max_dim) {
    qlab::ComplexRequest r;
    r.kneser = opt.kneser;
    r.n = opt.n;
    r.p = opt.p;
    r.a = cycle_bound(opt);
    r.max_dim = max_dim;
    return r;
}

void add_common(CLI::App* cmd, CliOptions& opt, bool with_n = true) {
    if (with_n) cmd->add_option("--n", opt.n, "ground set size")->required();
    cmd->add_option("--p", opt.p, "cycle length (prime for commuting graphs)");
    cmd->add_option("--a", opt.a, "bound on the number of disjoint p-cycles");
    cmd->add_flag("--unbounded", opt.unbounded, "no bound on the number of p-cycles");
    cmd->add_flag("--kneser", opt.kneser, "use the Kneser graph on p-subsets");
}

int emit_and_exit_code(const qlab::SuiteResult& suite) {
    std::cout << "[" << (suite.pass ? "PASS" : "FAIL") << "] " << suite.name << ": "
              << suite.checks << " checks, " << suite.lines.size() << " findings ("
              << suite.seconds << " s)\n";
    for (const auto& line : suite.lines) std::cout << "  " << line << "\n";
    return suite.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CliOptions opt;
    CLI::App app{"commuting complexes of symmetric groups: exact homology toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--threads", opt.config.threads, "worker threads")
        ->envname("QLAB_THREADS");
    app.add_option("--seed", opt.config.seed, "seed for randomized suites")
        ->envname("QLAB_SEED");
    app.add_option("--cache-dir", opt.config.cache_dir, "cache directory")
        ->envname("QLAB_CACHE_DIR");
    app.add_option("--format", opt.config.format, "output format: json or csv")
        ->envname("QLAB_FORMAT")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--budget-entries", opt.config.budget.max_entries,
                   "ceiling on stored simplices / dense cells")
        ->envname("QLAB_BUDGET_ENTRIES");
    app.add_option("--budget-bits", opt.config.budget.max_bits,
                   "ceiling on integer entry bit length")
        ->envname("QLAB_BUDGET_BITS");
    app.add_flag("--coreduce", opt.config.coreduce,
                 "preprocess chain segments by coreduction")
        ->envname("QLAB_COREDUCE");

    CLI::App* graph = app.add_subcommand("graph", "build a graph and print it as JSON");
    add_common(graph, opt);

    CLI::App* complex_cmd =
        app.add_subcommand("complex", "build a clique complex and print its profile");
    add_common(complex_cmd, opt);
    complex_cmd->add_option("--max-dim", opt.max_dim, "dimension cap");

    CLI::App* homology = app.add_subcommand("homology", "reduced integral homology");
    add_common(homology, opt);
    homology->add_option("--k", opt.k_spec, "degree or degree range, e.g. 1 or 0..2");
    homology->add_option("--max-dim", opt.max_dim, "dimension cap (default: top degree)");

    CLI::App* sweep = app.add_subcommand("sweep", "homology table over a range of n");
    add_common(sweep, opt, /*with_n=*/false);
    sweep->add_option("--n-min", opt.n_min, "first n")->required();
    sweep->add_option("--n-max", opt.n_max, "last n")->required();
    sweep->add_option("--k", opt.k_spec, "top degree");

    CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
    verify->add_option("suite", opt.suite, "one of: fi-torsion cone generator-degree snf theorem-a kneser-acyclicity dimension")
        ->required();
    verify->add_option("--p", opt.verify.p, "restrict to one p");
    verify->add_option("--a", opt.verify.a, "restrict to one a");
    verify->add_option("--n", opt.verify.n, "restrict to one n");
    verify->add_option("--k", opt.verify.k, "restrict to one degree");
    verify->add_option("--trials", opt.verify.trials, "random trials (snf suite)");
    verify->add_option("--size", opt.verify.size, "matrix size (snf suite)");

    CLI::App* reproduce =
        app.add_subcommand("reproduce", "run every stock acceptance check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (graph->parsed()) {
            std::cout << qlab::run_graph_job(make_request(opt, 0), opt.config).dump() << "\n";
            return 0;
        }
        if (complex_cmd->parsed()) {
            auto record =
                qlab::run_complex_job(make_request(opt, opt.max_dim.value_or(1)), opt.config);
            std::cout << record.dump() << "\n";
            return 0;
        }
        if (homology->parsed()) {
            auto [k_min, k_max] = parse_degree_range(opt.k_spec);
            int max_dim = opt.max_dim.value_or(k_max);
            auto record =
                qlab::run_homology_job(make_request(opt, max_dim), k_min, k_max, opt.config);
            std::cout << record.dump() << "\n";
            return 0;
        }
        if (sweep->parsed()) {
            auto [k_lo, k_max] = parse_degree_range(opt.k_spec);
            (void)k_lo;
            auto record = qlab::run_sweep(make_request(opt, k_max), opt.n_min, opt.n_max,
                                          k_max, opt.config);
            if (opt.config.format == "csv")
                std::cout << qlab::sweep_csv(record);
            else
                std::cout << record.dump() << "\n";
            return 0;
        }
        if (verify->parsed())
            return emit_and_exit_code(qlab::verify_suite(opt.suite, opt.verify, opt.config));
        if (reproduce->parsed()) {
            auto results = qlab::run_reproduce(opt.config);
            bool all = true;
            for (const auto& r : results) {
                std::cout << "[" << (r.pass ? "PASS" : "FAIL") << "] A" << (r.id < 10 ? "0" : "")
                          << r.id << " " << r.description << " (" << r.seconds << " s)\n";
                for (const auto& note : r.notes) std::cout << "    " << note << "\n";
                all = all && r.pass;
            }
            std::cout << (all ? "all checks passed" : "some checks failed") << "\n";
            return all ? 0 : 1;
        }
    } catch (const qlab::BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 3;
}
