#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qlab/errors.hpp"
#include "qlab/jobs.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qlab;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("qlab-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

ComplexRequest matching_request(int n, int max_dim) {
    ComplexRequest r;
    r.n = n;
    r.p = 2;
    r.a = CycleBound::bounded(1);
    r.max_dim = max_dim;
    return r;
}

}  // namespace

TEST_CASE("homology jobs produce stable records") {
    RunConfig config;
    config.threads = 1;
    nlohmann::json record = run_homology_job(matching_request(4, 0), 0, 0, config);
    CHECK(record["command"] == "homology");
    CHECK(record["homology"]["0"]["betti"] == 2);
    CHECK(record["params"]["n"] == 4);
    CHECK(record["cache"]["complex"] == "off");

    // homology fields are byte-identical across runs and thread counts
    RunConfig four = config;
    four.threads = 4;
    nlohmann::json again = run_homology_job(matching_request(4, 0), 0, 0, four);
    CHECK(record["homology"].dump() == again["homology"].dump());
}

TEST_CASE("jobs validate their degree parameters") {
    RunConfig config;
    CHECK_THROWS_AS(run_homology_job(matching_request(4, 0), 0, 2, config),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_homology_job(matching_request(4, 1), 1, 0, config),
                    std::invalid_argument);
}

TEST_CASE("warm cache reproduces cold-cache results") {
    TempDir dir;
    RunConfig config;
    config.threads = 1;
    config.cache_dir = dir.path.string();
    nlohmann::json cold = run_homology_job(matching_request(7, 1), 0, 1, config);
    CHECK(cold["cache"]["complex"] == "miss");
    nlohmann::json warm = run_homology_job(matching_request(7, 1), 0, 1, config);
    CHECK(warm["cache"]["complex"] == "hit");
    CHECK(warm["cache"]["matrices"] == "hit");
    CHECK(cold["cache"]["matrices"] == "miss");
    CHECK(cold["homology"].dump() == warm["homology"].dump());
    CHECK(cold["cache"]["hash"] == warm["cache"]["hash"]);

    // the result log is append-only
    std::ifstream log(dir.path / "results.jsonl");
    int lines = 0;
    std::string line;
    while (std::getline(log, line)) ++lines;
    CHECK(lines == 2);
}

TEST_CASE("corrupt cache entries are ignored and recomputed") {
    TempDir dir;
    RunConfig config;
    config.threads = 1;
    config.cache_dir = dir.path.string();
    nlohmann::json cold = run_homology_job(matching_request(6, 1), 0, 1, config);

    // flip a byte in the cached complex; the digest no longer matches
    std::filesystem::path cx_file = dir.path / "commuting-n6-p2-a1-d1.cx";
    REQUIRE(std::filesystem::exists(cx_file));
    {
        std::fstream f(cx_file, std::ios::in | std::ios::out);
        f.seekp(0);
        f.put('X');
    }
    nlohmann::json recomputed = run_homology_job(matching_request(6, 1), 0, 1, config);
    CHECK(recomputed["cache"]["complex"] == "miss");
    CHECK(cold["homology"].dump() == recomputed["homology"].dump());

    // and the rewrite restored a valid entry
    nlohmann::json warm = run_homology_job(matching_request(6, 1), 0, 1, config);
    CHECK(warm["cache"]["complex"] == "hit");
}

TEST_CASE("sweeps mark the vanishing onset within the computed range") {
    RunConfig config;
    config.threads = 2;
    nlohmann::json sweep = run_sweep(matching_request(0, 0), 2, 8, 0, config);
    CHECK(sweep["rows"].size() == 7);
    CHECK(sweep["vanish_onset_within_range"] == 5);
    CHECK(sweep["note"] == "within computed range");
    // n = 3 and n = 4 are the disconnected rows
    CHECK(sweep["rows"][1]["homology"]["0"]["betti"] == 2);
    CHECK(sweep["rows"][2]["homology"]["0"]["betti"] == 2);

    std::string csv = sweep_csv(sweep);
    CHECK(csv.starts_with("n,H0\n"));
    CHECK(csv.find("3,Z^2\n") != std::string::npos);
    CHECK(csv.find("5,0\n") != std::string::npos);
    CHECK(csv.find("# all computed groups vanish from n=5") != std::string::npos);
}

TEST_CASE("degree-1 sweep reproduces the known matching-complex groups") {
    RunConfig config;
    nlohmann::json sweep = run_sweep(matching_request(0, 0), 5, 8, 1, config);
    CHECK(sweep["rows"][0]["homology"]["1"]["betti"] == 6);
    CHECK(sweep["rows"][2]["homology"]["1"]["torsion"][0] == 3);
    CHECK(sweep["rows"][3]["homology"]["1"]["betti"] == 0);
    CHECK(sweep["rows"][3]["homology"]["1"]["torsion"].empty());
    CHECK(sweep["vanish_onset_within_range"] == 8);
}

TEST_CASE("sweeps record budget errors per row and keep going") {
    RunConfig config;
    config.threads = 1;
    config.budget.max_entries = 300;  // n = 8 no longer fits
    nlohmann::json sweep = run_sweep(matching_request(0, 0), 4, 8, 0, config);
    CHECK(sweep["rows"][0].contains("homology"));
    bool some_error = false;
    for (const auto& row : sweep["rows"]) some_error |= row.contains("error");
    CHECK(some_error);
    CHECK(sweep["vanish_onset_within_range"].is_null());
    std::string csv = sweep_csv(sweep);
    CHECK(csv.find("budget-error") != std::string::npos);
}

TEST_CASE("p=3 sweep shows the 2p+1 connectivity threshold") {
    RunConfig config;
    ComplexRequest r;
    r.n = 0;
    r.p = 3;
    r.a = CycleBound::bounded(1);
    r.max_dim = 0;
    nlohmann::json sweep = run_sweep(r, 3, 9, 0, config);
    CHECK(sweep["vanish_onset_within_range"] == 7);
}

TEST_CASE("warm cache reproduces the acceptance homology checks") {
    TempDir dir;
    RunConfig config;
    config.cache_dir = dir.path.string();
    for (int id : {1, 2, 3, 4, 5, 6, 7, 11}) {
        CriterionResult cold = run_criterion(id, config);
        CriterionResult warm = run_criterion(id, config);
        CHECK(cold.pass == warm.pass);
        CHECK(cold.notes == warm.notes);
    }
}

TEST_CASE("verify dispatch rejects unknown suites") {
    RunConfig config;
    CHECK_THROWS_AS(verify_suite("no-such-suite", {}, config), std::invalid_argument);
    CHECK(verify_suite_names().size() == 7);
}

TEST_CASE("single-cell dimension suite matches the worked example") {
    RunConfig config;
    VerifyParams params;
    params.p = 2;
    params.a = 1;
    params.n = 6;
    SuiteResult suite = verify_suite("dimension", params, config);
    CHECK(suite.pass);  // max clique 3, dimension 2 = floor(6/2) - 1
    CHECK(suite.checks == 1);
}
