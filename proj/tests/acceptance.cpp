// Acceptance runner: executes the stock verification checklist and prints
// one pass/fail line per criterion.  With a numeric argument it runs just
// that criterion (the ctest entries use this); without arguments it runs
// all of them.  Exit code 0 iff everything it ran passed.

#include "qlab/jobs.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

int main(int argc, char** argv) {
    qlab::RunConfig config;
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_pass = true;
    for (int id = 1; id <= qlab::kCriterionCount; ++id) {
        if (only != 0 && id != only) continue;
        qlab::CriterionResult result = qlab::run_criterion(id, config);
        std::printf("[%s] A%02d %s (%.2f s)\n", result.pass ? "PASS" : "FAIL", result.id,
                    result.description.c_str(), result.seconds);
        for (const auto& note : result.notes) std::printf("       %s\n", note.c_str());
        all_pass = all_pass && result.pass;
    }
    return all_pass ? 0 : 1;
}
