// Runs one acceptance criterion per invocation and prints a single
// pass/fail line, so each criterion shows up as its own test entry.
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "th/errors.hpp"
#include "th/selftest.hpp"

int main(int argc, char** argv) {
    int id = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            id = std::atoi(argv[++i]);
        }
    }
    if (id < 1 || id > th::criterion_count()) {
        std::fprintf(stderr, "usage: acceptance --criterion N (1..%d)\n", th::criterion_count());
        return 2;
    }
    th::RunConfig config;
    config.qs = {3, 5, 7, 11};
    try {
        th::SelftestReport report = th::run_selftest(config, {id});
        for (const th::CriterionResult& r : report.criteria) {
            if (r.id != id) continue;
            std::printf("criterion %d %s: %s (%s)\n", r.id, r.pass ? "PASS" : "FAIL",
                        r.name.c_str(), r.detail.c_str());
            return r.pass ? 0 : 1;
        }
    } catch (const th::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    std::fprintf(stderr, "criterion %d did not run\n", id);
    return 2;
}
