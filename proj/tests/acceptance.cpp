#include <cstdio>
#include <cstdlib>
#include <string>

#include "lcong/suite.hpp"

// One PASS/FAIL line per criterion; a criterion also fails when it overruns its time limit.
int main(int argc, char** argv) {
    std::uint64_t seed = 20240601;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    int failed = 0;
    for (int id = 1; id <= lcong::suite::kCriterionCount; ++id) {
        const auto r = lcong::suite::run_criterion(id, seed);
        const bool in_time = r.seconds < r.time_limit;
        const bool ok = r.passed && in_time;
        failed += !ok;
        std::printf("criterion %2d: %s  %s  [%.2f s, limit %.0f s%s]  %s\n", id, ok ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.time_limit, in_time ? "" : ", over time", r.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("seed %llu: %d of %d criteria passed\n", static_cast<unsigned long long>(seed),
                lcong::suite::kCriterionCount - failed, lcong::suite::kCriterionCount);
    return failed == 0 ? 0 : 1;
}
