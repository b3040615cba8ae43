#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcong/error.hpp"

/// Seeded property suites over the whole library. The acceptance binary runs
/// them at full size; `lcong selftest` runs them scaled down.
namespace lcong::suite {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::size_t cases = 0;
    std::string detail;
    double seconds = 0;
    double time_limit = 0;
    /// Set when a library error aborted the criterion.
    std::optional<ErrorKind> error;
};

inline constexpr int kCriterionCount = 11;

/// scale in (0, 1] multiplies every case count (at least one case each).
CriterionResult run_criterion(int id, std::uint64_t seed, double scale = 1.0);
std::vector<CriterionResult> run_all(std::uint64_t seed, double scale = 1.0);

}  // namespace lcong::suite
