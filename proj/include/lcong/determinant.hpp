#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "lcong/error.hpp"

namespace lcong {

/// Division-free determinant of a square matrix over a commutative ring.
///
/// Expands along rows with a DP over the set of used columns: O(n 2^n) ring
/// operations, no inverses, so it is safe on capped p-adic entries whose
/// pivots may be non-units. T needs +, -, * and copy construction; `zero`
/// supplies the additive identity.
template <class T>
T determinant(const std::vector<std::vector<T>>& m, const T& zero, const T& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    require(n <= 20, ErrorKind::TooLarge, "determinant dimension too large for subset expansion");
    for (const auto& row : m) require(row.size() == n, ErrorKind::InvalidInput, "matrix is not square");
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::optional<T>> dp(full + 1);
    dp[0] = one;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
        if (!dp[mask]) continue;
        const std::size_t row = static_cast<std::size_t>(std::popcount(mask));
        for (std::size_t col = 0; col < n; ++col) {
            const std::uint32_t bit = 1u << col;
            if (mask & bit) continue;
            // Sign of placing `col` after the already used columns: one flip per
            // used column with a larger index.
            const bool negative = std::popcount(mask >> (col + 1)) % 2 == 1;
            T term = *dp[mask] * m[row][col];
            auto& slot = dp[mask | bit];
            if (!slot)
                slot = negative ? zero - term : term;
            else
                slot = negative ? *slot - term : *slot + term;
        }
    }
    return dp[full] ? *dp[full] : zero;
}

}  // namespace lcong
