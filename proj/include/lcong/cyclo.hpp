#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lcong/padic.hpp"

namespace lcong {

/// Formal element sum_{s in {0,1}} sum_{j in Z/p} c[s][j] sqrt(q)^s zeta^j with
/// coefficients in the coefficient field, zeta a primitive p-th root of unity.
///
/// Character sums over finite quotients produce vectors that are constant in
/// j; those vanish through 1 + zeta + ... + zeta^{p-1} = 0 without any
/// rounding, so orthogonality and differences of equal sums are decided
/// exactly. For p = 2, zeta = -1 is folded into the coefficients.
class CycloValue {
public:
    CycloValue(padic::FieldConfig cfg, std::int64_t p, std::int64_t q);
    /// coef * zeta^zeta_exp * q^{half_exp / 2}.
    static CycloValue term(const padic::LocalNumber& coef, std::int64_t p, std::int64_t q, std::int64_t zeta_exp,
                           std::int64_t half_exp);

    const padic::FieldConfig& config() const { return cfg_; }
    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    const padic::LocalNumber& coeff(int s, std::int64_t j) const { return c_[s][static_cast<std::size_t>(j)]; }

    CycloValue operator-() const;
    friend CycloValue operator+(const CycloValue& a, const CycloValue& b);
    friend CycloValue operator-(const CycloValue& a, const CycloValue& b);
    CycloValue& operator+=(const CycloValue& o) { return *this = *this + o; }
    CycloValue scaled(const padic::LocalNumber& x) const;
    CycloValue times_zeta(std::int64_t k) const;

    /// Formal zero: every slot is constant in j.
    bool is_zero() const;
    /// Certified lower bound for the valuation of the value (kInfinity when
    /// formally zero), taken over the best normalization of each slot.
    std::int64_t valuation_bound() const;

    /// The value in the coefficient field. sqrt_q defaults to the exact root
    /// when q is a square and to the canonical Hensel root otherwise.
    padic::LocalNumber embed(const std::optional<padic::LocalNumber>& sqrt_q = std::nullopt) const;
    /// Reduction modulo the maximal ideal, computed slotwise in the residue
    /// field. NotIntegral when the value has negative valuation.
    padic::Residue reduce(const std::optional<padic::LocalNumber>& sqrt_q = std::nullopt) const;

    std::string to_string() const;

private:
    void fold();
    padic::LocalNumber resolve_sqrt_q(const std::optional<padic::LocalNumber>& sqrt_q) const;
    // Index j0 whose subtraction maximizes the slot's minimal valuation.
    std::pair<std::size_t, std::int64_t> best_shift(int s) const;

    padic::FieldConfig cfg_;
    std::int64_t p_, q_;
    std::array<std::vector<padic::LocalNumber>, 2> c_;
};

/// Lower bound for v(a - b) that survives complete cancellation of capped digits.
std::int64_t difference_valuation(const padic::LocalNumber& a, const padic::LocalNumber& b);

/// Exact square root of q when q is a perfect square, else the canonical root.
padic::LocalNumber default_sqrt_q(const padic::FieldConfig& cfg, std::int64_t q);

}  // namespace lcong
