#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcong/satake.hpp"

namespace lcong::whittaker {

using padic::LocalNumber;
using satake::SatakeParam;

/// Exponent vector a of the diagonal element diag(w^{a_1}, ..., w^{a_n}).
using Weight = std::vector<std::int64_t>;

bool is_dominant(const Weight& a);

/// coef * q^{q_half_exp / 2}; the zero value always has q_half_exp == 0.
struct WhittakerValue {
    LocalNumber coef;
    std::int64_t q_half_exp = 0;

    bool is_zero() const { return coef.is_zero(); }
};

/// sum_j a_j (2j - n - 1), j counted from 1.
std::int64_t q_half_exponent(const Weight& a);

/// Rational Schur value s_a(mu) for dominant a, computed as
/// e_n^{a_n} * det(h_{lambda_i - i + j}) with lambda = a - a_n.
LocalNumber schur_value(const SatakeParam& s, const Weight& a);

/// Unramified spherical Whittaker value W(w^a) normalized by W(1) = 1.
WhittakerValue whittaker_value(const SatakeParam& s, const Weight& a);

/// Caches e_i, h_k and powers of e_n so that many weights can be evaluated for
/// the same parameter.
class WhittakerEvaluator {
public:
    WhittakerEvaluator(const SatakeParam& s, std::int64_t max_part = 8);

    LocalNumber schur(const Weight& a);
    WhittakerValue value(const Weight& a);
    const SatakeParam& param() const { return s_; }

private:
    const LocalNumber& h(std::int64_t k);
    LocalNumber en_pow(std::int64_t c);

    SatakeParam s_;
    std::vector<LocalNumber> e_;
    std::vector<LocalNumber> h_;
};

/// coef * sqrt_q^m. Even m uses the exact power of q, so the result does not
/// depend on the chosen root; BadSquareRoot when sqrt_q^2 does not agree with q.
LocalNumber collapse(const WhittakerValue& w, std::int64_t q, const LocalNumber& sqrt_q);

struct CongruenceViolation {
    Weight weight;
    std::string reason;
};

struct CongruenceReport {
    std::size_t checked = 0;
    std::vector<CongruenceViolation> violations;

    bool passed() const { return violations.empty(); }
};

/// All dominant a with bound >= a_1 >= ... >= a_n >= -bound, lexicographic.
std::vector<Weight> dominant_weights(std::size_t n, std::int64_t bound);

/// Checks integrality and congruence modulo the maximal ideal of both
/// Whittaker functions on every dominant weight within the bound.
/// NotIntegral / NotCongruent when the hypotheses fail.
CongruenceReport check_congruence(const SatakeParam& s1, const SatakeParam& s2, std::int64_t bound);

/// Schur value from semistandard tableaux (n <= 4, |lambda| <= 8; TooLarge otherwise).
LocalNumber schur_oracle(const SatakeParam& s, const Weight& a);

/// det(mu_j^{a_l + n - l}) / prod_{j<l} (mu_j - mu_l).
LocalNumber bialternant_value(const SatakeParam& s, const Weight& a);

}  // namespace lcong::whittaker
