#include "lcong/whittaker.hpp"

#include <algorithm>
#include <functional>

#include "lcong/determinant.hpp"

namespace lcong::whittaker {

using padic::FieldConfig;

bool is_dominant(const Weight& a) { return std::is_sorted(a.rbegin(), a.rend()); }

std::int64_t q_half_exponent(const Weight& a) {
    const auto n = static_cast<std::int64_t>(a.size());
    std::int64_t m = 0;
    for (std::int64_t j = 1; j <= n; ++j) m += a[j - 1] * (2 * j - n - 1);
    return m;
}

WhittakerEvaluator::WhittakerEvaluator(const SatakeParam& s, std::int64_t max_part)
    : s_(s), e_(satake::elementary_symmetric_all(s)), h_(satake::complete_homogeneous_all(s, std::max<std::int64_t>(max_part, 0) + static_cast<std::int64_t>(s.rank()))) {}

const LocalNumber& WhittakerEvaluator::h(std::int64_t k) {
    if (k >= static_cast<std::int64_t>(h_.size())) h_ = satake::complete_homogeneous_all(s_, 2 * k);
    return h_[k];
}

LocalNumber WhittakerEvaluator::en_pow(std::int64_t c) { return e_.back().pow(c); }

LocalNumber WhittakerEvaluator::schur(const Weight& a) {
    const std::size_t n = s_.rank();
    require(a.size() == n, ErrorKind::InvalidInput, "weight length differs from the rank");
    require(is_dominant(a), ErrorKind::InvalidInput, "schur_value needs a dominant weight");
    const FieldConfig& cfg = s_.config();
    const std::int64_t c = a.back();
    const LocalNumber zero = LocalNumber::zero(cfg);
    // Jacobi-Trudi on lambda = a - c; rows with lambda_i = 0 contribute a
    // unitriangular block, so only the first `len` rows are needed.
    std::size_t len = 0;
    while (len < n && a[len] - c > 0) ++len;
    std::vector<std::vector<LocalNumber>> m(len, std::vector<LocalNumber>(len, zero));
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = 0; j < len; ++j) {
            const std::int64_t k = (a[i] - c) - static_cast<std::int64_t>(i) + static_cast<std::int64_t>(j);
            if (k >= 0) m[i][j] = h(k);
        }
    }
    LocalNumber det = determinant(m, zero, LocalNumber::one(cfg));
    if (c == 0 || det.is_zero()) return det;
    return det * en_pow(c);
}

WhittakerValue WhittakerEvaluator::value(const Weight& a) {
    require(a.size() == s_.rank(), ErrorKind::InvalidInput, "weight length differs from the rank");
    if (!is_dominant(a)) return {LocalNumber::zero(s_.config()), 0};
    LocalNumber coef = schur(a);
    if (coef.is_zero()) return {coef, 0};
    return {coef, q_half_exponent(a)};
}

LocalNumber schur_value(const SatakeParam& s, const Weight& a) {
    std::int64_t span = a.empty() ? 0 : a.front() - a.back();
    return WhittakerEvaluator(s, span).schur(a);
}

WhittakerValue whittaker_value(const SatakeParam& s, const Weight& a) {
    std::int64_t span = a.empty() ? 0 : std::max<std::int64_t>(0, a.front() - a.back());
    return WhittakerEvaluator(s, span).value(a);
}

LocalNumber collapse(const WhittakerValue& w, std::int64_t q, const LocalNumber& sqrt_q) {
    padic::require_same_config(w.coef.config(), sqrt_q.config());
    const LocalNumber q_num = LocalNumber::from_integer(sqrt_q.config(), q);
    require(!sqrt_q.is_zero() && (sqrt_q * sqrt_q).agrees_with(q_num), ErrorKind::BadSquareRoot,
            "supplied square root does not square to q = " + std::to_string(q));
    if (w.is_zero()) return w.coef;
    if (w.q_half_exp % 2 == 0) return w.coef * q_num.pow(w.q_half_exp / 2);
    return w.coef * sqrt_q.pow(w.q_half_exp);
}

std::vector<Weight> dominant_weights(std::size_t n, std::int64_t bound) {
    std::vector<Weight> out;
    Weight cur;
    std::function<void(std::int64_t)> rec = [&](std::int64_t upper) {
        if (cur.size() == n) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t v = -bound; v <= upper; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(bound);
    return out;
}

CongruenceReport check_congruence(const SatakeParam& s1, const SatakeParam& s2, std::int64_t bound) {
    require(bound >= 0, ErrorKind::InvalidInput, "bound must be >= 0");
    padic::require_same_config(s1.config(), s2.config());
    require(s1.rank() == s2.rank(), ErrorKind::InvalidInput, "parameters of different rank");
    require(s1.q() == s2.q(), ErrorKind::InvalidInput, "parameters at places with different q");
    const auto p1 = satake::char_poly(s1), p2 = satake::char_poly(s2);
    require(satake::is_integral(p1), ErrorKind::NotIntegral, "first characteristic polynomial is not integral");
    require(satake::is_integral(p2), ErrorKind::NotIntegral, "second characteristic polynomial is not integral");
    require(satake::congruent(p1, p2), ErrorKind::NotCongruent, "characteristic polynomials differ modulo ell");

    WhittakerEvaluator ev1(s1, 2 * bound), ev2(s2, 2 * bound);
    CongruenceReport report;
    for (const auto& a : dominant_weights(s1.rank(), bound)) {
        ++report.checked;
        const WhittakerValue w1 = ev1.value(a), w2 = ev2.value(a);
        auto integral = [](const WhittakerValue& w) { return w.is_zero() || w.coef.valuation() >= 0; };
        if (!integral(w1) || !integral(w2)) {
            report.violations.push_back({a, "value is not integral"});
            continue;
        }
        const std::int64_t m1 = w1.is_zero() ? q_half_exponent(a) : w1.q_half_exp;
        const std::int64_t m2 = w2.is_zero() ? q_half_exponent(a) : w2.q_half_exp;
        if (m1 != m2) {
            report.violations.push_back({a, "q-exponents differ"});
            continue;
        }
        if (w1.coef.reduce() != w2.coef.reduce())
            report.violations.push_back({a, "residues differ: " + w1.coef.reduce().to_string() + " vs " +
                                                w2.coef.reduce().to_string()});
    }
    return report;
}

LocalNumber schur_oracle(const SatakeParam& s, const Weight& a) {
    const std::size_t n = s.rank();
    require(a.size() == n, ErrorKind::InvalidInput, "weight length differs from the rank");
    require(is_dominant(a), ErrorKind::InvalidInput, "schur_oracle needs a dominant weight");
    require(n <= 4, ErrorKind::TooLarge, "tableau oracle limited to n <= 4");
    const std::int64_t c = a.back();
    std::vector<std::int64_t> shape;
    std::int64_t size = 0;
    for (auto x : a) {
        if (x - c > 0) shape.push_back(x - c);
        size += x - c;
    }
    require(size <= 8, ErrorKind::TooLarge, "tableau oracle limited to |lambda| <= 8");
    const FieldConfig& cfg = s.config();

    // Fill cells row by row; entries are 0-based indices into mu.
    std::vector<std::vector<std::size_t>> tab;
    for (auto len : shape) tab.emplace_back(static_cast<std::size_t>(len), 0);
    LocalNumber total = LocalNumber::zero(cfg);
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t r, std::size_t col) {
        if (r == tab.size()) {
            LocalNumber mono = LocalNumber::one(cfg);
            for (const auto& row : tab)
                for (auto e : row) mono = mono * s.mu()[e];
            total = total + mono;
            return;
        }
        if (col == tab[r].size()) {
            fill(r + 1, 0);
            return;
        }
        std::size_t lo = 0;
        if (col > 0) lo = tab[r][col - 1];
        if (r > 0) lo = std::max(lo, tab[r - 1][col] + 1);
        for (std::size_t v = lo; v < n; ++v) {
            tab[r][col] = v;
            fill(r, col + 1);
        }
    };
    fill(0, 0);
    if (c == 0) return total;
    LocalNumber prod = LocalNumber::one(cfg);
    for (const auto& m : s.mu()) prod = prod * m;
    return total * prod.pow(c);
}

LocalNumber bialternant_value(const SatakeParam& s, const Weight& a) {
    const std::size_t n = s.rank();
    require(a.size() == n, ErrorKind::InvalidInput, "weight length differs from the rank");
    require(is_dominant(a), ErrorKind::InvalidInput, "bialternant needs a dominant weight");
    const FieldConfig& cfg = s.config();
    const LocalNumber zero = LocalNumber::zero(cfg), one = LocalNumber::one(cfg);
    std::vector<std::vector<LocalNumber>> m(n, std::vector<LocalNumber>(n, zero));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l)
            m[j][l] = s.mu()[j].pow(a[l] + static_cast<std::int64_t>(n - 1 - l));
    LocalNumber vandermonde = one;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = j + 1; l < n; ++l) vandermonde = vandermonde * (s.mu()[j] - s.mu()[l]);
    require(!vandermonde.is_zero(), ErrorKind::InvalidInput, "repeated Satake parameters: Vandermonde vanishes");
    return determinant(m, zero, one) / vandermonde;
}

}  // namespace lcong::whittaker
