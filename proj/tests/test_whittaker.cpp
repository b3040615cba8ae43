#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "lcong/whittaker.hpp"
#include "support.hpp"

using namespace lcong;
using namespace lcong::whittaker;
using lcong::test::throws_kind;
using padic::FieldConfig;

namespace {

SatakeParam param(const FieldConfig& cfg, std::int64_t q, std::vector<std::int64_t> mu) {
    std::vector<LocalNumber> v;
    for (auto m : mu) v.push_back(LocalNumber::from_integer(cfg, m));
    return SatakeParam(q, v);
}

// Unit of Z_(ell)[X]/(F) with small random coefficients.
LocalNumber random_unit(const FieldConfig& cfg, std::mt19937_64& rng) {
    const auto ell = cfg.ell();
    for (;;) {
        std::vector<mpq_class> c;
        for (int i = 0; i < cfg.degree(); ++i) c.emplace_back(static_cast<long>(rng() % (3 * ell)) - static_cast<long>(ell));
        auto x = LocalNumber::from_coeffs(cfg, c);
        if (!x.is_zero() && x.valuation() == 0) return x;
    }
}

}  // namespace

TEST_CASE("dominance") {
    CHECK(is_dominant({0, 0, 0}));
    CHECK_FALSE(is_dominant({0, 1}));
    CHECK(is_dominant({3, 3, -1}));
}

TEST_CASE("schur values") {
    auto cfg = FieldConfig::make(5, 1);
    CHECK(schur_value(param(cfg, 3, {1, 1}), {0, 0}).is_one());
    CHECK(schur_value(param(cfg, 3, {1, 1}), {2, 0}).to_rational() == 3);
    CHECK(schur_value(param(cfg, 3, {3, 4}), {1, 1}).to_rational() == 12);
    CHECK(schur_value(param(cfg, 3, {3, 2}), {1, 0}).to_rational() == 5);
    CHECK(schur_value(param(cfg, 3, {3, 2}), {0, -1}).to_rational() == mpq_class(5, 6));
    CHECK(throws_kind([&] { (void)schur_value(param(cfg, 3, {3, 2}), {0, 1}); }, ErrorKind::InvalidInput));
}

TEST_CASE("whittaker values") {
    auto cfg = FieldConfig::make(5, 1);
    auto s = param(cfg, 3, {1, 1});
    auto w0 = whittaker_value(s, {0, 0});
    CHECK(w0.coef.is_one());
    CHECK(w0.q_half_exp == 0);
    auto wz = whittaker_value(s, {0, 1});
    CHECK(wz.is_zero());
    CHECK(wz.q_half_exp == 0);
    auto w = whittaker_value(s, {2, 0});
    CHECK(w.coef.to_rational() == 3);
    CHECK(w.q_half_exp == -2);
}

TEST_CASE("collapse") {
    auto cfg = FieldConfig::make(5, 2, 12);
    auto s = param(cfg, 3, {1, 1});
    auto w = whittaker_value(s, {2, 0});
    auto r = padic::sqrt_of_integer(cfg, 3);
    CHECK(collapse(w, 3, r).is_one());
    CHECK(collapse(w, 3, -r).is_one());
    CHECK(collapse({LocalNumber::one(cfg), 2}, 4, LocalNumber::from_integer(cfg, 2)).to_rational() == 4);
    CHECK(throws_kind([&] { (void)collapse(w, 3, LocalNumber::from_integer(cfg, 2)); }, ErrorKind::BadSquareRoot));
    auto odd = whittaker_value(s, {1, 0});
    CHECK(odd.q_half_exp == -1);
    CHECK(collapse(odd, 3, r).agrees_with(LocalNumber::from_integer(cfg, 2) / r));
}

TEST_CASE("tableau oracle") {
    auto cfg = FieldConfig::make(5, 1);
    auto s = param(cfg, 3, {2, 3, 4});
    CHECK(schur_oracle(s, {1, 0, 0}).to_rational() == 9);
    CHECK(schur_oracle(s, {1, 1, 0}).to_rational() == 26);
    CHECK(schur_oracle(param(cfg, 3, {1, 1, 1}), {2, 1, 0}).to_rational() == 8);
    CHECK(throws_kind([&] { (void)schur_oracle(s, {9, 0, 0}); }, ErrorKind::TooLarge));
    CHECK(throws_kind([&] { (void)schur_oracle(param(cfg, 3, {1, 1, 1, 1, 1}), {1, 0, 0, 0, 0}); }, ErrorKind::TooLarge));
}

TEST_CASE("congruence checks") {
    auto cfg = FieldConfig::make(5, 1);
    auto s1 = param(cfg, 3, {1, 2});
    CHECK(check_congruence(s1, s1, 3).passed());
    auto rep = check_congruence(s1, param(cfg, 3, {6, 27}), 4);
    CHECK(rep.passed());
    CHECK(rep.checked == dominant_weights(2, 4).size());
    CHECK(throws_kind([&] { (void)check_congruence(s1, param(cfg, 3, {1, 3}), 2); }, ErrorKind::NotCongruent));
    auto ell = LocalNumber::from_integer(cfg, 5);
    CHECK(throws_kind([&] { (void)check_congruence(SatakeParam(3, {ell, ell.inv()}), s1, 2); }, ErrorKind::NotIntegral));
}

TEST_CASE("dominant weight enumeration") {
    auto ws = dominant_weights(2, 1);
    CHECK(ws == std::vector<Weight>{{-1, -1}, {0, -1}, {0, 0}, {1, -1}, {1, 0}, {1, 1}});
    CHECK(std::is_sorted(ws.begin(), ws.end()));
}

TEST_CASE("schur value agrees with the oracle and the bialternant") {
    std::mt19937_64 rng(2718);
    for (std::int64_t ell : {3, 5, 7}) {
        auto cfg = FieldConfig::make(ell, 2);
        for (int it = 0; it < 6; ++it) {
            std::size_t n = 1 + rng() % 3;
            std::vector<LocalNumber> mu;
            for (std::size_t i = 0; i < n; ++i) mu.push_back(random_unit(cfg, rng));
            SatakeParam s(2, mu);
            bool distinct = true;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) distinct &= mu[i].reduce() != mu[j].reduce();
            WhittakerEvaluator ev(s, 4);
            for (const auto& a : dominant_weights(n, 3)) {
                if (a.back() < 0) continue;
                auto v = ev.schur(a);
                CHECK(v.identical(schur_oracle(s, a)));
                if (distinct) CHECK(v.identical(bialternant_value(s, a)));
            }
        }
    }
}

TEST_CASE("central translation and symmetry") {
    std::mt19937_64 rng(1618);
    auto cfg = FieldConfig::make(7, 1);
    for (int it = 0; it < 30; ++it) {
        std::size_t n = 2 + rng() % 3;
        std::vector<LocalNumber> mu;
        for (std::size_t i = 0; i < n; ++i) mu.push_back(random_unit(cfg, rng));
        SatakeParam s(4, mu);
        Weight a(n);
        for (auto& x : a) x = static_cast<std::int64_t>(rng() % 7) - 3;
        std::sort(a.rbegin(), a.rend());
        std::int64_t c = static_cast<std::int64_t>(rng() % 5) - 2;
        Weight ac = a;
        for (auto& x : ac) x += c;
        auto w = whittaker_value(s, a), wc = whittaker_value(s, ac);
        CHECK(wc.q_half_exp == w.q_half_exp);
        CHECK(wc.coef.identical(w.coef * satake::elementary_symmetric(s, n).pow(c)));

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        auto wp = whittaker_value(s.permuted(perm), a);
        CHECK(wp.coef.identical(w.coef));
        CHECK(wp.q_half_exp == w.q_half_exp);
        CHECK((w.is_zero() || w.coef.valuation() >= 0));
    }
}

TEST_CASE("perturbed parameters stay congruent") {
    std::mt19937_64 rng(31415);
    for (std::int64_t ell : {2, 3, 5}) {
        auto cfg = FieldConfig::make(ell, 2);
        auto ellnum = LocalNumber::from_integer(cfg, ell);
        for (int it = 0; it < 5; ++it) {
            std::size_t n = 2 + rng() % 2;
            std::vector<LocalNumber> mu, nu;
            for (std::size_t i = 0; i < n; ++i) {
                mu.push_back(random_unit(cfg, rng));
                nu.push_back(mu.back() * (LocalNumber::one(cfg) + ellnum * random_unit(cfg, rng)));
            }
            std::shuffle(nu.begin(), nu.end(), rng);
            std::int64_t q = ell == 3 ? 4 : 3;
            auto rep = check_congruence(SatakeParam(q, mu), SatakeParam(q, nu), 3);
            CHECK(rep.passed());
        }
    }
}
