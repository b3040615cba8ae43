#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "lcong/satake.hpp"
#include "support.hpp"

using namespace lcong;
using namespace lcong::satake;
using lcong::test::throws_kind;

namespace {

SatakeParam param(const FieldConfig& cfg, std::int64_t q, std::vector<std::int64_t> mu) {
    std::vector<LocalNumber> v;
    for (auto m : mu) v.push_back(LocalNumber::from_integer(cfg, m));
    return SatakeParam(q, v);
}

}  // namespace

TEST_CASE("elementary symmetric functions") {
    auto cfg = FieldConfig::make(7, 1);
    auto s = param(cfg, 4, {3, 2});
    CHECK(elementary_symmetric(s, 1).to_rational() == 5);
    CHECK(elementary_symmetric(s, 2).to_rational() == 6);
    CHECK(elementary_symmetric(param(cfg, 4, {1, 1, 1}), 2).to_rational() == 3);
    CHECK(elementary_symmetric(param(cfg, 4, {2, 3, 4}), 3).to_rational() == 24);
}

TEST_CASE("characteristic polynomials") {
    auto cfg = FieldConfig::make(7, 1);
    auto p = char_poly(param(cfg, 4, {3, 2}));
    CHECK(p.coeffs[0].to_rational() == -5);
    CHECK(p.coeffs[1].to_rational() == 6);
    CHECK(is_integral(p));

    auto ell = LocalNumber::from_integer(cfg, 7);
    auto pn = char_poly(SatakeParam(4, {ell, ell.inv()}));
    CHECK(pn.coeffs[0].to_rational() == -(mpq_class(7) + mpq_class(1, 7)));
    CHECK(pn.coeffs[1].to_rational() == 1);
    CHECK_FALSE(is_integral(pn));
    CHECK(throws_kind([&] { (void)reduce_char_poly(pn); }, ErrorKind::NotIntegral));
}

TEST_CASE("reduction of characteristic polynomials") {
    auto c5 = FieldConfig::make(5, 1);
    auto r = reduce_char_poly(char_poly(param(c5, 3, {3, 2})));
    CHECK(r.coeffs == std::vector<Residue>{Residue::from_int(c5, 1), Residue::from_int(c5, 0), Residue::from_int(c5, 1)});
    auto c3 = FieldConfig::make(3, 1);
    auto r3 = reduce_char_poly(char_poly(param(c3, 4, {1, 1})));
    CHECK(r3.coeffs == std::vector<Residue>{Residue::from_int(c3, 1), Residue::from_int(c3, 1), Residue::from_int(c3, 1)});
}

TEST_CASE("congruence of characteristic polynomials") {
    auto cfg = FieldConfig::make(5, 1);
    auto p1 = char_poly(param(cfg, 3, {1, 1}));
    CHECK(congruent(p1, char_poly(param(cfg, 3, {1, 6}))));
    CHECK(congruent(p1, p1));
    CHECK_FALSE(congruent(p1, char_poly(param(cfg, 3, {1, 2}))));
}

TEST_CASE("residue matching") {
    auto cfg = FieldConfig::make(5, 1);
    auto s1 = param(cfg, 3, {1, 2});
    CHECK(match_residues(s1, s1) == std::vector<std::size_t>{0, 1});
    CHECK(match_residues(s1, param(cfg, 3, {7, 26})) == std::vector<std::size_t>{1, 0});
    CHECK(throws_kind([&] { (void)match_residues(param(cfg, 3, {1, 1}), param(cfg, 3, {1, 2})); },
                      ErrorKind::NoMatching));
}

TEST_CASE("complete homogeneous values") {
    auto cfg = FieldConfig::make(5, 1);
    auto s = param(cfg, 3, {1, 1});
    CHECK(complete_homogeneous(s, 0).to_rational() == 1);
    CHECK(complete_homogeneous(s, 2).to_rational() == 3);
    auto t = param(cfg, 3, {2, 3, 4});
    CHECK(complete_homogeneous(t, 1).identical(elementary_symmetric(t, 1)));
}

TEST_CASE("parameter validation") {
    auto cfg = FieldConfig::make(5, 1);
    CHECK(throws_kind([&] { (void)param(cfg, 5, {1, 2}); }, ErrorKind::InvalidInput));
    CHECK(throws_kind([&] { (void)param(cfg, 6, {1, 2}); }, ErrorKind::InvalidInput));
    CHECK(throws_kind([&] { (void)param(cfg, 3, {1, 0}); }, ErrorKind::InvalidInput));
}

TEST_CASE("complete homogeneous matches monomial sums") {
    std::mt19937_64 rng(31);
    auto cfg = FieldConfig::make(7, 1);
    std::uniform_int_distribution<int> val(-9, 9);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int it = 0; it < 10; ++it) {
            std::vector<std::int64_t> mu;
            while (mu.size() < n) {
                int v = val(rng);
                if (v != 0) mu.push_back(v);
            }
            auto s = param(cfg, 2, mu);
            auto h = complete_homogeneous_all(s, 6);
            for (int k = 0; k <= 6; ++k) {
                // Sum of monomials mu^e over exponent vectors with |e| = k.
                mpq_class direct = 0;
                std::vector<int> e(n, 0);
                std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
                    if (i + 1 == n) {
                        e[i] = left;
                        mpq_class m = 1;
                        for (std::size_t j = 0; j < n; ++j)
                            for (int r = 0; r < e[j]; ++r) m *= mu[j];
                        direct += m;
                        return;
                    }
                    for (int x = 0; x <= left; ++x) {
                        e[i] = x;
                        rec(i + 1, left - x);
                    }
                };
                rec(0, k);
                CHECK(h[k].is_zero() == (direct == 0));
                if (direct != 0) CHECK(h[k].to_rational() == direct);
            }
        }
    }
}

TEST_CASE("integrality is equivalent to integral roots") {
    std::mt19937_64 rng(404);
    for (int it = 0; it < 100; ++it) {
        std::int64_t ell = std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4];
        auto cfg = FieldConfig::make(ell, 1);
        std::size_t n = 1 + rng() % 3;
        std::vector<LocalNumber> mu;
        std::int64_t minv = padic::kInfinity;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t unit;
            do unit = 1 + static_cast<std::int64_t>(rng() % 40);
            while (unit % ell == 0);
            std::int64_t v = static_cast<std::int64_t>(rng() % 5) - 2;
            mu.push_back(LocalNumber::from_integer(cfg, unit) * LocalNumber::ell_power(cfg, v));
            minv = std::min(minv, v);
        }
        std::int64_t q = ell == 2 ? 3 : 2;
        auto p = char_poly(SatakeParam(q, mu));
        CHECK(is_integral(p) == (minv >= 0));
        // Each mu_i is a root of its characteristic polynomial.
        for (const auto& m : mu) {
            LocalNumber acc = LocalNumber::one(cfg);
            for (const auto& c : p.coeffs) acc = acc * m + c;
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("congruence and matching agree") {
    std::mt19937_64 rng(99);
    auto cfg = FieldConfig::make(5, 2);
    for (int it = 0; it < 60; ++it) {
        std::size_t n = 1 + rng() % 3;
        auto rand_unit = [&] {
            std::vector<mpq_class> c{mpq_class(static_cast<long>(rng() % 5)), mpq_class(static_cast<long>(rng() % 5))};
            if (c[0] == 0 && c[1] == 0) c[0] = 1;
            c[0] += 5 * static_cast<long>(rng() % 7);
            return LocalNumber::from_coeffs(cfg, c);
        };
        std::vector<LocalNumber> a, b;
        for (std::size_t i = 0; i < n; ++i) a.push_back(rand_unit());
        for (std::size_t i = 0; i < n; ++i) b.push_back(rand_unit());
        if (rng() % 2) b = a;
        std::shuffle(b.begin(), b.end(), rng);
        SatakeParam s1(2, a), s2(2, b);
        bool cong = congruent(char_poly(s1), char_poly(s2));
        bool matched = true;
        try {
            auto sigma = match_residues(s1, s2);
            for (std::size_t j = 0; j < n; ++j) CHECK(a[j].reduce() == b[sigma[j]].reduce());
        } catch (const Error&) {
            matched = false;
        }
        CHECK(cong == matched);
        std::vector<Residue> roots;
        for (const auto& m : a) roots.push_back(m.reduce());
        CHECK(residue_poly_from_roots(roots) == reduce_char_poly(char_poly(s1)));
    }
}
