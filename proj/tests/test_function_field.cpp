#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "lcong/function_field.hpp"
#include "support.hpp"

using namespace lcong;
using namespace lcong::ff;
using lcong::test::throws_kind;

namespace {

Poly random_poly(const GroundField& F, std::mt19937_64& rng, int max_deg) {
    Poly p(static_cast<std::size_t>(rng() % (max_deg + 1)) + 1);
    for (auto& c : p) c = static_cast<Elem>(rng() % F.order());
    trim(p);
    return p;
}

RationalFunction random_rational(const GroundField& F, std::mt19937_64& rng, int max_deg) {
    for (;;) {
        Poly n = random_poly(F, rng, max_deg), d = random_poly(F, rng, max_deg);
        if (!n.empty() && !d.empty()) return RationalFunction::make(F, n, d);
    }
}

Place random_place(const GroundField& F, std::mt19937_64& rng, int max_deg) {
    if (rng() % 6 == 0) return Place::infinity();
    auto places = places_of_degree(F, 1 + static_cast<int>(rng() % max_deg));
    return places[rng() % places.size()];
}

Place fin(const GroundField& F, Poly p) { return Place::finite(F, std::move(p)); }

}  // namespace

TEST_CASE("polynomial factorization") {
    std::mt19937_64 rng(8);
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {3, 2}, {5, 1}, {7, 1}}) {
        GroundField F(p, f);
        for (int it = 0; it < 25; ++it) {
            Poly a = random_poly(F, rng, 4), b = random_poly(F, rng, 3);
            if (a.empty() || b.empty()) continue;
            Poly prod = F.mul(F.mul(a, b), a);
            auto fac = F.factor(prod);
            Poly back{1};
            for (const auto& [g, m] : fac) {
                CHECK(F.is_irreducible(g));
                CHECK(g.back() == 1);
                back = F.mul(back, F.pow(g, m));
            }
            CHECK(back == F.monic(prod));
            CHECK(std::is_sorted(fac.begin(), fac.end(),
                                 [](const auto& x, const auto& y) { return poly_compare(x.first, y.first) < 0; }));
        }
    }
    GroundField F2(2, 1);
    // t^4 + t = t (t + 1) (t^2 + t + 1) over F_2.
    auto fac = F2.factor(Poly{0, 1, 0, 0, 1});
    REQUIRE(fac.size() == 3);
    CHECK(fac[2].first == Poly{1, 1, 1});
    // Square of a degree-2 irreducible survives the p-th root step.
    auto sq = F2.factor(F2.pow(Poly{1, 1, 1}, 4));
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].second == 4);
}

TEST_CASE("irreducible counts follow the necklace formula") {
    GroundField F(2, 1);
    CHECK(F.monic_irreducibles(1).size() == 2);
    CHECK(F.monic_irreducibles(2).size() == 1);
    CHECK(F.monic_irreducibles(3).size() == 2);
    CHECK(F.monic_irreducibles(4).size() == 3);
    GroundField F3(3, 1);
    CHECK(F3.monic_irreducibles(2).size() == 3);
    GroundField F4(2, 2);
    CHECK(F4.monic_irreducibles(2).size() == 6);
}

TEST_CASE("expansions") {
    GroundField F(3, 1);
    auto t = RationalFunction::t(F);
    auto one = RationalFunction::constant(F, 1);
    auto e = expand_at(t.inv(), fin(F, {0, 1}), 4);
    CHECK(e.valuation == -1);
    CHECK(e.precision == 3);
    CHECK(e.digits[0] == Poly{1});
    CHECK(e.digits[1].empty());
    CHECK(expand_at(t, Place::infinity(), 3).valuation == -1);
    CHECK(expand_at(t + one, fin(F, {1, 1}), 3).valuation == 1);
    // 1/(1 - t) = 1 + t + t^2 + ... at (t).
    auto geo = expand_at(one / (one - t), fin(F, {0, 1}), 5);
    for (const auto& d : geo.digits) CHECK(d == Poly{1});
    CHECK(expand_at(RationalFunction(F), Place::infinity()).valuation == kInfinity);
}

TEST_CASE("expansion round trip") {
    std::mt19937_64 rng(12);
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        GroundField F(p, f);
        for (int it = 0; it < 30; ++it) {
            auto r = random_rational(F, rng, 4);
            auto v = random_place(F, rng, 2);
            auto e = expand_at(r, v, 6);
            CHECK(e.valuation == r.valuation(v));
            // r minus its truncated expansion vanishes to the precision.
            auto diff = r - to_rational(F, e);
            CHECK((diff.is_zero() || diff.valuation(v) >= e.precision));
            // Multiplication through the rational function agrees with expansion.
            auto g = random_rational(F, rng, 2);
            auto ge = mul(g, e);
            CHECK(ge.precision == e.precision + g.valuation(v));
            auto direct = expand_at(g * r, v, 8);
            CHECK(truncate(direct, ge.precision).digits == ge.digits);
            // Addition is digitwise.
            auto s = add(F, e, expand_at(g, v, 6));
            auto ds = expand_at(r + g, v, 12);
            CHECK(truncate(ds, std::min(s.precision, ds.precision)).digits ==
                  truncate(s, std::min(s.precision, ds.precision)).digits);
        }
    }
}

TEST_CASE("psi conductor") {
    GroundField F(3, 1);
    auto cfg = padic::FieldConfig::make(7, 1);
    auto t = RationalFunction::t(F);
    auto P = fin(F, {0, 1});
    CHECK(psi_local(F, cfg, expand_at(t + RationalFunction::constant(F, 2), P)).is_one());
    auto z = psi_local(F, cfg, expand_at(t.inv(), P));
    CHECK_FALSE(z.is_one());
    CHECK(z.pow(3).is_one());
    CHECK(psi_exponent(F, expand_at(t.inv(), P)) == 1);
    auto inf = Place::infinity();
    CHECK(psi_exponent(F, expand_at(t.pow(-2), inf)) == 0);
    CHECK(psi_exponent(F, expand_at(t.inv(), inf)) == 2);
    CHECK(throws_kind([&] { (void)psi_exponent(F, LocalElement::zero_mod(inf, 1)); }, ErrorKind::InsufficientPrecision));
    CHECK(psi_exponent(F, LocalElement::zero_mod(inf, 2)) == 0);
    // At a degree-2 place the t^{1} coefficient of the P^{-1} digit is the residue.
    auto Q = fin(F, {1, 0, 1});
    CHECK(psi_exponent(F, LocalElement::exact(Q, -1, {Poly{0, 1}})) == 1);
    CHECK(psi_exponent(F, LocalElement::exact(Q, -1, {Poly{1}})) == 0);
}

TEST_CASE("psi is trivial on principal adeles") {
    std::mt19937_64 rng(2024);
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        GroundField F(p, f);
        auto cfg = padic::FieldConfig::make(p == 2 ? 7 : 11, p == 5 ? 4 : (p == 3 ? 2 : 1));
        for (int it = 0; it < 40; ++it) {
            auto g = random_rational(F, rng, 5);
            CHECK(psi_global_exponent(F, principal_adele(g)) == 0);
        }
        CHECK(psi_global(F, cfg, Adele{}).is_one());
    }
}

TEST_CASE("Riemann-Roch spaces") {
    GroundField F(3, 1);
    CHECK(rr_space(F, Divisor{}).size() == 1);
    CHECK(rr_space(F, Divisor{})[0] == RationalFunction::constant(F, 1));
    Divisor D;
    D.set(fin(F, {0, 1}), 2);
    auto basis = rr_space(F, D);
    auto t = RationalFunction::t(F);
    REQUIRE(basis.size() == 3);
    for (const auto& b : {RationalFunction::constant(F, 1), t.inv(), t.pow(-2)})
        CHECK(std::find(basis.begin(), basis.end(), b) != basis.end());
    Divisor neg;
    neg.set(Place::infinity(), -1);
    CHECK(rr_space(F, neg).empty());
}

TEST_CASE("Riemann-Roch dimension and pole bounds") {
    std::mt19937_64 rng(77);
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        GroundField F(p, f);
        for (int it = 0; it < 30; ++it) {
            Divisor D;
            for (int k = 0; k < 4; ++k) D.add(random_place(F, rng, 3), static_cast<std::int64_t>(rng() % 7) - 3);
            auto basis = rr_space(F, D);
            CHECK(static_cast<std::int64_t>(basis.size()) == std::max<std::int64_t>(D.degree() + 1, 0));
            for (const auto& b : basis) {
                auto div = divisor_of(b) + D;
                for (const auto& [v, n] : div.terms()) CHECK(n >= 0);
            }
        }
    }
}

TEST_CASE("kernel set of psi") {
    GroundField F(2, 1);
    CHECK(psi_kernel_set(F, Divisor{}).empty());
    Divisor U;
    auto P = fin(F, {0, 1});
    U.set(P, 1);
    U.set(Place::infinity(), 3);
    auto ks = psi_kernel_set(F, U);
    CHECK(ks.size() == 7);
    for (const auto& g : ks) {
        CHECK_FALSE(g.is_zero());
        // gamma * P^1 and gamma * t^{-3} stay in the kernel.
        CHECK(psi_exponent(g * RationalFunction::t(F), P) == 0);
        CHECK(psi_exponent(g * RationalFunction::t(F).pow(-3), Place::infinity()) == 0);
    }
}

TEST_CASE("quotient index") {
    GroundField F(3, 1);
    CHECK(quotient_index(F, Divisor{}).value == 1);
    Divisor U;
    U.set(fin(F, {0, 1}), 2);
    auto qi = quotient_index(F, U);
    CHECK(qi.value == 3);
    CHECK(qi.p == 3);
    CHECK(qi.p_exponent == 1);
    CHECK(quotient_index_bruteforce(F, U) == 3);
    CHECK(coset_reps(F, U).size() == 3);
    CHECK(coset_reps(F, Divisor{}).size() == 1);
    CHECK(coset_reps(F, Divisor{})[0].empty());
    Divisor big;
    big.set(fin(F, {0, 1}), 20);
    CHECK(throws_kind([&] { (void)coset_reps(F, big, 1000); }, ErrorKind::TooLarge));
    Divisor bad;
    bad.set(Place::infinity(), -1);
    CHECK(throws_kind([&] { (void)quotient_index(F, bad); }, ErrorKind::InvalidInput));
}

TEST_CASE("coset representatives are pairwise inequivalent") {
    GroundField F(2, 2);
    Divisor U;
    U.set(fin(F, {0, 1}), 1);
    U.set(Place::infinity(), 2);
    auto reps = coset_reps(F, U);
    CHECK(reps.size() == 16);
    CHECK(quotient_index_bruteforce(F, U) == 16);
}

TEST_CASE("index equals brute-force orbit counting") {
    std::mt19937_64 rng(4);
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
        GroundField F(p, f);
        for (int it = 0; it < 15; ++it) {
            Divisor U;
            for (int k = 0; k < 3; ++k) U.add(random_place(F, rng, 2), static_cast<std::int64_t>(rng() % 3));
            std::int64_t s = 0;
            for (const auto& [v, m] : U.terms()) s += m * v.degree();
            if (s * f > 8) continue;
            auto qi = quotient_index(F, U);
            CHECK(qi.value == quotient_index_bruteforce(F, U));
            CHECK(static_cast<std::int64_t>(coset_reps(F, U).size()) == qi.value.get_si());
        }
    }
}

TEST_CASE("weak approximation") {
    GroundField F(3, 1);
    auto t = RationalFunction::t(F);
    auto P = fin(F, {0, 1});
    CHECK(weak_approx(F, {}).is_zero());
    auto one = RationalFunction::constant(F, 1);
    auto y = weak_approx(F, {{P, expand_at(one, P), 1}});
    CHECK((y - one).valuation(P) >= 1);

    auto inf = Place::infinity();
    auto y2 = weak_approx(F, {{P, expand_at(t.inv(), P), 1}, {inf, LocalElement::zero_mod(inf, 1), 1}});
    CHECK((y2 - t.inv()).valuation(P) >= 1);
    CHECK(y2.valuation(inf) >= 1);
}

TEST_CASE("weak approximation re-expands to its targets") {
    std::mt19937_64 rng(99);
    for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
        GroundField F(p, f);
        for (int it = 0; it < 30; ++it) {
            std::vector<ApproxConstraint> cs;
            std::set<Place> used;
            for (int k = 0; k < 3; ++k) {
                auto v = random_place(F, rng, 2);
                if (!used.insert(v).second) continue;
                auto target = expand_at(random_rational(F, rng, 3), v, 8);
                std::int64_t n = static_cast<std::int64_t>(rng() % 5) - 1;
                if (target.precision < n) continue;
                cs.push_back({v, target, n});
            }
            auto y = weak_approx(F, cs);
            for (const auto& c : cs) {
                auto diff = y - to_rational(F, truncate(c.target, c.precision));
                CHECK((diff.is_zero() || diff.valuation(c.place) >= c.precision));
            }
        }
    }
}
