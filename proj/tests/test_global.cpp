#include <doctest.h>

#include <random>

#include "lcong/global.hpp"
#include "support.hpp"

using namespace lcong;
using namespace lcong::global;
using lcong::test::throws_kind;
using padic::FieldConfig;
using padic::LocalNumber;

namespace {

LocalNumber num(const FieldConfig& cfg, long n) { return LocalNumber::from_integer(cfg, n); }

KirillovTable identity_table(const FieldConfig& cfg) { return KirillovTable({{0, 0, {}, num(cfg, 1)}}); }

GlobalWhittakerSpec unramified_spec(const GroundField& F, const FieldConfig& cfg, long a, long b) {
    GlobalWhittakerSpec spec(F, cfg, Place::infinity());
    spec.set_place(Place::infinity(), Tabulated{identity_table(cfg), num(cfg, 1)});
    spec.set_default_rule({num(cfg, a), num(cfg, b)});
    return spec;
}

Place linear(const GroundField& F, ff::Elem c) { return Place::finite(F, Poly{F.field().neg(c), 1}); }

LocalPoint point_a1(const Place& v, std::int64_t a1) { return LocalPoint::make(v, LocalElement::exact_zero(v), a1); }

}  // namespace

TEST_CASE("cyclotomic values vanish on constant vectors") {
    const auto cfg = FieldConfig::make(7, 1);
    CycloValue s(cfg, 3, 3);
    for (int j = 0; j < 3; ++j) s += CycloValue::term(num(cfg, 5), 3, 3, j, 0);
    CHECK(s.is_zero());
    CHECK(s.valuation_bound() == padic::kInfinity);
    CHECK(s.embed().is_zero());

    const auto z = CycloValue::term(num(cfg, 1), 3, 3, 1, 0);
    CHECK_FALSE(z.is_zero());
    CHECK(z.embed().agrees_with(padic::primitive_pth_root(cfg, 3)));
    CHECK(z.reduce() == padic::primitive_pth_root(cfg, 3).reduce());

    // p = 2: zeta = -1.
    const auto cfg5 = FieldConfig::make(5, 1);
    auto a = CycloValue::term(num(cfg5, 3), 2, 2, 1, 0) + CycloValue::term(num(cfg5, 3), 2, 2, 0, 0);
    CHECK(a.is_zero());
    CHECK(CycloValue::term(num(cfg5, 3), 2, 2, 1, 0).embed().identical(num(cfg5, -3)));
}

TEST_CASE("cyclotomic half exponents use q exactly when even") {
    const auto cfg = FieldConfig::make(5, 2);
    const auto t = CycloValue::term(num(cfg, 1), 2, 2, 0, 4);
    CHECK(t.embed().identical(num(cfg, 4)));
    const auto h = CycloValue::term(num(cfg, 1), 2, 2, 0, 1);
    const auto r = h.embed();
    CHECK((r * r).agrees_with(num(cfg, 2)));
    CHECK(throws_kind([&] { (void)h.embed(num(cfg, 3)); }, ErrorKind::BadSquareRoot));
    CHECK(h.valuation_bound() == 0);
}

TEST_CASE("local value examples") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    const Place v = linear(F, 0);
    const LocalWhittakerDatum unr = Unramified{satake::SatakeParam(3, {num(cfg, 2), num(cfg, 5)})};
    const auto x = LocalElement::exact(v, 0, {Poly{1}});

    const auto one = local_value(F, cfg, unr, v, x, 0, 0, 0);
    CHECK(one.coef.identical(num(cfg, 1)));
    CHECK(one.half_exp == 0);
    CHECK(one.zeta_exp == 0);
    CHECK(local_value(F, cfg, unr, v, x, 0, 1, 0).coef.is_zero());

    // W(diag(pi, 1)) = q^{-1/2} (mu1 + mu2).
    const auto w1 = local_value(F, cfg, unr, v, x, 1, 0, 0);
    CHECK(w1.coef.identical(num(cfg, 7)));
    CHECK(w1.half_exp == -1);
    // Central shift multiplies by e_2 = 10.
    CHECK(local_value(F, cfg, unr, v, x, 0, 0, 1).coef.identical(num(cfg, 10)));

    // psi twist: psi_v(x) is trivial for x integral and nontrivial for 1/t.
    const auto xp = LocalElement::exact(v, -1, {Poly{1}});
    CHECK(local_value(F, cfg, unr, v, xp, 0, 0, 0).zeta_exp == 1);

    const LocalWhittakerDatum tab = Tabulated{KirillovTable({{0, 1, {Poly{1}}, num(cfg, 1)}}), num(cfg, 3)};
    CHECK(local_value(F, cfg, tab, v, x, 0, 0, 0).coef.identical(num(cfg, 1)));
    CHECK(local_value(F, cfg, tab, v, x, 1, 0, 0).coef.is_zero());
    CHECK(local_value(F, cfg, tab, v, x, 0, 0, 2).coef.identical(num(cfg, 9)));
}

TEST_CASE("Kirillov tables reject overlaps and look up cosets") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    const Place v = linear(F, 1);
    CHECK(throws_kind([&] { KirillovTable({{0, 0, {}, num(cfg, 1)}, {0, 1, {Poly{2}}, num(cfg, 2)}}); },
                      ErrorKind::InvalidInput));
    CHECK(throws_kind([&] { KirillovTable({{0, 1, {Poly{}}, num(cfg, 1)}}); }, ErrorKind::InvalidInput));
    const KirillovTable t({{0, 1, {Poly{1}}, num(cfg, 1)}, {0, 1, {Poly{2}}, num(cfg, 4)}, {2, 0, {}, num(cfg, -1)}});
    CHECK(t.lookup(cfg, LocalElement::exact(v, 0, {Poly{2}, Poly{1}})).identical(num(cfg, 4)));
    CHECK(t.lookup(cfg, LocalElement::exact(v, 2, {Poly{2}})).identical(num(cfg, -1)));
    CHECK(t.lookup(cfg, LocalElement::exact(v, 1, {Poly{2}})).is_zero());
    CHECK(t.min_valuation() == 0);
    CHECK(t.a_valued());
    CHECK(t == KirillovTable({{2, 0, {}, num(cfg, -1)}, {0, 1, {Poly{2}}, num(cfg, 4)}, {0, 1, {Poly{1}}, num(cfg, 1)}}));
}

TEST_CASE("spec validation") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    GlobalWhittakerSpec spec(F, cfg, Place::infinity());
    spec.set_default_rule({num(cfg, 1), num(cfg, 2)});
    CHECK(throws_kind([&] { spec.validate(); }, ErrorKind::InvalidInput));
    spec.set_place(Place::infinity(), Tabulated{identity_table(cfg), num(cfg, 1)});
    spec.validate();
    spec.set_place(linear(F, 0), Tabulated{KirillovTable({{0, 0, {}, num(cfg, 2)}}), num(cfg, 1)});
    CHECK(throws_kind([&] { spec.validate(); }, ErrorKind::InvalidInput));

    GlobalWhittakerSpec bare(F, cfg, Place::infinity());
    bare.set_place(Place::infinity(), Tabulated{identity_table(cfg), num(cfg, 1)});
    CHECK(throws_kind([&] { (void)bare.datum(linear(F, 0)); }, ErrorKind::IncompleteData));
    bare.set_degree_rule(1, {num(cfg, 1), num(cfg, 1)});
    CHECK(std::holds_alternative<Unramified>(bare.datum(linear(F, 0))));
    CHECK(throws_kind([&] { (void)bare.datum(Place::finite(F, Poly{1, 0, 1})); }, ErrorKind::IncompleteData));
    bare.set_degree_rule(2, {num(cfg, 1), num(cfg, 1)});
    CHECK(std::get<Unramified>(bare.datum(Place::finite(F, Poly{1, 0, 1}))).satake.q() == 9);
}

TEST_CASE("gamma support bounds") {
    for (std::int64_t p : {2, 3}) {
        const GroundField F(p, 1);
        const auto cfg = FieldConfig::make(p == 2 ? 5 : 7, 1);
        const auto spec = unramified_spec(F, cfg, 2, 3);
        const Place v = linear(F, 0);
        const auto id = gamma_support(spec, {});
        CHECK(id.size() == static_cast<std::size_t>(p - 1));
        for (const auto& g : id) CHECK(ff::degree(g.num()) == 0);
        CHECK(gamma_support(spec, {{v, point_a1(v, 1)}}).size() == static_cast<std::size_t>(p * p - 1));
        CHECK(gamma_support(spec, {{v, point_a1(v, -1)}}).empty());

        auto zero_spec = spec;
        zero_spec.set_place(Place::infinity(), Tabulated{KirillovTable(), num(cfg, 1)});
        CHECK(gamma_support(zero_spec, {}).empty());
    }
}

TEST_CASE("expansion examples") {
    for (std::int64_t p : {2, 3}) {
        const GroundField F(p, 1);
        const auto cfg = FieldConfig::make(p == 2 ? 5 : 7, 1);
        const auto spec = unramified_spec(F, cfg, 2, 3);
        CHECK(mirabolic_expand(spec, {}).identical(num(cfg, p - 1)));

        // The distinguished place is exempt from the normalization f(1) = 1.
        GlobalWhittakerSpec zero_spec(F, cfg, linear(F, 1));
        zero_spec.set_place(Place::infinity(), Tabulated{identity_table(cfg), num(cfg, 1)});
        zero_spec.set_place(linear(F, 1), Tabulated{KirillovTable(), num(cfg, 1)});
        zero_spec.set_default_rule({num(cfg, 2), num(cfg, 3)});
        CHECK(mirabolic_expand(zero_spec, {}).is_zero());
        CHECK(gamma_support(zero_spec, {}).empty());
    }
}

TEST_CASE("expansion agrees with a direct sum over the enumerated support") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    const auto spec = unramified_spec(F, cfg, 2, 5);
    const Place v = linear(F, 0);
    const MirabolicPoint g{{v, point_a1(v, 1)}};
    Evaluator ev(spec);
    // gamma = c + d t: only the ord_v >= -1 part of the support contributes;
    // the pole at t=0 gives weight (ord gamma + 1, 0).
    CycloValue direct = ev.zero();
    for (ff::Elem c = 0; c < 3; ++c)
        for (ff::Elem d = 0; d < 3; ++d) {
            if (c == 0 && d == 0) continue;
            const auto gamma = RationalFunction::make(F, Poly{c, d}, Poly{0, 1});
            direct += ev.term(gamma, g);
        }
    CHECK((ev.expand(g) - direct).is_zero());
}

TEST_CASE("Fourier coefficients recover single terms") {
    for (std::int64_t p : {2, 3}) {
        const GroundField F(p, 1);
        const auto cfg = FieldConfig::make(p == 2 ? 3 : 7, 1);
        auto spec = unramified_spec(F, cfg, 2, 3);
        const Place v0 = linear(F, 0), v1 = linear(F, 1);
        spec.set_place(v1, Unramified{satake::SatakeParam(p, {num(cfg, 1), num(cfg, 4)})});
        Evaluator ev(spec);
        const MirabolicPoint g{{v0, LocalPoint::make(v0, LocalElement::exact(v0, -1, {Poly{1}}), 1)},
                               {v1, point_a1(v1, 0)}};
        const auto D = *ev.support_divisor(g);
        Divisor wider = D;
        wider.add(Place::infinity(), 1);
        const Divisor U = fourier_level(wider);
        const PhiOracle phi = [&](const MirabolicPoint& h) { return ev.expand(h); };

        const auto support = ev.gamma_support(g);
        REQUIRE(!support.empty());
        for (const auto& gamma : support) {
            const auto fc = fourier_coefficient(F, cfg, phi, gamma, g, U);
            CHECK((fc - ev.term(gamma, g)).is_zero());
        }
        std::size_t outside = 0;
        for (const auto& gamma : ff::rr_elements(F, wider)) {
            if (std::find(support.begin(), support.end(), gamma) != support.end()) continue;
            CHECK(fourier_coefficient(F, cfg, phi, gamma, g, U).is_zero());
            CHECK(ev.term(gamma, g).is_zero());
            if (++outside == 10) break;
        }
        CHECK(outside > 0);
    }
}

TEST_CASE("Fourier coefficient of a constant vanishes") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    Divisor U;
    U.set(Place::infinity(), 3);
    U.set(linear(F, 2), 1);
    const auto c = CycloValue::term(num(cfg, 11), 3, 3, 0, 0);
    const PhiOracle phi = [&](const MirabolicPoint&) { return c; };
    CHECK(fourier_coefficient(F, cfg, phi, RationalFunction::t(F), {}, U).is_zero());
    CHECK(fourier_coefficient(F, cfg, phi, RationalFunction::constant(F, 2), {}, U).is_zero());
    // gamma outside the kernel set
    CHECK(fourier_coefficient(F, cfg, phi, RationalFunction::t(F).pow(4), {}, U).is_zero());
    CHECK((fourier_coefficient(F, cfg, phi, RationalFunction(F), {}, U) - c).is_zero());
}

namespace {

struct PipelinePair {
    GlobalWhittakerSpec a, b;
};

PipelinePair pipeline_specs(const GroundField& F, const FieldConfig& cfg, long ell) {
    GlobalWhittakerSpec a(F, cfg, Place::infinity());
    const KirillovTable inf_table({{0, 0, {}, num(cfg, 1)}, {1, 0, {}, num(cfg, 3)}});
    const Place s = linear(F, 2);
    const KirillovTable s_table({{0, 1, {Poly{1}}, num(cfg, 1)}, {0, 1, {Poly{2}}, num(cfg, 5)}, {1, 0, {}, num(cfg, 2)}});
    a.set_place(Place::infinity(), Tabulated{inf_table, num(cfg, 2)});
    a.set_place(s, Tabulated{s_table, num(cfg, 3)});
    GlobalWhittakerSpec b = a;
    const std::vector<std::pair<long, long>> mus{{2, 3}, {1, 6}, {4, 4}};
    const std::vector<Place> perturbed{linear(F, 0), linear(F, 1), Place::finite(F, Poly{1, 0, 1})};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& v = perturbed[i];
        const std::int64_t qv = checked_pow(F.order(), v.degree());
        const auto [m1, m2] = mus[i];
        a.set_place(v, Unramified{satake::SatakeParam(qv, {num(cfg, m1), num(cfg, m2)})});
        b.set_place(v, Unramified{satake::SatakeParam(qv, {num(cfg, m2 * (1 + ell * 2)), num(cfg, m1 * (1 + ell))})});
    }
    a.set_default_rule({num(cfg, 1), num(cfg, 2)});
    b.set_default_rule({num(cfg, 1), num(cfg, 2)});
    return {a, b};
}

}  // namespace

TEST_CASE("pipeline on identical specs gives exact zero differences") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(13, 1);
    const auto [a, b] = pipeline_specs(F, cfg, 13);
    const auto samples = default_sample_points(a, 11, 12);
    const auto rep = congruence_pipeline(a, a, samples);
    CHECK(rep.passed());
    for (const auto& r : rep.points) {
        CHECK((r.W1 - r.W2).is_zero());
        CHECK((r.phi1 - r.phi2).is_zero());
    }
}

TEST_CASE("pipeline on perturbed specs passes") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(13, 1);
    const auto [a, b] = pipeline_specs(F, cfg, 13);
    const auto samples = default_sample_points(a, 5, 20);
    CHECK(samples.size() == 20);
    const auto rep = congruence_pipeline(a, b, samples);
    CHECK(rep.passed());
    bool some_nontrivial = false;
    for (const auto& r : rep.points) {
        CHECK(r.v_W1 >= 0);
        CHECK(r.v_phi2 >= 0);
        CHECK((r.W1 - r.W2).valuation_bound() >= 1);
        CHECK((r.phi1 - r.phi2).valuation_bound() >= 1);
        some_nontrivial = some_nontrivial || !(r.phi1 - r.phi2).is_zero();
    }
    CHECK(some_nontrivial);
}

TEST_CASE("pipeline rejects mismatched specs") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(13, 1);
    auto [a, b] = pipeline_specs(F, cfg, 13);
    auto c = b;
    c.set_place(linear(F, 2), Tabulated{KirillovTable({{0, 0, {}, num(cfg, 1)}}), num(cfg, 3)});
    CHECK(throws_kind([&] { (void)congruence_pipeline(a, c, {}); }, ErrorKind::SpecMismatch));
    auto d = b;
    d.set_place(linear(F, 0), Unramified{satake::SatakeParam(3, {num(cfg, 2), num(cfg, 4)})});
    CHECK(throws_kind([&] { (void)congruence_pipeline(a, d, {}); }, ErrorKind::SpecMismatch));
    auto e = b;
    e.set_place(linear(F, 0), Unramified{satake::SatakeParam(3, {LocalNumber::from_rational(cfg, mpq_class(1, 13)), num(cfg, 2)})});
    CHECK(throws_kind([&] { (void)congruence_pipeline(a, e, {}); }, ErrorKind::SpecMismatch));
}

TEST_CASE("default sample points are deterministic and bounded") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(13, 1);
    const auto [a, b] = pipeline_specs(F, cfg, 13);
    const auto s1 = default_sample_points(a, 42);
    const auto s2 = default_sample_points(a, 42);
    CHECK(s1.size() == 50);
    CHECK(s1.size() == s2.size());
    Evaluator ev(a);
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1[i].size() == s2[i].size());
        for (const auto& [v, pt] : s1[i]) {
            CHECK(v.degree() <= 2);
            CHECK(std::abs(pt.y.valuation) <= 2);
            CHECK(pt.x.valuation >= -1);
            CHECK(std::abs(pt.central) <= 1);
        }
        const auto D = ev.support_divisor(s1[i]);
        if (D) CHECK(D->degree() <= 6);
    }
}

TEST_CASE("central character propagation") {
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    const std::vector<Place> S{linear(F, 2), Place::infinity()};
    const auto t = RationalFunction::t(F);

    CharacterData abs_value{LocalNumber::from_rational(cfg, mpq_class(1, 3)), {}};
    const auto rep0 = central_char_propagate(F, abs_value, abs_value, S, {t});
    CHECK(rep0.passed());
    for (const auto& r : rep0.ratios) CHECK(r.ratio.is_one());

    std::mt19937_64 rng(3);
    std::vector<RationalFunction> ys;
    while (ys.size() < 20) {
        Poly n(3), d(3);
        for (auto& c : n) c = static_cast<ff::Elem>(rng() % 3);
        for (auto& c : d) c = static_cast<ff::Elem>(rng() % 3);
        ff::trim(n);
        ff::trim(d);
        if (n.empty() || d.empty()) continue;
        ys.push_back(RationalFunction::make(F, n, d));
    }
    CharacterData chi1{num(cfg, 2), {}};
    CharacterData chi2{num(cfg, 2 * (1 + 7 * 3)), {}};
    const auto rep = central_char_propagate(F, chi1, chi2, S, ys);
    CHECK(rep.passed());
    CHECK(rep.ratios.size() == 2);
    for (const auto& r : rep.ratios) {
        CHECK(r.y.valuation(r.place) == 1);
        CHECK(r.chi1.identical(chi1.at(r.place)));
    }

    CharacterData partial{std::nullopt, {{linear(F, 0), num(cfg, 2)}}};
    CHECK(throws_kind([&] { (void)central_char_propagate(F, partial, partial, {}, {t + RationalFunction::constant(F, 1)}); },
                      ErrorKind::IncompleteData));

    CharacterData bad{num(cfg, 3), {}};
    CHECK_FALSE(central_char_propagate(F, chi1, bad, S, {t}).passed());
}
