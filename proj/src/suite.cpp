#include "lcong/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "lcong/function_field.hpp"
#include "lcong/global.hpp"
#include "lcong/satake.hpp"
#include "lcong/whittaker.hpp"

namespace lcong::suite {

namespace {

using ff::Divisor;
using ff::GroundField;
using ff::Place;
using ff::Poly;
using ff::RationalFunction;
using padic::FieldConfig;
using padic::LocalNumber;
using satake::SatakeParam;
using whittaker::Weight;

using Rng = std::mt19937_64;

std::size_t scaled(std::size_t full, double scale) {
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(full) * scale)));
}

std::int64_t pick(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Fisher-Yates with our own draws, so the order does not depend on the standard library.
std::vector<std::size_t> random_permutation(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    return perm;
}

class Configs {
public:
    const FieldConfig& get(std::int64_t ell, int d) {
        auto it = cache_.find({ell, d});
        if (it == cache_.end()) it = cache_.emplace(std::make_pair(ell, d), FieldConfig::make(ell, d)).first;
        return it->second;
    }

private:
    std::map<std::pair<std::int64_t, int>, FieldConfig> cache_;
};

struct LocalSetup {
    FieldConfig cfg;
    std::int64_t q;
};

LocalSetup random_local(Configs& configs, Rng& rng) {
    static constexpr std::int64_t ells[] = {2, 3, 5, 7, 11};
    static constexpr std::int64_t qs[] = {2, 3, 4, 5, 8, 9};
    for (;;) {
        const auto ell = ells[rng() % 5];
        const auto q = qs[rng() % 6];
        if (std::gcd(ell, q) != 1) continue;
        return {configs.get(ell, 1 + static_cast<int>(rng() % 2)), q};
    }
}

LocalNumber random_unit(const FieldConfig& cfg, Rng& rng) {
    const auto ell = cfg.ell();
    for (;;) {
        std::vector<mpq_class> c;
        for (int i = 0; i < cfg.degree(); ++i) c.emplace_back(static_cast<long>(pick(rng, -ell, 2 * ell)));
        auto x = LocalNumber::from_coeffs(cfg, c);
        if (!x.is_zero() && x.valuation() == 0) return x;
    }
}

std::vector<LocalNumber> random_units(const FieldConfig& cfg, Rng& rng, std::size_t n) {
    std::vector<LocalNumber> mu;
    for (std::size_t i = 0; i < n; ++i) mu.push_back(random_unit(cfg, rng));
    return mu;
}

Poly random_poly(const GroundField& F, Rng& rng, int max_deg) {
    Poly p(static_cast<std::size_t>(rng() % (max_deg + 1)) + 1);
    for (auto& c : p) c = static_cast<ff::Elem>(rng() % static_cast<std::uint64_t>(F.order()));
    ff::trim(p);
    return p;
}

RationalFunction random_rational(const GroundField& F, Rng& rng, int max_deg) {
    for (;;) {
        Poly n = random_poly(F, rng, max_deg), d = random_poly(F, rng, max_deg);
        if (!n.empty() && !d.empty()) return RationalFunction::make(F, n, d);
    }
}

Place random_place(const GroundField& F, Rng& rng, int max_deg) {
    if (rng() % 6 == 0) return Place::infinity();
    const auto places = ff::places_of_degree(F, 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg)));
    return places[rng() % places.size()];
}

Place linear(const GroundField& F, ff::Elem c) { return Place::finite(F, Poly{F.field().neg(c), 1}); }

// Collects pass/fail over many cases and keeps the first failure message.
struct Tally {
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first;

    void check(bool ok, const std::function<std::string()>& what) {
        ++cases;
        if (ok) return;
        if (failures++ == 0) first = what();
    }
    void finish(CriterionResult& r, const std::string& extra = {}) const {
        r.cases = cases;
        r.passed = failures == 0 && cases > 0;
        if (failures) r.detail = std::to_string(failures) + " of " + std::to_string(cases) + " failed; first: " + first;
        else r.detail = std::to_string(cases) + " checks" + (extra.empty() ? "" : ", " + extra);
    }
};

std::string weight_text(const Weight& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

void whittaker_normalization(CriterionResult& r, Rng& rng, double scale) {
    Configs configs;
    Tally t;
    for (std::size_t i = 0, n_sets = scaled(200, scale); i < n_sets; ++i) {
        const auto [cfg, q] = random_local(configs, rng);
        const auto n = static_cast<std::size_t>(pick(rng, 2, 4));
        std::vector<LocalNumber> mu;
        for (std::size_t k = 0; k < n; ++k) {
            auto u = random_unit(cfg, rng);
            mu.push_back(rng() % 4 == 0 ? u * LocalNumber::from_integer(cfg, cfg.ell()) : u);
        }
        const SatakeParam s(q, mu);
        const auto w0 = whittaker::whittaker_value(s, Weight(n, 0));
        t.check(w0.coef.is_exact() && w0.coef.is_one() && w0.q_half_exp == 0,
                [&] { return "W(1) = " + w0.coef.to_string(); });
        for (std::size_t k = 0, n_weights = scaled(50, scale); k < n_weights;) {
            Weight a(n);
            for (auto& x : a) x = pick(rng, -5, 5);
            if (whittaker::is_dominant(a)) continue;
            ++k;
            const auto w = whittaker::whittaker_value(s, a);
            t.check(w.is_zero() && w.q_half_exp == 0, [&] { return "nonzero at " + weight_text(a); });
        }
    }
    t.finish(r);
}

void schur_oracle(CriterionResult& r, Rng& rng, double scale) {
    Configs configs;
    Tally t;
    std::size_t bialternant_sets = 0;
    for (std::size_t i = 0, n_sets = scaled(50, scale); i < n_sets; ++i) {
        const auto [cfg, q] = random_local(configs, rng);
        const auto n = static_cast<std::size_t>(pick(rng, 1, 3));
        const SatakeParam s(q, random_units(cfg, rng, n));
        std::set<std::vector<std::int64_t>> residues;
        for (const auto& m : s.mu()) residues.insert(m.reduce().coeffs());
        const bool distinct = residues.size() == n;
        bialternant_sets += distinct;
        for (const auto& a : whittaker::dominant_weights(n, 4)) {
            if (a.back() < 0) continue;
            const auto sv = whittaker::schur_value(s, a);
            t.check((sv - whittaker::schur_oracle(s, a)).is_zero(), [&] { return "oracle differs at " + weight_text(a); });
            if (distinct)
                t.check((sv - whittaker::bialternant_value(s, a)).is_zero(),
                        [&] { return "bialternant differs at " + weight_text(a); });
        }
    }
    t.finish(r, std::to_string(bialternant_sets) + " sets with distinct residues");
}

void congruence_suite(CriterionResult& r, Rng& rng, double scale) {
    Configs configs;
    Tally t;
    std::size_t weights = 0;
    for (std::size_t i = 0, n_pairs = scaled(100, scale); i < n_pairs; ++i) {
        const auto [cfg, q] = random_local(configs, rng);
        const auto n = static_cast<std::size_t>(pick(rng, 1, 4));
        const auto mu = random_units(cfg, rng, n);
        const auto ell = LocalNumber::from_integer(cfg, cfg.ell());
        std::vector<LocalNumber> nu;
        for (const auto& m : mu) nu.push_back(m * (LocalNumber::one(cfg) + ell * random_unit(cfg, rng)));
        const SatakeParam s1(q, mu);
        const auto s2 = SatakeParam(q, nu).permuted(random_permutation(rng, n));
        const auto rep = whittaker::check_congruence(s1, s2, 4);
        weights += rep.checked;
        t.check(rep.passed(), [&] {
            return std::to_string(rep.violations.size()) + " violations, first at " +
                   weight_text(rep.violations.front().weight) + ": " + rep.violations.front().reason;
        });
    }
    t.finish(r, std::to_string(weights) + " weights");
}

void integrality(CriterionResult& r, Rng& rng, double scale) {
    Configs configs;
    Tally t;
    std::size_t integral = 0;
    for (std::size_t i = 0, n_sets = scaled(500, scale); i < n_sets; ++i) {
        const auto [cfg, q] = random_local(configs, rng);
        const auto n = static_cast<std::size_t>(pick(rng, 1, 4));
        std::vector<LocalNumber> mu;
        std::int64_t min_val = padic::kInfinity;
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t e = rng() % 3 == 0 ? pick(rng, -2, 2) : pick(rng, 0, 1);
            mu.push_back(random_unit(cfg, rng) * LocalNumber::ell_power(cfg, e));
            min_val = std::min(min_val, mu.back().valuation());
        }
        const bool got = satake::is_integral(satake::char_poly(SatakeParam(q, mu)));
        integral += got;
        t.check(got == (min_val >= 0), [&] { return "min valuation " + std::to_string(min_val); });
    }
    t.finish(r, std::to_string(integral) + " integral");
}

struct GlobalSetup {
    GroundField F;
    FieldConfig cfg;
};

std::vector<GlobalSetup> psi_setups(Configs& configs) {
    return {{GroundField(2, 1), configs.get(3, 1)},
            {GroundField(3, 1), configs.get(7, 1)},
            {GroundField(2, 2), configs.get(3, 1)},
            {GroundField(5, 1), configs.get(11, 1)}};
}

void psi_triviality(CriterionResult& r, Rng& rng, double scale) {
    Configs configs;
    Tally t;
    for (const auto& [F, cfg] : psi_setups(configs)) {
        for (std::size_t i = 0, n = scaled(100, scale); i < n; ++i) {
            const auto gamma = random_rational(F, rng, 5);
            const auto value = ff::psi_global(F, cfg, ff::principal_adele(gamma));
            t.check(value.is_exact() && value.is_one(), [&] { return "psi(" + gamma.to_string() + ") != 1"; });
        }
    }
    t.finish(r);
}

void riemann_roch(CriterionResult& r, Rng& rng, double scale) {
    Tally t;
    const GroundField fields[] = {GroundField(2, 1), GroundField(3, 1)};
    for (std::size_t i = 0, n = scaled(100, scale); i < n; ++i) {
        const auto& F = fields[i % 2];
        Divisor D;
        do {
            D = Divisor{};
            for (auto k = pick(rng, 0, 4); k > 0; --k) D.add(random_place(F, rng, 3), pick(rng, -4, 4));
        } while (std::abs(D.degree()) > 10);
        const auto basis = ff::rr_space(F, D);
        const auto expected = std::max<std::int64_t>(D.degree() + 1, 0);
        t.check(static_cast<std::int64_t>(basis.size()) == expected,
                [&] { return "dim L(" + D.to_string(F) + ") = " + std::to_string(basis.size()); });
        for (const auto& f : basis) {
            const Divisor E = ff::divisor_of(f) + D;
            bool ok = std::all_of(E.terms().begin(), E.terms().end(), [](const auto& kv) { return kv.second >= 0; });
            // Re-expand at every place that could carry a pole.
            std::set<Place> places;
            for (const auto& [v, m] : D.terms()) places.insert(v);
            const Divisor div_f = ff::divisor_of(f);
            for (const auto& [v, m] : div_f.terms()) places.insert(v);
            for (const auto& v : places) ok = ok && ff::expand_at(f, v, 4).valuation >= -D[v];
            t.check(ok, [&] { return f.to_string() + " escapes L(" + D.to_string(F) + ")"; });
        }
    }
    t.finish(r);
}

Divisor random_level(const GroundField& F, Rng& rng, std::int64_t max_weight, std::int64_t max_mult) {
    for (;;) {
        Divisor U;
        for (auto k = pick(rng, 1, 3); k > 0; --k) U.add(random_place(F, rng, 3), pick(rng, 1, max_mult));
        std::int64_t w = 0;
        for (const auto& [v, m] : U.terms()) w += m * v.degree();
        if (w <= max_weight) return U;
    }
}

void kernel_set(CriterionResult& r, Rng& rng, double scale) {
    Tally t;
    std::size_t members = 0;
    for (std::int64_t p : {2, 3}) {
        const GroundField F(p, 1);
        const auto tt = RationalFunction::t(F);
        for (std::size_t i = 0, n = scaled(20, scale); i < n; ++i) {
            const Divisor U = random_level(F, rng, 6, 6);
            const auto ks = ff::psi_kernel_set(F, U);
            const auto dim = static_cast<std::int64_t>(ff::rr_space(F, ff::psi_kernel_divisor(U)).size());
            mpz_class qd;
            mpz_ui_pow_ui(qd.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(dim));
            t.check(mpz_class(static_cast<unsigned long>(ks.size())) + 1 == qd, [&] { return "kernel set of U = " + U.to_string(F) + " has " + std::to_string(ks.size()) + " elements"; });
            members += ks.size();
            for (const auto& gamma : ks) {
                std::set<Place> places{Place::infinity()};
                for (const auto& [v, m] : U.terms()) places.insert(v);
                const Divisor div_g = ff::divisor_of(gamma);
                for (const auto& [v, m] : div_g.terms()) places.insert(v);
                bool ok = true;
                for (const auto& v : places) {
                    const std::int64_t m = U[v];
                    const std::int64_t last = std::max(m, ff::psi_conductor(v) - gamma.valuation(v) - 1);
                    const auto pi = v.is_infinity() ? tt.inv() : RationalFunction::from_poly(F, v.poly());
                    for (std::int64_t k = m; k <= last && ok; ++k)
                        for (std::int64_t e = 0; e < v.degree() && ok; ++e)
                            for (ff::Elem c = 1; c < F.order() && ok; ++c) {
                                const auto u = RationalFunction::constant(F, c) * tt.pow(e) * pi.pow(k);
                                ok = ff::psi_exponent(gamma * u, v) == 0;
                            }
                }
                t.check(ok, [&] { return "psi(" + gamma.to_string() + " U) is not trivial"; });
            }
        }
    }
    t.finish(r, std::to_string(members) + " kernel elements");
}

void quotient_index(CriterionResult& r, Rng& rng, double scale) {
    Tally t;
    std::size_t brute = 0;
    const GroundField fields[] = {GroundField(2, 1), GroundField(3, 1), GroundField(2, 2), GroundField(5, 1)};
    for (std::size_t i = 0, n = scaled(100, scale); i < n; ++i) {
        const auto& F = fields[i % 4];
        const Divisor U = random_level(F, rng, 8, 4);
        const auto qi = ff::quotient_index(F, U);
        mpz_class rest = qi.value, pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(F.characteristic()),
                      static_cast<unsigned long>(qi.p_exponent));
        while (rest % F.characteristic() == 0) rest /= F.characteristic();
        t.check(qi.p == F.characteristic() && qi.value == pe && rest == 1,
                [&] { return "index " + qi.value.get_str() + " of " + U.to_string(F) + " is not a p-power"; });
        if (qi.value <= 729) {
            ++brute;
            const auto b = ff::quotient_index_bruteforce(F, U);
            t.check(qi.value == b, [&] {
                return "index " + qi.value.get_str() + " != brute force " + std::to_string(b) + " for " + U.to_string(F);
            });
        }
    }
    t.finish(r, std::to_string(brute) + " brute-force comparisons");
}

void fourier_duality(CriterionResult& r, Rng& rng, double scale) {
    Tally t;
    Configs configs;
    std::size_t terms = 0;
    for (std::int64_t p : {2, 3}) {
        const GroundField F(p, 1);
        const auto& cfg = configs.get(p == 2 ? 3 : 7, 1);
        global::GlobalWhittakerSpec spec(F, cfg, Place::infinity());
        spec.set_place(Place::infinity(),
                       global::Tabulated{global::KirillovTable({{0, 0, {}, LocalNumber::one(cfg)}}), LocalNumber::one(cfg)});
        const auto degree_one = ff::places_of_degree(F, 1);
        for (const auto& v : degree_one) spec.set_place(v, global::Unramified{SatakeParam(p, random_units(cfg, rng, 2))});
        spec.set_default_rule(random_units(cfg, rng, 2));
        global::Evaluator ev(spec);
        const global::PhiOracle phi = [&](const global::MirabolicPoint& h) { return ev.expand(h); };

        for (std::size_t i = 0, n = scaled(4, scale); i < n;) {
            global::MirabolicPoint g;
            for (auto k = pick(rng, 1, 2); k > 0; --k) {
                const auto& v = degree_one[rng() % degree_one.size()];
                auto x = ff::LocalElement::exact_zero(v);
                if (rng() % 2) x = ff::LocalElement::exact(v, pick(rng, -1, 0), {Poly{static_cast<ff::Elem>(pick(rng, 1, p - 1))}});
                g.insert_or_assign(v, global::LocalPoint::make(v, x, pick(rng, -1, 1)));
            }
            const auto D = ev.support_divisor(g);
            if (!D) continue;
            ++i;
            Divisor wider = *D;
            wider.add(Place::infinity(), 1);
            const Divisor U = global::fourier_level(wider);
            const auto support = ev.gamma_support(g);
            for (const auto& gamma : support) {
                ++terms;
                const auto fc = global::fourier_coefficient(F, cfg, phi, gamma, g, U);
                t.check((fc - ev.term(gamma, g)).is_zero(), [&] { return "coefficient at " + gamma.to_string(); });
            }
            std::vector<RationalFunction> outside;
            for (const auto& gamma : ff::rr_elements(F, wider))
                if (std::find(support.begin(), support.end(), gamma) == support.end()) outside.push_back(gamma);
            const auto perm = random_permutation(rng, outside.size());
            for (std::size_t k = 0; k < std::min<std::size_t>(10, outside.size()); ++k) {
                const auto& gamma = outside[perm[k]];
                t.check(global::fourier_coefficient(F, cfg, phi, gamma, g, U).is_zero(),
                        [&] { return "nonzero coefficient off the support at " + gamma.to_string(); });
            }
        }
    }
    t.finish(r, std::to_string(terms) + " supported terms");
}

void pipeline(CriterionResult& r, Rng& rng, double scale) {
    Tally t;
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(13, 1);
    auto num = [&](long n) { return LocalNumber::from_integer(cfg, n); };
    global::GlobalWhittakerSpec a(F, cfg, Place::infinity());
    a.set_place(Place::infinity(),
                global::Tabulated{global::KirillovTable({{0, 0, {}, num(1)}, {1, 0, {}, num(3)}}), num(2)});
    a.set_place(linear(F, 2), global::Tabulated{global::KirillovTable({{0, 1, {Poly{1}}, num(1)},
                                                                       {0, 1, {Poly{2}}, num(5)},
                                                                       {1, 0, {}, num(2)}}),
                                                num(3)});
    global::GlobalWhittakerSpec b = a;
    const auto ell = num(13);
    for (const auto& v : {linear(F, 0), linear(F, 1), Place::finite(F, Poly{1, 0, 1})}) {
        const std::int64_t qv = checked_pow(3, v.degree());
        const auto mu = random_units(cfg, rng, 2);
        std::vector<LocalNumber> nu;
        for (const auto& m : mu) nu.push_back(m * (LocalNumber::one(cfg) + ell * random_unit(cfg, rng)));
        a.set_place(v, global::Unramified{SatakeParam(qv, mu)});
        b.set_place(v, global::Unramified{SatakeParam(qv, nu).permuted(random_permutation(rng, 2))});
    }
    const auto rule = random_units(cfg, rng, 2);
    a.set_default_rule(rule);
    b.set_default_rule(rule);
    const auto samples = global::default_sample_points(a, rng(), scaled(50, scale));
    const auto rep = global::congruence_pipeline(a, b, samples);
    std::size_t differing = 0;
    for (const auto& pt : rep.points) {
        differing += !(pt.phi1 - pt.phi2).is_zero();
        t.check(pt.congruent && pt.v_W1 >= 0 && pt.v_W2 >= 0 && pt.v_phi1 >= 0 && pt.v_phi2 >= 0,
                [&] { return "sample " + std::to_string(pt.index) + " not congruent"; });
    }
    t.finish(r, std::to_string(differing) + " points with phi1 != phi2");
}

void central_characters(CriterionResult& r, Rng& rng, double scale) {
    Tally t;
    const GroundField F(3, 1);
    const auto cfg = FieldConfig::make(7, 1);
    const std::vector<Place> S{Place::infinity(), linear(F, 2)};
    const auto ell = LocalNumber::from_integer(cfg, 7);
    const std::vector<LocalNumber> bases{LocalNumber::from_integer(cfg, 2), LocalNumber::from_rational(cfg, mpq_class(1, 3)),
                                         LocalNumber::from_integer(cfg, 3), LocalNumber::from_integer(cfg, -1),
                                         random_unit(cfg, rng)};
    for (const auto& base : bases) {
        std::vector<RationalFunction> ys;
        for (std::size_t i = 0, n = scaled(50, scale); i < n; ++i) ys.push_back(random_rational(F, rng, 3));
        const global::CharacterData chi1{base, {}};
        const global::CharacterData chi2{base * (LocalNumber::one(cfg) + ell * random_unit(cfg, rng)), {}};
        const auto rep = global::central_char_propagate(F, chi1, chi2, S, ys);
        for (const auto& pc : rep.products)
            t.check(pc.ok, [&] { return "product formula fails at " + pc.y.to_string(); });
        for (const auto& rc : rep.ratios)
            t.check(rc.congruent, [&] { return "ratio at " + rc.place.to_string(F) + " is " + rc.ratio.to_string(); });
    }
    t.finish(r);
}

struct Criterion {
    const char* name;
    double limit;
    void (*run)(CriterionResult&, Rng&, double);
};

constexpr Criterion kCriteria[kCriterionCount] = {
    {"Whittaker normalization and vanishing", 5, whittaker_normalization},
    {"Schur oracle equivalence", 30, schur_oracle},
    {"Whittaker congruence suite", 60, congruence_suite},
    {"char poly integrality", 5, integrality},
    {"psi triviality on k", 10, psi_triviality},
    {"Riemann-Roch dimension", 10, riemann_roch},
    {"psi kernel set", 30, kernel_set},
    {"quotient index p-power", 30, quotient_index},
    {"Fourier/Whittaker duality", 60, fourier_duality},
    {"congruence pipeline", 120, pipeline},
    {"central character propagation", 10, central_characters},
};

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed, double scale) {
    require(id >= 1 && id <= kCriterionCount, ErrorKind::InvalidInput, "criterion id out of range");
    require(scale > 0 && scale <= 1, ErrorKind::InvalidInput, "scale must lie in (0, 1]");
    const auto& c = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.name = c.name;
    r.time_limit = c.limit;
    Rng rng(seed + static_cast<std::uint64_t>(id) * 0x9E3779B97F4A7C15ULL);
    const auto start = std::chrono::steady_clock::now();
    try {
        c.run(r, rng, scale);
    } catch (const Error& e) {
        r.passed = false;
        r.error = e.kind();
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed, double scale) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) out.push_back(run_criterion(id, seed, scale));
    return out;
}

}  // namespace lcong::suite
