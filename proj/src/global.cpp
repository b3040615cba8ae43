#include "lcong/global.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "lcong/galois_field.hpp"

namespace lcong::global {

namespace {

RationalFunction one(const GroundField& F) { return RationalFunction::constant(F, 1); }

bool is_one(const RationalFunction& r) { return r.num() == Poly{1} && r.den() == Poly{1}; }

LocalElement unit_one(const Place& v) { return LocalElement::exact(v, 0, {Poly{1}}); }

void require_rank_two(const std::vector<LocalNumber>& mu) {
    require(mu.size() == 2, ErrorKind::InvalidInput, "global data is implemented for GL_2 only (two Satake entries)");
}

satake::SatakeParam param_for(const GroundField& F, const Place& v, const std::vector<LocalNumber>& mu) {
    return satake::SatakeParam(checked_pow(F.order(), v.degree()), mu);
}

}  // namespace

// ---------------------------------------------------------------------------
// Kirillov tables

bool KirillovEntry::operator==(const KirillovEntry& o) const {
    return j == o.j && m == o.m && rep == o.rep && value.identical(o.value);
}

KirillovTable::KirillovTable(std::vector<KirillovEntry> entries) : entries_(std::move(entries)) {
    for (auto& e : entries_) {
        require(e.m >= 0, ErrorKind::InvalidInput, "Kirillov level must be >= 0");
        for (auto& d : e.rep) ff::trim(d);
        require(static_cast<std::int64_t>(e.rep.size()) == e.m, ErrorKind::InvalidInput,
                "Kirillov representative needs exactly m unit digits");
        require(e.m == 0 || !e.rep.front().empty(), ErrorKind::InvalidInput,
                "Kirillov representative must be a unit (nonzero leading digit)");
    }
    for (std::size_t a = 0; a < entries_.size(); ++a)
        for (std::size_t b = a + 1; b < entries_.size(); ++b) {
            const auto& x = entries_[a];
            const auto& y = entries_[b];
            if (x.j != y.j) continue;
            const auto k = static_cast<std::size_t>(std::min(x.m, y.m));
            require(!std::equal(x.rep.begin(), x.rep.begin() + static_cast<std::ptrdiff_t>(k), y.rep.begin()),
                    ErrorKind::InvalidInput, "Kirillov cosets overlap at valuation " + std::to_string(x.j));
        }
}

bool KirillovTable::a_valued() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.value.valuation() >= 0; });
}

std::optional<std::int64_t> KirillovTable::min_valuation() const {
    std::optional<std::int64_t> m;
    for (const auto& e : entries_)
        if (!e.value.is_zero()) m = m ? std::min(*m, e.j) : e.j;
    return m;
}

std::int64_t KirillovTable::max_level() const {
    std::int64_t m = 0;
    for (const auto& e : entries_) m = std::max(m, e.m);
    return m;
}

void KirillovTable::validate(const GroundField& F, const Place& v) const {
    for (const auto& e : entries_) {
        for (const auto& d : e.rep) {
            require(ff::degree(d) < v.degree(), ErrorKind::InvalidInput,
                    "Kirillov digit has degree >= deg v at " + v.to_string(F));
            for (auto c : d) require(c < F.order(), ErrorKind::InvalidInput, "Kirillov digit outside F_q");
        }
    }
}

LocalNumber KirillovTable::lookup(const FieldConfig& cfg, const LocalElement& y) const {
    require(!y.is_zero(), ErrorKind::UnsupportedPoint, "Kirillov functions live on nonzero elements");
    for (const auto& e : entries_) {
        if (e.j != y.valuation) continue;
        bool match = true;
        for (std::int64_t i = 0; i < e.m && match; ++i) match = y.digit(y.valuation + i) == e.rep[static_cast<std::size_t>(i)];
        if (match) return e.value;
    }
    return LocalNumber::zero(cfg);
}

bool KirillovTable::operator==(const KirillovTable& o) const {
    if (entries_.size() != o.entries_.size()) return false;
    // Order of entries is immaterial.
    for (const auto& e : entries_)
        if (std::find(o.entries_.begin(), o.entries_.end(), e) == o.entries_.end()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Points and local values

LocalPoint LocalPoint::identity(const Place& v) { return {LocalElement::exact_zero(v), unit_one(v), 0, 0}; }

LocalPoint LocalPoint::make(const Place& v, LocalElement x, std::int64_t a1, std::int64_t a2, std::int64_t central) {
    require(x.place == v, ErrorKind::InvalidInput, "point component lives at a different place");
    return {std::move(x), LocalElement::exact(v, a1, {Poly{1}}), a2, central};
}

namespace {

std::int64_t psi_of_product(const GroundField& F, const RationalFunction& gamma, const LocalElement& x) {
    if (x.is_zero()) return 0;
    if (x.is_exact()) return ff::psi_exponent(gamma * ff::to_rational(F, x), x.place);
    return ff::psi_exponent(F, is_one(gamma) ? x : ff::mul(gamma, x));
}

LocalValue evaluate_local(const GroundField& F, const FieldConfig& cfg, const LocalWhittakerDatum& d, const Place& v,
                          const LocalPoint& pt, const RationalFunction& gamma,
                          const std::function<whittaker::WhittakerValue(const satake::SatakeParam&, const whittaker::Weight&)>& css) {
    require(!pt.y.is_zero(), ErrorKind::UnsupportedPoint, "torus entry must be nonzero at " + v.to_string(F));
    const LocalNumber zero = LocalNumber::zero(cfg);
    const std::int64_t zexp = psi_of_product(F, gamma, pt.x);
    const std::int64_t c = pt.central;
    if (const auto* u = std::get_if<Unramified>(&d)) {
        const std::int64_t a1 = gamma.valuation(v) + pt.y.valuation + c;
        const whittaker::WhittakerValue w = css(u->satake, {a1, pt.a2 + c});
        if (w.is_zero()) return {zero, 0, 0};
        return {w.coef, zexp, w.q_half_exp * v.degree()};
    }
    const auto& tab = std::get<Tabulated>(d);
    if (tab.table.empty()) return {zero, 0, 0};
    const LocalElement y = is_one(gamma) ? pt.y : ff::mul(gamma, pt.y, std::max<std::int64_t>(1, tab.table.max_level() + 1));
    LocalNumber f = tab.table.lookup(cfg, ff::shift(y, -pt.a2));
    if (f.is_zero()) return {zero, 0, 0};
    if (c + pt.a2 != 0) f = f * tab.central.pow(c + pt.a2);
    return {f, zexp, 0};
}

}  // namespace

LocalValue local_value(const GroundField& F, const FieldConfig& cfg, const LocalWhittakerDatum& d, const Place& v,
                       const LocalPoint& pt) {
    return evaluate_local(F, cfg, d, v, pt, one(F),
                          [](const satake::SatakeParam& s, const whittaker::Weight& a) { return whittaker::whittaker_value(s, a); });
}

LocalValue local_value(const GroundField& F, const FieldConfig& cfg, const LocalWhittakerDatum& d, const Place& v,
                       const LocalElement& x, std::int64_t a1, std::int64_t a2, std::int64_t central) {
    return local_value(F, cfg, d, v, LocalPoint::make(v, x, a1, a2, central));
}

// ---------------------------------------------------------------------------
// Specs

GlobalWhittakerSpec::GlobalWhittakerSpec(GroundField F, FieldConfig cfg, Place w)
    : F_(std::move(F)), cfg_(std::move(cfg)), w_(std::move(w)) {
    require(F_.characteristic() != cfg_.ell(), ErrorKind::InvalidInput, "ell must differ from the characteristic p");
}

void GlobalWhittakerSpec::set_place(const Place& v, LocalWhittakerDatum d) {
    places_.insert_or_assign(v, std::move(d));
}

void GlobalWhittakerSpec::set_degree_rule(std::int64_t degree, std::vector<LocalNumber> mu) {
    require(degree >= 1, ErrorKind::InvalidInput, "rule degree must be >= 1");
    require_rank_two(mu);
    rules_.insert_or_assign(degree, std::move(mu));
}

void GlobalWhittakerSpec::set_default_rule(std::vector<LocalNumber> mu) {
    require_rank_two(mu);
    default_rule_ = std::move(mu);
}

std::optional<std::vector<LocalNumber>> GlobalWhittakerSpec::rule_for_degree(std::int64_t degree) const {
    if (auto it = rules_.find(degree); it != rules_.end()) return it->second;
    return default_rule_;
}

LocalWhittakerDatum GlobalWhittakerSpec::datum(const Place& v) const {
    if (auto it = places_.find(v); it != places_.end()) return it->second;
    require(!v.is_infinity(), ErrorKind::IncompleteData, "no data at the infinite place");
    auto mu = rule_for_degree(v.degree());
    require(mu.has_value(), ErrorKind::IncompleteData,
            "no local data for " + v.to_string(F_) + " and no Satake rule for degree " + std::to_string(v.degree()));
    return Unramified{param_for(F_, v, *mu)};
}

std::vector<Place> GlobalWhittakerSpec::S() const {
    std::vector<Place> out;
    for (const auto& [v, d] : places_)
        if (std::holds_alternative<Tabulated>(d)) out.push_back(v);
    return out;
}

void GlobalWhittakerSpec::validate() const {
    auto inf = places_.find(Place::infinity());
    require(inf != places_.end() && std::holds_alternative<Tabulated>(inf->second), ErrorKind::InvalidInput,
            "the infinite place must carry tabulated data");
    for (const auto& [v, d] : places_) {
        if (const auto* u = std::get_if<Unramified>(&d)) {
            require_rank_two(u->satake.mu());
            padic::require_same_config(u->satake.config(), cfg_);
            require(u->satake.q() == checked_pow(F_.order(), v.degree()), ErrorKind::InvalidInput,
                    "Satake data at " + v.to_string(F_) + " must use q_v = q^deg v");
            continue;
        }
        const auto& tab = std::get<Tabulated>(d);
        tab.table.validate(F_, v);
        padic::require_same_config(tab.central.config(), cfg_);
        require(!tab.central.is_zero(), ErrorKind::InvalidInput, "central character value must be nonzero");
        for (const auto& e : tab.table.entries()) padic::require_same_config(e.value.config(), cfg_);
        if (v != w_) {
            const LocalNumber f1 = tab.table.lookup(cfg_, unit_one(v));
            require(f1.agrees_with(LocalNumber::one(cfg_)), ErrorKind::InvalidInput,
                    "table at " + v.to_string(F_) + " must take the value 1 at 1");
        }
    }
    for (const auto& [deg, mu] : rules_)
        for (const auto& m : mu) padic::require_same_config(m.config(), cfg_);
}

// ---------------------------------------------------------------------------
// Evaluation

Evaluator::Evaluator(const GlobalWhittakerSpec& spec) : spec_(spec) { spec_.validate(); }

CycloValue Evaluator::zero() const {
    return CycloValue(spec_.config(), spec_.field().characteristic(), spec_.field().order());
}

whittaker::WhittakerEvaluator& Evaluator::hecke(const Place& v, const satake::SatakeParam& s) {
    auto it = cache_.find(v);
    if (it == cache_.end()) it = cache_.emplace(v, whittaker::WhittakerEvaluator(s)).first;
    return it->second;
}

LocalValue Evaluator::local(const Place& v, const LocalPoint& pt, const RationalFunction& gamma) {
    return evaluate_local(spec_.field(), spec_.config(), spec_.datum(v), v, pt, gamma,
                          [&](const satake::SatakeParam& s, const whittaker::Weight& a) { return hecke(v, s).value(a); });
}

CycloValue Evaluator::term(const RationalFunction& gamma, const MirabolicPoint& g) {
    require(!gamma.is_zero(), ErrorKind::InvalidInput, "gamma must be nonzero");
    const GroundField& F = spec_.field();
    std::set<Place> places;
    for (const auto& [v, pt] : g) places.insert(v);
    for (const auto& v : spec_.S()) places.insert(v);
    if (!is_one(gamma)) {
        const Divisor D = ff::divisor_of(gamma);
        for (const auto& [v, n] : D.terms()) places.insert(v);
    }

    LocalNumber coef = LocalNumber::one(spec_.config());
    std::int64_t zexp = 0, half = 0;
    for (const auto& v : places) {
        auto it = g.find(v);
        const LocalValue lv = local(v, it == g.end() ? LocalPoint::identity(v) : it->second, gamma);
        if (lv.coef.is_zero()) return zero();
        coef = coef * lv.coef;
        zexp += lv.zeta_exp;
        half += lv.half_exp;
    }
    return CycloValue::term(coef, F.characteristic(), F.order(), zexp, half);
}

std::optional<Divisor> Evaluator::support_divisor(const MirabolicPoint& g) const {
    Divisor D;
    for (const auto& v : spec_.S()) {
        const auto& tab = std::get<Tabulated>(spec_.places().at(v));
        const auto jmin = tab.table.min_valuation();
        if (!jmin) return std::nullopt;
        auto it = g.find(v);
        const LocalPoint pt = it == g.end() ? LocalPoint::identity(v) : it->second;
        require(!pt.y.is_zero(), ErrorKind::UnsupportedPoint, "torus entry must be nonzero");
        D.add(v, -(*jmin + pt.a2 - pt.y.valuation));
    }
    for (const auto& [v, pt] : g) {
        if (!std::holds_alternative<Unramified>(spec_.datum(v))) continue;
        require(!pt.y.is_zero(), ErrorKind::UnsupportedPoint, "torus entry must be nonzero");
        // Vanishing off dominant weights: ord gamma + ord y >= a2.
        D.add(v, -(pt.a2 - pt.y.valuation));
    }
    return D;
}

std::vector<RationalFunction> Evaluator::gamma_support(const MirabolicPoint& g, std::size_t cap) const {
    const auto D = support_divisor(g);
    if (!D) return {};
    return ff::rr_elements(spec_.field(), *D, cap);
}

CycloValue Evaluator::expand(const MirabolicPoint& g, std::size_t cap) {
    CycloValue acc = zero();
    for (const auto& gamma : gamma_support(g, cap)) acc += term(gamma, g);
    return acc;
}

std::vector<RationalFunction> gamma_support(const GlobalWhittakerSpec& spec, const MirabolicPoint& g, std::size_t cap) {
    return Evaluator(spec).gamma_support(g, cap);
}

CycloValue mirabolic_expand_exact(const GlobalWhittakerSpec& spec, const MirabolicPoint& g, std::size_t cap) {
    return Evaluator(spec).expand(g, cap);
}

LocalNumber mirabolic_expand(const GlobalWhittakerSpec& spec, const MirabolicPoint& g,
                             const std::optional<LocalNumber>& sqrt_q, std::size_t cap) {
    return mirabolic_expand_exact(spec, g, cap).embed(sqrt_q);
}

// ---------------------------------------------------------------------------
// Fourier coefficients

MirabolicPoint translate(const GroundField& F, const MirabolicPoint& g, const ff::Adele& u) {
    MirabolicPoint out = g;
    for (const auto& [v, uv] : u) {
        if (uv.is_zero()) continue;
        auto it = out.find(v);
        if (it == out.end()) it = out.emplace(v, LocalPoint::identity(v)).first;
        it->second.x = ff::add(F, it->second.x, uv);
    }
    return out;
}

Divisor fourier_level(const Divisor& D) {
    Divisor U;
    for (const auto& [v, n] : D.terms())
        if (!v.is_infinity()) U.set(v, std::max<std::int64_t>(n, 0));
    U.set(Place::infinity(), std::max<std::int64_t>(D[Place::infinity()] + ff::psi_conductor(Place::infinity()), 0));
    return U;
}

CycloValue fourier_coefficient(const GroundField& F, const FieldConfig& cfg, const PhiOracle& phi,
                               const RationalFunction& gamma, const MirabolicPoint& g, const Divisor& U,
                               std::size_t cap) {
    const std::int64_t p = F.characteristic();
    CycloValue acc(cfg, p, F.order());
    if (!gamma.is_zero()) {
        const Divisor K = ff::psi_kernel_divisor(U);
        const Divisor D = ff::divisor_of(gamma);
        for (const auto& [v, n] : D.terms())
            if (n < -K[v]) return acc;
    }
    const auto reps = ff::coset_reps(F, U, cap);
    for (const auto& u : reps) {
        std::int64_t e = 0;
        if (!gamma.is_zero())
            for (const auto& [v, uv] : u) e += ff::psi_exponent(gamma * ff::to_rational(F, uv), v);
        acc += phi(translate(F, g, u)).times_zeta(-e);
    }
    const mpq_class inv_index(1, static_cast<long>(reps.size()));
    return acc.scaled(LocalNumber::from_rational(cfg, inv_index));
}

// ---------------------------------------------------------------------------
// Pipeline

void check_pipeline_compatible(const GlobalWhittakerSpec& a, const GlobalWhittakerSpec& b) {
    require(a.field() == b.field(), ErrorKind::SpecMismatch, "specs live over different constant fields");
    require(a.config() == b.config(), ErrorKind::SpecMismatch, "specs use different coefficient fields");
    require(a.distinguished() == b.distinguished(), ErrorKind::SpecMismatch, "specs use different distinguished places");
    const GroundField& F = a.field();
    const std::vector<Place> S = a.S();
    require(S == b.S(), ErrorKind::SpecMismatch, "specs have different tabulated places");
    for (const auto& v : S) {
        const auto& ta = std::get<Tabulated>(a.places().at(v));
        const auto& tb = std::get<Tabulated>(b.places().at(v));
        require(ta.table == tb.table, ErrorKind::SpecMismatch, "tables differ at " + v.to_string(F));
        require(ta.central.identical(tb.central), ErrorKind::SpecMismatch,
                "central character values differ at " + v.to_string(F));
    }
    auto check_pair = [&](const satake::SatakeParam& s1, const satake::SatakeParam& s2, const std::string& where) {
        const auto c1 = satake::char_poly(s1), c2 = satake::char_poly(s2);
        require(satake::is_integral(c1) && satake::is_integral(c2), ErrorKind::SpecMismatch,
                "Satake data is not integral at " + where);
        require(satake::congruent(c1, c2), ErrorKind::SpecMismatch, "Satake data is not congruent at " + where);
    };
    std::set<Place> explicit_places;
    for (const auto& [v, d] : a.places()) explicit_places.insert(v);
    for (const auto& [v, d] : b.places()) explicit_places.insert(v);
    for (const auto& v : explicit_places) {
        if (std::find(S.begin(), S.end(), v) != S.end()) continue;
        const auto da = a.datum(v), db = b.datum(v);
        require(std::holds_alternative<Unramified>(da) && std::holds_alternative<Unramified>(db),
                ErrorKind::SpecMismatch, "data kinds differ at " + v.to_string(F));
        check_pair(std::get<Unramified>(da).satake, std::get<Unramified>(db).satake, v.to_string(F));
    }
    std::set<std::int64_t> degrees;
    for (const auto& [d, mu] : a.degree_rules()) degrees.insert(d);
    for (const auto& [d, mu] : b.degree_rules()) degrees.insert(d);
    for (auto d : degrees) {
        const auto ma = a.rule_for_degree(d), mb = b.rule_for_degree(d);
        require(ma.has_value() == mb.has_value(), ErrorKind::SpecMismatch,
                "only one spec has a Satake rule for degree " + std::to_string(d));
        const std::int64_t qd = checked_pow(F.order(), d);
        check_pair(satake::SatakeParam(qd, *ma), satake::SatakeParam(qd, *mb), "degree " + std::to_string(d));
    }
    require(a.default_rule().has_value() == b.default_rule().has_value(), ErrorKind::SpecMismatch,
            "only one spec has a default Satake rule");
    if (a.default_rule())
        check_pair(satake::SatakeParam(F.order(), *a.default_rule()), satake::SatakeParam(F.order(), *b.default_rule()),
                   "the default rule");
}

bool PipelineReport::passed() const {
    return std::all_of(points.begin(), points.end(), [](const PointReport& r) { return r.congruent; });
}

namespace {

std::int64_t certified_valuation(const CycloValue& x, const std::optional<LocalNumber>& sqrt_q) {
    const std::int64_t b = x.valuation_bound();
    if (b >= 0) return b;
    return x.embed(sqrt_q).valuation();
}

std::optional<padic::Residue> residue_if_integral(const CycloValue& x, std::int64_t val,
                                                  const std::optional<LocalNumber>& sqrt_q) {
    if (val < 0) return std::nullopt;
    return x.reduce(sqrt_q);
}

}  // namespace

PipelineReport congruence_pipeline(const GlobalWhittakerSpec& spec1, const GlobalWhittakerSpec& spec2,
                                   const std::vector<MirabolicPoint>& samples,
                                   const std::optional<LocalNumber>& sqrt_q, std::size_t cap) {
    check_pipeline_compatible(spec1, spec2);
    Evaluator e1(spec1), e2(spec2);
    const RationalFunction unit = one(spec1.field());
    PipelineReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& g = samples[i];
        CycloValue W1 = e1.term(unit, g), W2 = e2.term(unit, g);
        const auto support = e1.gamma_support(g, cap);
        CycloValue phi1 = e1.zero(), phi2 = e2.zero();
        for (const auto& gamma : support) {
            phi1 += e1.term(gamma, g);
            phi2 += e2.term(gamma, g);
        }
        const std::int64_t vW1 = certified_valuation(W1, sqrt_q), vW2 = certified_valuation(W2, sqrt_q);
        const std::int64_t vp1 = certified_valuation(phi1, sqrt_q), vp2 = certified_valuation(phi2, sqrt_q);
        PointReport r{i, W1, W2, phi1, phi2, vW1, vW2, vp1, vp2,
                      residue_if_integral(W1, vW1, sqrt_q), residue_if_integral(W2, vW2, sqrt_q),
                      residue_if_integral(phi1, vp1, sqrt_q), residue_if_integral(phi2, vp2, sqrt_q),
                      support.size(), false};
        r.congruent = r.r_W1 && r.r_W2 && r.r_phi1 && r.r_phi2 && *r.r_W1 == *r.r_W2 && *r.r_phi1 == *r.r_phi2;
        report.points.push_back(std::move(r));
    }
    return report;
}

std::vector<MirabolicPoint> default_sample_points(const GlobalWhittakerSpec& spec, std::uint64_t seed,
                                                  std::size_t count, std::int64_t max_support_degree) {
    const GroundField& F = spec.field();
    std::vector<Place> candidates = ff::places_of_degree(F, 1);
    for (const auto& v : ff::places_of_degree(F, 2)) candidates.push_back(v);
    candidates.push_back(Place::infinity());

    std::mt19937_64 rng(seed);
    auto uniform = [&](std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
    };
    auto random_digit = [&](const Place& v, bool nonzero) {
        for (;;) {
            Poly d(static_cast<std::size_t>(v.degree()));
            for (auto& c : d) c = static_cast<ff::Elem>(uniform(0, F.order() - 1));
            ff::trim(d);
            if (!nonzero || !d.empty()) return d;
        }
    };

    Evaluator ev(spec);
    std::vector<MirabolicPoint> out{MirabolicPoint{}};
    for (std::size_t attempt = 0; out.size() < count && attempt < 100 * count; ++attempt) {
        const std::size_t size = uniform(0, 9) < 7 ? 1 : 2;
        std::set<Place> chosen;
        while (chosen.size() < size) chosen.insert(candidates[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(candidates.size()) - 1))]);
        MirabolicPoint g;
        for (const auto& v : chosen) {
            LocalElement x = LocalElement::exact_zero(v);
            if (uniform(0, 2) != 0) {
                std::vector<Poly> digits{random_digit(v, true)};
                if (uniform(0, 1)) digits.push_back(random_digit(v, false));
                x = LocalElement::exact(v, uniform(-1, 1), std::move(digits));
            }
            g.emplace(v, LocalPoint::make(v, std::move(x), uniform(-2, 2), 0, uniform(-1, 1)));
        }
        const auto D = ev.support_divisor(g);
        if (D && D->degree() > max_support_degree) continue;
        out.push_back(std::move(g));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Central characters

LocalNumber CharacterData::at(const Place& v) const {
    if (auto it = values.find(v); it != values.end()) return it->second;
    require(degree_base.has_value(), ErrorKind::IncompleteData, "character value missing at a place of degree " +
                                                                    std::to_string(v.degree()));
    return degree_base->pow(v.degree());
}

bool CentralCharReport::passed() const {
    return std::all_of(products.begin(), products.end(), [](const auto& c) { return c.ok; }) &&
           std::all_of(ratios.begin(), ratios.end(), [](const auto& c) { return c.congruent; });
}

namespace {

LocalNumber character_product(const CharacterData& chi, const Divisor& D, const std::vector<Place>& skip,
                              const FieldConfig& cfg) {
    LocalNumber prod = LocalNumber::one(cfg);
    for (const auto& [v, n] : D.terms()) {
        if (std::find(skip.begin(), skip.end(), v) != skip.end()) continue;
        prod = prod * chi.at(v).pow(n);
    }
    return prod;
}

FieldConfig config_of(const CharacterData& chi) {
    if (chi.degree_base) return chi.degree_base->config();
    require(!chi.values.empty(), ErrorKind::IncompleteData, "character data is empty");
    return chi.values.begin()->second.config();
}

}  // namespace

CentralCharReport central_char_propagate(const GroundField& F, const CharacterData& chi1, const CharacterData& chi2,
                                         const std::vector<Place>& S, const std::vector<RationalFunction>& samples) {
    const FieldConfig cfg = config_of(chi1);
    padic::require_same_config(cfg, config_of(chi2));
    const LocalNumber unit = LocalNumber::one(cfg);
    CentralCharReport report;
    for (const auto& y : samples) {
        require(!y.is_zero(), ErrorKind::InvalidInput, "principal samples must be nonzero");
        const Divisor D = ff::divisor_of(y);
        LocalNumber p1 = character_product(chi1, D, {}, cfg), p2 = character_product(chi2, D, {}, cfg);
        const bool ok = p1.agrees_with(unit) && p2.agrees_with(unit);
        report.products.push_back({y, std::move(p1), std::move(p2), ok});
    }
    for (const auto& w : S) {
        std::vector<ff::ApproxConstraint> cons;
        cons.push_back({w, LocalElement::exact(w, 1, {Poly{1}}), 2});
        for (const auto& v : S)
            if (v != w) cons.push_back({v, unit_one(v), 1});
        const RationalFunction y = ff::weak_approx(F, cons);
        const Divisor D = ff::divisor_of(y);
        // chi_w(pi_w) = prod_{v not in S} chi_v(y)^{-1}, the S-components being trivial on units.
        LocalNumber d1 = character_product(chi1, D, S, cfg).inv();
        LocalNumber d2 = character_product(chi2, D, S, cfg).inv();
        LocalNumber ratio = d1 / d2;
        const bool congruent = ratio.valuation() == 0 && difference_valuation(ratio, unit) >= 1;
        report.ratios.push_back({w, y, std::move(d1), std::move(d2), std::move(ratio), congruent});
    }
    return report;
}

}  // namespace lcong::global
