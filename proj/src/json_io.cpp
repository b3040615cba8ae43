#include "lcong/json_io.hpp"

#include <algorithm>

namespace lcong::io {

namespace {

const Json& field(const Json& j, const char* key) {
    require(j.is_object(), ErrorKind::InvalidInput, std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    require(it != j.end(), ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t integer(const Json& j, const char* what) {
    require(j.is_number_integer(), ErrorKind::InvalidInput, std::string(what) + " must be an integer");
    return j.get<std::int64_t>();
}

std::int64_t integer_field(const Json& j, const char* key) { return integer(field(j, key), key); }

std::int64_t integer_or(const Json& j, const char* key, std::int64_t fallback) {
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? fallback : integer(*it, key);
}

const Json& array(const Json& j, const char* what) {
    require(j.is_array(), ErrorKind::InvalidInput, std::string(what) + " must be an array");
    return j;
}

mpq_class rational_scalar(const Json& j) {
    if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<std::int64_t>()));
    require(j.is_string(), ErrorKind::InvalidInput, "rational coefficients are integers or \"a/b\" strings");
    mpq_class r;
    require(r.set_str(j.get<std::string>(), 10) == 0, ErrorKind::InvalidInput, "malformed rational '" + j.get<std::string>() + "'");
    require(r.get_den() != 0, ErrorKind::InvalidInput, "zero denominator");
    r.canonicalize();
    return r;
}

mpz_class integer_scalar(const Json& j) {
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<std::int64_t>()));
    require(j.is_string(), ErrorKind::InvalidInput, "unit digits are integers or decimal strings");
    mpz_class z;
    require(z.set_str(j.get<std::string>(), 10) == 0, ErrorKind::InvalidInput, "malformed integer");
    return z;
}

std::vector<std::int64_t> int_list(const Json& j, const char* what) {
    std::vector<std::int64_t> out;
    for (const auto& x : array(j, what)) out.push_back(integer(x, what));
    return out;
}

}  // namespace

void check_schema_version(const Json& doc) {
    require(doc.is_object(), ErrorKind::InvalidInput, "input must be a JSON object");
    auto it = doc.find("schema_version");
    require(it != doc.end(), ErrorKind::InvalidInput, "missing schema_version");
    const bool ok = (it->is_string() && it->get<std::string>().rfind("1.", 0) == 0) ||
                    (it->is_number_integer() && it->get<std::int64_t>() == 1);
    require(ok, ErrorKind::InvalidInput, "unsupported schema_version " + it->dump() + " (expected 1.x)");
}

padic::FieldConfig field_config_from(const Json& j) {
    std::vector<std::int64_t> modulus;
    for (const char* key : {"modulus_coeffs", "modulus"})
        if (auto it = j.find(key); it != j.end() && !it->is_null()) modulus = int_list(*it, key);
    return padic::FieldConfig::make(integer_field(j, "ell"), static_cast<int>(integer_or(j, "d", 1)),
                                    static_cast<int>(integer_or(j, "precision", 32)), std::move(modulus));
}

Json to_json(const padic::FieldConfig& cfg) {
    return Json{{"ell", cfg.ell()}, {"d", cfg.degree()}, {"modulus_coeffs", cfg.modulus()}, {"precision", cfg.precision()}};
}

ff::GroundField ground_field_from(const Json& j) {
    std::vector<std::int64_t> modulus;
    if (auto it = j.find("modulus"); it != j.end() && !it->is_null()) modulus = int_list(*it, "modulus");
    return ff::GroundField(integer_field(j, "p"), static_cast<int>(integer_or(j, "f", 1)), std::move(modulus));
}

Json to_json(const ff::GroundField& F) {
    return Json{{"p", F.characteristic()}, {"f", F.degree()}, {"q", F.order()}, {"modulus", F.modulus()}};
}

padic::LocalNumber local_number_from(const padic::FieldConfig& cfg, const Json& j) {
    using padic::LocalNumber;
    if (j.is_number_integer() || j.is_string()) return LocalNumber::from_rational(cfg, rational_scalar(j));
    if (j.is_array()) {
        std::vector<mpq_class> coeffs;
        for (const auto& c : j) coeffs.push_back(rational_scalar(c));
        return LocalNumber::from_coeffs(cfg, std::move(coeffs));
    }
    require(j.is_object(), ErrorKind::InvalidInput, "unrecognized number encoding " + j.dump());
    if (auto it = j.find("exact"); it != j.end()) return local_number_from(cfg, *it);
    const Json& val = field(j, "valuation");
    if (val.is_string() && val.get<std::string>() == "inf") return LocalNumber::zero(cfg);
    const auto& rows = array(field(j, "unit_digits"), "unit_digits");
    require(!rows.empty(), ErrorKind::InvalidInput, "unit_digits must hold at least one digit row");
    const auto ell = cfg.ell();
    const auto d = static_cast<std::size_t>(cfg.degree());
    std::vector<mpz_class> unit(d, 0);
    mpz_class scale = 1;
    for (const auto& row : rows) {
        const auto digits = int_list(row, "unit digit row");
        require(digits.size() == d, ErrorKind::InvalidInput, "unit digit rows must have length d");
        for (std::size_t i = 0; i < d; ++i) {
            require(digits[i] >= 0 && digits[i] < ell, ErrorKind::InvalidInput, "unit digits lie in [0, ell)");
            unit[i] += scale * static_cast<long>(digits[i]);
        }
        scale *= static_cast<long>(ell);
    }
    return LocalNumber::from_unit(cfg, integer(val, "valuation"), std::move(unit), static_cast<int>(rows.size()));
}

Json to_json(const padic::LocalNumber& x) {
    if (x.is_zero()) return Json{{"valuation", "inf"}, {"unit_digits", Json::array()}};
    const auto& cfg = x.config();
    const int k = static_cast<int>(std::min<std::int64_t>(x.relative_precision(), cfg.precision()));
    auto unit = x.unit_mod(k);
    unit.resize(static_cast<std::size_t>(cfg.degree()), 0);
    const mpz_class ell = static_cast<long>(cfg.ell());
    Json rows = Json::array();
    for (int r = 0; r < k; ++r) {
        Json row = Json::array();
        for (const auto& u : unit) {
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), u.get_mpz_t(), cfg.ell_pow(r).get_mpz_t());
            row.push_back(mpz_class(q % ell).get_si());
        }
        rows.push_back(row);
    }
    Json out{{"valuation", x.valuation()}, {"unit_digits", rows}};
    if (x.is_exact()) {
        const auto& c = x.exact_coeffs();
        const bool rational = std::all_of(c.begin() + 1, c.end(), [](const mpq_class& q) { return q == 0; });
        if (rational) {
            out["exact"] = c.front().get_str();
        } else {
            Json arr = Json::array();
            for (const auto& q : c) arr.push_back(q.get_str());
            out["exact"] = arr;
        }
    }
    return out;
}

Json to_json(const padic::Residue& r) { return r.coeffs(); }

ff::Poly poly_from(const ff::GroundField& F, const Json& j) {
    ff::Poly p;
    for (const auto& c : array(j, "polynomial")) {
        const std::int64_t v = integer(c, "polynomial coefficient");
        require(v >= 0 && v < F.order(), ErrorKind::InvalidInput,
                "polynomial coefficient " + std::to_string(v) + " outside [0, q)");
        p.push_back(static_cast<ff::Elem>(v));
    }
    ff::trim(p);
    return p;
}

Json poly_json(const ff::Poly& a) {
    Json arr = Json::array();
    for (auto c : a) arr.push_back(c);
    return arr;
}

ff::Place place_from(const ff::GroundField& F, const Json& j) {
    if (j.is_object()) {
        if (auto it = j.find("infinity"); it != j.end()) {
            require(*it == true, ErrorKind::InvalidInput, "\"infinity\" must be true");
            return ff::Place::infinity();
        }
        return ff::Place::finite(F, poly_from(F, field(j, "finite")));
    }
    if (j.is_string()) {
        require(j.get<std::string>() == "inf", ErrorKind::InvalidInput, "places are \"inf\" or coefficient lists");
        return ff::Place::infinity();
    }
    return ff::Place::finite(F, poly_from(F, j));
}

Json to_json(const ff::Place& v) {
    return v.is_infinity() ? Json{{"infinity", true}} : Json{{"finite", poly_json(v.poly())}};
}

ff::RationalFunction rational_from(const ff::GroundField& F, const Json& j) {
    if (j.is_array()) return ff::RationalFunction::from_poly(F, poly_from(F, j));
    ff::Poly den{1};
    if (auto it = j.find("den"); it != j.end()) den = poly_from(F, *it);
    require(!den.empty(), ErrorKind::InvalidInput, "zero denominator");
    return ff::RationalFunction::make(F, poly_from(F, field(j, "num")), den);
}

Json to_json(const ff::RationalFunction& r) {
    return Json{{"num", poly_json(r.num())}, {"den", poly_json(r.den())}, {"text", r.to_string()}};
}

ff::LocalElement local_element_from(const ff::GroundField& F, const ff::Place& v, const Json& j) {
    if (j.is_null()) return ff::LocalElement::exact_zero(v);
    if (auto it = j.find("rational"); it != j.end()) {
        const auto r = rational_from(F, *it);
        if (auto p = j.find("precision"); p != j.end() && !p->is_null()) {
            const std::int64_t prec = integer(*p, "precision");
            if (r.is_zero()) return ff::LocalElement::zero_mod(v, prec);
            const std::int64_t vr = r.valuation(v);
            if (vr >= prec) return ff::LocalElement::zero_mod(v, prec);
            return ff::expand_at(r, v, prec - vr);
        }
        if (r.is_zero()) return ff::LocalElement::exact_zero(v);
        // Exact input must have a terminating expansion at v.
        for (std::int64_t len = 1; len <= 1024; len *= 2) {
            auto x = ff::expand_at(r, v, len);
            if (ff::to_rational(F, x) == r) return ff::LocalElement::exact(v, x.valuation, x.digits);
        }
        fail(ErrorKind::InvalidInput, "exact local element has no terminating expansion; give a precision");
    }
    const std::int64_t val = integer_field(j, "valuation");
    std::vector<ff::Poly> digits;
    for (const auto& d : array(field(j, "digits"), "digits")) digits.push_back(poly_from(F, d));
    auto p = j.find("precision");
    if (p == j.end() || p->is_null()) return ff::LocalElement::exact(v, val, std::move(digits));
    const std::int64_t prec = integer(*p, "precision");
    require(prec >= val + static_cast<std::int64_t>(digits.size()), ErrorKind::InvalidInput,
            "precision must cover the listed digits");
    for (const auto& d : digits)
        require(ff::degree(d) < v.degree(), ErrorKind::InvalidInput, "local digit has degree >= deg v");
    while (static_cast<std::int64_t>(digits.size()) < prec - val) digits.emplace_back();
    std::size_t lo = 0;
    while (lo < digits.size() && digits[lo].empty()) ++lo;
    if (lo == digits.size()) return ff::LocalElement::zero_mod(v, prec);
    digits.erase(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(lo));
    return {v, val + static_cast<std::int64_t>(lo), prec, std::move(digits)};
}

Json to_json(const ff::LocalElement& x) {
    Json digits = Json::array();
    for (const auto& d : x.digits) digits.push_back(poly_json(d));
    Json out{{"place", to_json(x.place)}};
    out["valuation"] = x.valuation == ff::kInfinity ? Json(nullptr) : Json(x.valuation);
    out["precision"] = x.precision == ff::kInfinity ? Json(nullptr) : Json(x.precision);
    out["digits"] = digits;
    return out;
}

ff::Divisor divisor_from(const ff::GroundField& F, const Json& j) {
    ff::Divisor D;
    for (const auto& term : array(j, "divisor")) {
        if (term.is_array()) {
            require(term.size() == 2, ErrorKind::InvalidInput, "divisor terms are [place, n] pairs");
            D.add(place_from(F, term[0]), integer(term[1], "divisor multiplicity"));
        } else {
            D.add(place_from(F, field(term, "place")), integer_field(term, "n"));
        }
    }
    return D;
}

Json to_json(const ff::Divisor& D) {
    Json arr = Json::array();
    for (const auto& [v, n] : D.terms()) arr.push_back(Json::array({to_json(v), n}));
    return arr;
}

satake::SatakeParam satake_from(const padic::FieldConfig& cfg, const Json& j) {
    std::vector<padic::LocalNumber> mu;
    for (const auto& x : array(field(j, "mu"), "mu")) mu.push_back(local_number_from(cfg, x));
    return satake::SatakeParam(integer_field(j, "q"), std::move(mu));
}

Json to_json(const satake::SatakeParam& s) {
    Json mu = Json::array();
    for (const auto& m : s.mu()) mu.push_back(to_json(m));
    return Json{{"q", s.q()}, {"mu", mu}};
}

global::KirillovTable table_from(const padic::FieldConfig& cfg, const Json& j) {
    std::vector<global::KirillovEntry> entries;
    for (const auto& e : array(j, "table")) {
        std::vector<ff::Poly> rep;
        if (auto it = e.find("rep"); it != e.end())
            for (const auto& d : array(*it, "rep")) {
                ff::Poly p;
                for (const auto& c : array(d, "rep digit")) p.push_back(static_cast<ff::Elem>(integer(c, "rep digit")));
                rep.push_back(std::move(p));
            }
        entries.push_back({integer_field(e, "j"), integer_or(e, "m", 0), std::move(rep),
                           local_number_from(cfg, field(e, "value"))});
    }
    return global::KirillovTable(std::move(entries));
}

Json to_json(const global::KirillovTable& t) {
    Json arr = Json::array();
    for (const auto& e : t.entries()) {
        Json rep = Json::array();
        for (const auto& d : e.rep) rep.push_back(poly_json(d));
        arr.push_back(Json{{"j", e.j}, {"m", e.m}, {"rep", rep}, {"value", to_json(e.value)}});
    }
    return arr;
}

namespace {

std::vector<padic::LocalNumber> mu_from(const padic::FieldConfig& cfg, const Json& j) {
    std::vector<padic::LocalNumber> mu;
    for (const auto& x : array(j, "mu")) mu.push_back(local_number_from(cfg, x));
    return mu;
}

Json mu_json(const std::vector<padic::LocalNumber>& mu) {
    Json arr = Json::array();
    for (const auto& m : mu) arr.push_back(to_json(m));
    return arr;
}

}  // namespace

global::GlobalWhittakerSpec spec_from(const ff::GroundField& F, const padic::FieldConfig& cfg, const Json& j) {
    global::GlobalWhittakerSpec spec(F, cfg, place_from(F, field(j, "w")));
    for (const auto& entry : array(field(j, "places"), "places")) {
        const ff::Place v = place_from(F, field(entry, "place"));
        const Json& d = field(entry, "datum");
        const Json& kind = field(d, "kind");
        require(kind.is_string(), ErrorKind::InvalidInput, "datum kind must be a string");
        if (kind == "unramified") {
            spec.set_place(v, global::Unramified{satake::SatakeParam(checked_pow(F.order(), v.degree()),
                                                                     mu_from(cfg, field(d, "mu")))});
        } else if (kind == "tabulated") {
            spec.set_place(v, global::Tabulated{table_from(cfg, field(d, "table")),
                                                local_number_from(cfg, field(d, "central"))});
        } else {
            fail(ErrorKind::InvalidInput, "datum kind must be \"unramified\" or \"tabulated\"");
        }
    }
    if (auto it = j.find("degree_rules"); it != j.end())
        for (const auto& r : array(*it, "degree_rules"))
            spec.set_degree_rule(integer_field(r, "degree"), mu_from(cfg, field(r, "mu")));
    if (auto it = j.find("default_mu"); it != j.end() && !it->is_null()) spec.set_default_rule(mu_from(cfg, *it));
    if (auto it = j.find("S"); it != j.end()) {
        std::vector<ff::Place> S;
        for (const auto& p : array(*it, "S")) S.push_back(place_from(F, p));
        std::sort(S.begin(), S.end());
        require(S == spec.S(), ErrorKind::InvalidInput, "listed S differs from the tabulated places");
    }
    spec.validate();
    return spec;
}

Json to_json(const global::GlobalWhittakerSpec& spec) {
    Json places = Json::array();
    for (const auto& [v, d] : spec.places()) {
        Json datum;
        if (const auto* u = std::get_if<global::Unramified>(&d))
            datum = Json{{"kind", "unramified"}, {"mu", mu_json(u->satake.mu())}};
        else {
            const auto& t = std::get<global::Tabulated>(d);
            datum = Json{{"kind", "tabulated"}, {"table", to_json(t.table)}, {"central", to_json(t.central)}};
        }
        places.push_back(Json{{"place", to_json(v)}, {"datum", datum}});
    }
    Json rules = Json::array();
    for (const auto& [deg, mu] : spec.degree_rules()) rules.push_back(Json{{"degree", deg}, {"mu", mu_json(mu)}});
    Json out{{"w", to_json(spec.distinguished())}, {"places", places}, {"degree_rules", rules}};
    out["default_mu"] = spec.default_rule() ? mu_json(*spec.default_rule()) : Json(nullptr);
    Json S = Json::array();
    for (const auto& v : spec.S()) S.push_back(to_json(v));
    out["S"] = S;
    return out;
}

global::MirabolicPoint point_from(const ff::GroundField& F, const Json& j) {
    global::MirabolicPoint g;
    for (const auto& c : array(j, "point")) {
        const ff::Place v = place_from(F, field(c, "place"));
        require(!g.count(v), ErrorKind::InvalidInput, "place listed twice in a point");
        std::int64_t a1 = 0, a2 = 0;
        if (auto it = c.find("a"); it != c.end()) {
            const auto a = int_list(*it, "a");
            require(a.size() == 2, ErrorKind::InvalidInput, "torus exponents come as a pair [a1, a2]");
            a1 = a[0];
            a2 = a[1];
        }
        ff::LocalElement x = ff::LocalElement::exact_zero(v);
        if (auto it = c.find("x"); it != c.end()) x = local_element_from(F, v, *it);
        g.emplace(v, global::LocalPoint::make(v, std::move(x), a1, a2, integer_or(c, "central", 0)));
    }
    return g;
}

Json to_json(const global::MirabolicPoint& g) {
    Json arr = Json::array();
    for (const auto& [v, pt] : g) {
        Json x = to_json(pt.x);
        x.erase("place");
        arr.push_back(Json{{"place", to_json(v)}, {"x", x}, {"a", {pt.y.valuation, pt.a2}}, {"central", pt.central}});
    }
    return arr;
}

global::CharacterData character_from(const ff::GroundField& F, const padic::FieldConfig& cfg, const Json& j) {
    global::CharacterData chi;
    if (auto it = j.find("base"); it != j.end() && !it->is_null()) chi.degree_base = local_number_from(cfg, *it);
    if (auto it = j.find("values"); it != j.end())
        for (const auto& e : array(*it, "values"))
            chi.values.insert_or_assign(place_from(F, field(e, "place")), local_number_from(cfg, field(e, "value")));
    return chi;
}

Json to_json(const CycloValue& x, const std::optional<padic::LocalNumber>& sqrt_q) {
    Json formal = Json::array();
    for (int s = 0; s < 2; ++s)
        for (std::int64_t j = 0; j < x.p(); ++j)
            if (!x.coeff(s, j).is_zero())
                formal.push_back(Json{{"sqrt_q_power", s}, {"zeta_power", j}, {"coef", to_json(x.coeff(s, j))}});
    Json out{{"formal", formal}};
    const std::int64_t b = x.valuation_bound();
    out["valuation_at_least"] = b == padic::kInfinity ? Json("inf") : Json(b);
    try {
        out["value"] = to_json(x.embed(sqrt_q));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::UnsupportedDegree && e.kind() != ErrorKind::NoSimpleRoot) throw;
        out["value"] = nullptr;
    }
    return out;
}

}  // namespace lcong::io
