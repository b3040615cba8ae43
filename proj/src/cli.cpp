#include "lcong/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "lcong/json_io.hpp"
#include "lcong/suite.hpp"

namespace lcong::cli {

using io::Json;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::PrecisionLoss:
        case ErrorKind::TooLarge:
        case ErrorKind::InsufficientPrecision:
            return kPrecisionFailure;
        case ErrorKind::NoMatching:
            return kViolation;
        default:
            return kInputError;
    }
}

namespace {

struct Options {
    std::string command;
    std::string input;
    std::int64_t ell = 0, d = 1, precision = 32, p = 0, f = 1;
    std::int64_t bound = 4;
    std::size_t cap = global::kDefaultCap;
    std::uint64_t seed = 0;
    std::string format = "text";
    bool require_integral = false;
    // Which flags were given explicitly.
    bool has_ell = false, has_d = false, has_precision = false, has_p = false, has_f = false;
};

Json load_input(const Options& o, std::istream& in) {
    std::string text;
    if (o.input == "-") {
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else if (!o.input.empty() && o.input.front() == '{') {
        text = o.input;
    } else {
        std::ifstream file(o.input);
        require(file.good(), ErrorKind::InvalidInput, "cannot read input file '" + o.input + "'");
        std::stringstream ss;
        ss << file.rdbuf();
        text = ss.str();
    }
    Json doc = Json::parse(text, nullptr, false);
    require(!doc.is_discarded(), ErrorKind::InvalidInput, "input is not valid JSON");
    io::check_schema_version(doc);
    return doc;
}

bool has_field_config(const Options& o, const Json& doc) { return o.has_ell || doc.contains("field"); }

padic::FieldConfig field_config(const Options& o, const Json& doc, Json& report) {
    Json f = doc.contains("field") ? doc["field"] : Json::object();
    require(f.is_object(), ErrorKind::InvalidInput, "'field' must be an object");
    if (o.has_ell) f["ell"] = o.ell;
    if (o.has_d) f["d"] = o.d;
    if (o.has_precision) f["precision"] = o.precision;
    require(f.contains("ell"), ErrorKind::InvalidInput, "no coefficient field: pass --ell or give input.field");
    // A modulus from the input only makes sense for the degree it was written for.
    if (o.has_d && doc.contains("field") && doc["field"].value("d", 1) != o.d) f.erase("modulus_coeffs"), f.erase("modulus");
    auto cfg = io::field_config_from(f);
    report["field"] = io::to_json(cfg);
    return cfg;
}

ff::GroundField ground_field(const Options& o, const Json& doc, Json& report) {
    Json g = doc.contains("ground") ? doc["ground"] : Json::object();
    require(g.is_object(), ErrorKind::InvalidInput, "'ground' must be an object");
    if (o.has_p) g["p"] = o.p;
    if (o.has_f) g["f"] = o.f;
    require(g.contains("p"), ErrorKind::InvalidInput, "no constant field: pass --p or give input.ground");
    if (o.has_f && doc.contains("ground") && doc["ground"].value("f", 1) != o.f) g.erase("modulus");
    auto F = io::ground_field_from(g);
    report["ground"] = io::to_json(F);
    return F;
}

void require_distinct(const padic::FieldConfig& cfg, const ff::GroundField& F) {
    require(cfg.ell() != F.characteristic(), ErrorKind::InvalidInput, "ell must differ from the characteristic p");
}

const Json& member(const Json& doc, const char* key) {
    auto it = doc.find(key);
    require(it != doc.end(), ErrorKind::InvalidInput, std::string("input lacks '") + key + "'");
    return *it;
}

Json weight_json(const whittaker::Weight& a) { return a; }

whittaker::Weight weight_from(const Json& j) {
    require(j.is_array(), ErrorKind::InvalidInput, "weights are integer arrays");
    whittaker::Weight a;
    for (const auto& x : j) {
        require(x.is_number_integer(), ErrorKind::InvalidInput, "weights are integer arrays");
        a.push_back(x.get<std::int64_t>());
    }
    return a;
}

Json residues_json(const satake::ReducedPoly& r) {
    Json arr = Json::array();
    for (const auto& c : r.coeffs) arr.push_back(io::to_json(c));
    return arr;
}

std::optional<padic::LocalNumber> maybe_sqrt(const padic::FieldConfig& cfg, std::int64_t q) {
    try {
        return default_sqrt_q(cfg, q);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::UnsupportedDegree || e.kind() == ErrorKind::NoSimpleRoot) return std::nullopt;
        throw;
    }
}

int cmd_satake(const Options& o, const Json& doc, Json& report) {
    const auto cfg = field_config(o, doc, report);
    const Json& params = member(doc, "params");
    require(params.is_array() && (params.size() == 1 || params.size() == 2), ErrorKind::InvalidInput,
            "'params' holds one or two Satake parameters");
    std::vector<satake::SatakeParam> ss;
    std::vector<satake::CharPoly> polys;
    Json out = Json::array();
    bool all_integral = true;
    for (const auto& pj : params) {
        ss.push_back(io::satake_from(cfg, pj));
        polys.push_back(satake::char_poly(ss.back()));
        const bool integral = satake::is_integral(polys.back());
        all_integral = all_integral && integral;
        Json coeffs = Json::array();
        for (const auto& c : polys.back().coeffs) coeffs.push_back(io::to_json(c));
        out.push_back(Json{{"param", io::to_json(ss.back())},
                           {"char_poly", coeffs},
                           {"integral", integral},
                           {"reduction", integral ? residues_json(satake::reduce_char_poly(polys.back())) : Json(nullptr)}});
    }
    report["params"] = out;
    report["require_integral"] = o.require_integral;
    int code = kPass;
    if (o.require_integral && !all_integral) code = kViolation;
    if (ss.size() == 2) {
        const bool congruent = all_integral && ss[0].rank() == ss[1].rank() && ss[0].q() == ss[1].q() &&
                               satake::congruent(polys[0], polys[1]);
        report["congruent"] = congruent;
        Json matching = nullptr;
        if (congruent) {
            try {
                matching = satake::match_residues(ss[0], ss[1]);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NoMatching) throw;
            }
        }
        report["matching"] = matching;
        if (!congruent) code = kViolation;
    }
    return code;
}

Json congruence_json(const whittaker::CongruenceReport& rep) {
    Json violations = Json::array();
    for (const auto& v : rep.violations) violations.push_back(Json{{"weight", weight_json(v.weight)}, {"reason", v.reason}});
    return Json{{"checked", rep.checked}, {"violations", violations}};
}

int run_congruence(const Options& o, const padic::FieldConfig& cfg, const Json& params, Json& report) {
    require(params.is_array() && params.size() == 2, ErrorKind::InvalidInput, "'params' must hold two Satake parameters");
    const auto s1 = io::satake_from(cfg, params[0]);
    const auto s2 = io::satake_from(cfg, params[1]);
    report["bound"] = o.bound;
    const auto rep = whittaker::check_congruence(s1, s2, o.bound);
    report["congruence"] = congruence_json(rep);
    return rep.passed() ? kPass : kViolation;
}

int cmd_whittaker(const Options& o, const Json& doc, Json& report) {
    const auto cfg = field_config(o, doc, report);
    if (doc.contains("params")) return run_congruence(o, cfg, doc["params"], report);
    const auto s = io::satake_from(cfg, member(doc, "param"));
    std::vector<whittaker::Weight> weights;
    if (doc.contains("weights")) {
        require(doc["weights"].is_array(), ErrorKind::InvalidInput, "'weights' must be an array");
        for (const auto& w : doc["weights"]) weights.push_back(weight_from(w));
    } else {
        report["bound"] = o.bound;
        weights = whittaker::dominant_weights(s.rank(), o.bound);
    }
    const auto sqrt_q = maybe_sqrt(cfg, s.q());
    whittaker::WhittakerEvaluator ev(s);
    Json values = Json::array();
    for (const auto& a : weights) {
        require(a.size() == s.rank(), ErrorKind::InvalidInput, "weight length differs from the rank");
        const auto w = ev.value(a);
        values.push_back(Json{{"weight", weight_json(a)},
                              {"dominant", whittaker::is_dominant(a)},
                              {"value", Json{{"coef", io::to_json(w.coef)}, {"q_half_exp", w.q_half_exp}}},
                              {"collapsed", sqrt_q ? io::to_json(whittaker::collapse(w, s.q(), *sqrt_q)) : Json(nullptr)}});
    }
    report["param"] = io::to_json(s);
    report["values"] = values;
    return kPass;
}

int cmd_congruence(const Options& o, const Json& doc, Json& report) {
    const auto cfg = field_config(o, doc, report);
    return run_congruence(o, cfg, member(doc, "params"), report);
}

int cmd_rr(const Options& o, const Json& doc, Json& report) {
    const auto F = ground_field(o, doc, report);
    const auto D = io::divisor_from(F, member(doc, "divisor"));
    const auto basis = ff::rr_space(F, D);
    const auto expected = std::max<std::int64_t>(D.degree() + 1, 0);
    bool ok = static_cast<std::int64_t>(basis.size()) == expected;
    Json arr = Json::array();
    for (const auto& f : basis) {
        const ff::Divisor E = ff::divisor_of(f) + D;
        for (const auto& [v, n] : E.terms()) ok = ok && n >= 0;
        arr.push_back(io::to_json(f));
    }
    report["divisor"] = io::to_json(D);
    report["degree"] = D.degree();
    report["dimension"] = basis.size();
    report["expected_dimension"] = expected;
    report["basis"] = arr;
    return ok ? kPass : kViolation;
}

int cmd_psi(const Options& o, const Json& doc, Json& report) {
    const auto F = ground_field(o, doc, report);
    std::optional<padic::FieldConfig> cfg;
    if (has_field_config(o, doc)) {
        cfg = field_config(o, doc, report);
        require_distinct(*cfg, F);
    }
    auto value_of = [&](const ff::Adele& x) {
        return cfg ? io::to_json(ff::psi_global(F, *cfg, x)) : Json(nullptr);
    };
    int code = kPass;
    Json principal = Json::array();
    if (doc.contains("elements")) {
        require(doc["elements"].is_array(), ErrorKind::InvalidInput, "'elements' must be an array");
        for (const auto& ej : doc["elements"]) {
            const auto gamma = io::rational_from(F, ej);
            require(!gamma.is_zero(), ErrorKind::InvalidInput, "principal elements must be nonzero");
            const auto x = ff::principal_adele(gamma);
            const auto e = ff::psi_global_exponent(F, x);
            if (e != 0) code = kViolation;
            principal.push_back(Json{{"gamma", io::to_json(gamma)}, {"exponent", e}, {"trivial", e == 0}, {"value", value_of(x)}});
        }
    }
    Json adeles = Json::array();
    if (doc.contains("adeles")) {
        require(doc["adeles"].is_array(), ErrorKind::InvalidInput, "'adeles' must be an array");
        for (const auto& aj : doc["adeles"]) {
            ff::Adele x;
            require(aj.is_array(), ErrorKind::InvalidInput, "an adele is a list of {place, x} components");
            for (const auto& c : aj) {
                const auto v = io::place_from(F, member(c, "place"));
                x.insert_or_assign(v, io::local_element_from(F, v, member(c, "x")));
            }
            Json comps = Json::array();
            for (const auto& [v, xv] : x) comps.push_back(Json{{"place", io::to_json(v)}, {"exponent", ff::psi_exponent(F, xv)}});
            adeles.push_back(Json{{"components", comps}, {"exponent", ff::psi_global_exponent(F, x)}, {"value", value_of(x)}});
        }
    }
    require(doc.contains("elements") || doc.contains("adeles"), ErrorKind::InvalidInput,
            "psi needs 'elements' or 'adeles'");
    report["characteristic"] = F.characteristic();
    report["principal"] = principal;
    report["adeles"] = adeles;
    return code;
}

int cmd_index(const Options& o, const Json& doc, Json& report) {
    const auto F = ground_field(o, doc, report);
    const auto U = io::divisor_from(F, member(doc, "U"));
    const auto qi = ff::quotient_index(F, U);
    report["U"] = io::to_json(U);
    report["index"] = qi.value.get_str();
    report["p"] = qi.p;
    report["p_exponent"] = qi.p_exponent;
    report["factorization"] = std::to_string(qi.p) + "^" + std::to_string(qi.p_exponent);
    int code = kPass;
    if (qi.value <= static_cast<unsigned long>(o.cap)) {
        const auto b = ff::quotient_index_bruteforce(F, U, o.cap);
        report["bruteforce"] = b;
        report["agrees"] = qi.value == b;
        if (qi.value != b) code = kViolation;
    } else {
        report["bruteforce"] = nullptr;
        report["agrees"] = nullptr;
    }
    return code;
}

std::optional<padic::LocalNumber> sqrt_from(const padic::FieldConfig& cfg, const Json& doc) {
    if (!doc.contains("sqrt_q") || doc["sqrt_q"].is_null()) return std::nullopt;
    return io::local_number_from(cfg, doc["sqrt_q"]);
}

std::vector<global::MirabolicPoint> points_from(const Options& o, const ff::GroundField& F,
                                                const global::GlobalWhittakerSpec& spec, const Json& doc,
                                                std::size_t default_count) {
    if (doc.contains("points")) {
        require(doc["points"].is_array(), ErrorKind::InvalidInput, "'points' must be an array");
        std::vector<global::MirabolicPoint> pts;
        for (const auto& pj : doc["points"]) pts.push_back(io::point_from(F, pj));
        return pts;
    }
    std::size_t count = default_count;
    if (doc.contains("count")) {
        require(doc["count"].is_number_unsigned(), ErrorKind::InvalidInput, "'count' must be a nonnegative integer");
        count = doc["count"].get<std::size_t>();
    }
    return global::default_sample_points(spec, o.seed, count);
}

Json cyclo_json(const CycloValue& x, const std::optional<padic::LocalNumber>& sqrt_q) { return io::to_json(x, sqrt_q); }

int cmd_expand(const Options& o, const Json& doc, Json& report) {
    const auto F = ground_field(o, doc, report);
    const auto cfg = field_config(o, doc, report);
    require_distinct(cfg, F);
    const auto spec = io::spec_from(F, cfg, member(doc, "spec"));
    const auto sqrt_q = sqrt_from(cfg, doc);
    const auto points = points_from(o, F, spec, doc, 10);
    global::Evaluator ev(spec);
    Json out = Json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto D = ev.support_divisor(points[i]);
        const auto support = D ? ev.gamma_support(points[i], o.cap) : std::vector<ff::RationalFunction>{};
        out.push_back(Json{{"index", i},
                           {"point", io::to_json(points[i])},
                           {"support_divisor", D ? io::to_json(*D) : Json(nullptr)},
                           {"support_size", support.size()},
                           {"value", cyclo_json(ev.expand(points[i], o.cap), sqrt_q)}});
    }
    report["spec"] = io::to_json(spec);
    report["points"] = out;
    return kPass;
}

Json residue_or_null(const std::optional<padic::Residue>& r) { return r ? io::to_json(*r) : Json(nullptr); }

int cmd_pipeline(const Options& o, const Json& doc, Json& report) {
    const auto F = ground_field(o, doc, report);
    const auto cfg = field_config(o, doc, report);
    require_distinct(cfg, F);
    const auto spec1 = io::spec_from(F, cfg, member(doc, "spec1"));
    const auto spec2 = io::spec_from(F, cfg, member(doc, "spec2"));
    const auto sqrt_q = sqrt_from(cfg, doc);
    global::check_pipeline_compatible(spec1, spec2);
    const auto points = points_from(o, F, spec1, doc, 50);
    const auto rep = global::congruence_pipeline(spec1, spec2, points, sqrt_q, o.cap);
    Json out = Json::array();
    Json failing = Json::array();
    for (const auto& pr : rep.points) {
        if (!pr.congruent) failing.push_back(pr.index);
        out.push_back(Json{
            {"index", pr.index},
            {"point", io::to_json(points[pr.index])},
            {"support_size", pr.support_size},
            {"W1", cyclo_json(pr.W1, sqrt_q)},
            {"W2", cyclo_json(pr.W2, sqrt_q)},
            {"phi1", cyclo_json(pr.phi1, sqrt_q)},
            {"phi2", cyclo_json(pr.phi2, sqrt_q)},
            {"valuations", Json{{"W1", pr.v_W1}, {"W2", pr.v_W2}, {"phi1", pr.v_phi1}, {"phi2", pr.v_phi2}}},
            {"residues", Json{{"W1", residue_or_null(pr.r_W1)}, {"W2", residue_or_null(pr.r_W2)},
                              {"phi1", residue_or_null(pr.r_phi1)}, {"phi2", residue_or_null(pr.r_phi2)}}},
            {"congruent", pr.congruent}});
    }
    report["S"] = Json::array();
    for (const auto& v : spec1.S()) report["S"].push_back(io::to_json(v));
    report["points"] = out;
    report["failing"] = failing;
    bool ok = rep.passed();
    if (doc.contains("characters")) {
        const Json& cj = doc["characters"];
        const auto chi1 = io::character_from(F, cfg, member(cj, "chi1"));
        const auto chi2 = io::character_from(F, cfg, member(cj, "chi2"));
        std::vector<ff::RationalFunction> samples;
        if (cj.contains("samples")) {
            for (const auto& y : cj["samples"]) samples.push_back(io::rational_from(F, y));
        } else {
            std::mt19937_64 rng(o.seed);
            auto poly = [&] {
                ff::Poly p(1 + rng() % 4);
                for (auto& c : p) c = static_cast<ff::Elem>(rng() % static_cast<std::uint64_t>(F.order()));
                ff::trim(p);
                return p;
            };
            while (samples.size() < 50) {
                auto n = poly(), d = poly();
                if (!n.empty() && !d.empty()) samples.push_back(ff::RationalFunction::make(F, n, d));
            }
        }
        const auto cc = global::central_char_propagate(F, chi1, chi2, spec1.S(), samples);
        Json products = Json::array();
        for (const auto& pc : cc.products)
            products.push_back(Json{{"y", io::to_json(pc.y)}, {"product1", io::to_json(pc.product1)},
                                    {"product2", io::to_json(pc.product2)}, {"ok", pc.ok}});
        Json ratios = Json::array();
        for (const auto& rc : cc.ratios)
            ratios.push_back(Json{{"place", io::to_json(rc.place)}, {"y", io::to_json(rc.y)}, {"chi1", io::to_json(rc.chi1)},
                                  {"chi2", io::to_json(rc.chi2)}, {"ratio", io::to_json(rc.ratio)},
                                  {"congruent", rc.congruent}});
        report["central_characters"] = Json{{"products", products}, {"ratios", ratios}, {"passed", cc.passed()}};
        ok = ok && cc.passed();
    }
    report["passed"] = ok;
    return ok ? kPass : kViolation;
}

int cmd_selftest(const Options& o, Json& report) {
    constexpr double kScale = 0.1;
    report["scale"] = kScale;
    Json out = Json::array();
    int code = kPass;
    for (const auto& r : suite::run_all(o.seed, kScale)) {
        Json entry{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"cases", r.cases}, {"detail", r.detail}};
        if (r.error) {
            entry["error"] = std::string(to_string(*r.error));
            code = std::max(code, exit_code_for(*r.error));
        } else if (!r.passed) {
            code = std::max(code, static_cast<int>(kViolation));
        }
        out.push_back(entry);
    }
    report["criteria"] = out;
    return code;
}

// Text view of a report: one "key: value" line per scalar, nested blocks indented.
bool is_number_record(const Json& j) { return j.is_object() && j.contains("unit_digits") && j.contains("valuation"); }
bool is_place_record(const Json& j) { return j.is_object() && j.size() == 1 && (j.contains("finite") || j.contains("infinity")); }
bool is_leaf(const Json& j) { return j.is_primitive() || is_number_record(j) || is_place_record(j); }

std::string scalar_text(const Json& j);

std::string list_text(const Json& j) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
    return s + "]";
}

std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (is_place_record(j)) return j.contains("infinity") ? "inf" : "P" + list_text(j["finite"]);
    if (is_number_record(j)) {
        if (j.contains("exact")) return scalar_text(j["exact"]);
        if (j["valuation"].is_string()) return "0";
        // Digits of the unit, least significant first.
        std::string digits;
        for (const auto& row : j["unit_digits"]) digits += (digits.empty() ? "" : " ") + (row.size() == 1 ? row[0].dump() : list_text(row));
        return "ell^" + j["valuation"].dump() + " * (" + digits + " ...)";
    }
    if (j.is_array() && std::all_of(j.begin(), j.end(), is_leaf)) return list_text(j);
    return j.dump();
}

bool inline_value(const Json& j) {
    if (is_leaf(j)) return true;
    if (j.is_array()) return std::all_of(j.begin(), j.end(), is_leaf);
    return false;
}

void render(const Json& j, std::ostream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (inline_value(v)) {
                out << pad << k << ": " << scalar_text(v) << '\n';
            } else {
                out << pad << k << ":\n";
                render(v, out, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (inline_value(v)) {
                out << pad << "- " << scalar_text(v) << '\n';
            } else {
                out << pad << "-\n";
                render(v, out, indent + 2);
            }
        }
    } else {
        out << pad << scalar_text(j) << '\n';
    }
}

void emit(const Options& o, const Json& report, std::ostream& out) {
    if (o.format == "json") out << report.dump(2) << '\n';
    else render(report, out, 0);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in) {
    CLI::App app{"lcong: congruences of Whittaker functions, local and over F_q(t)"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    auto* ell = app.add_option("--ell", o.ell, "coefficient prime ell")->check(CLI::PositiveNumber);
    auto* d = app.add_option("--d", o.d, "degree of the unramified coefficient extension")->check(CLI::Range(1, 64));
    auto* prec = app.add_option("--precision", o.precision, "capped relative precision")->check(CLI::Range(1, 100000));
    auto* p = app.add_option("--p", o.p, "characteristic of the constant field")->check(CLI::PositiveNumber);
    auto* f = app.add_option("--f", o.f, "constant field F_q with q = p^f")->check(CLI::Range(1, 64));
    app.add_option("--bound", o.bound, "weight bound B")->check(CLI::NonNegativeNumber);
    app.add_option("--cap", o.cap, "enumeration cap")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for sampled points and property suites");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--input", o.input, "JSON file, inline JSON object, or - for stdin");

    const std::vector<std::pair<const char*, const char*>> commands{
        {"satake", "characteristic polynomials, integrality and reduction of Satake parameters"},
        {"whittaker", "unramified Whittaker values, or a congruence check for two parameters"},
        {"congruence", "check two Whittaker functions for congruence on dominant weights"},
        {"rr", "basis of a Riemann-Roch space L(D)"},
        {"psi", "the additive character on principal and finite adeles"},
        {"index", "index of U in A/k with brute-force confirmation"},
        {"expand", "global Whittaker expansions at mirabolic points"},
        {"pipeline", "congruence pipeline for two global Whittaker specs"},
        {"selftest", "seeded quick run of the property suites"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        if (std::string(name) == "satake")
            sub->add_flag("--require-integral", o.require_integral, "treat non-integral parameters as a violation");
        sub->callback([&o, name = std::string(name)] { o.command = name; });
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kPass : kInputError;
    }
    o.has_ell = ell->count() > 0;
    o.has_d = d->count() > 0;
    o.has_precision = prec->count() > 0;
    o.has_p = p->count() > 0;
    o.has_f = f->count() > 0;

    Json report{{"schema_version", io::kSchemaVersion}, {"command", o.command}, {"seed", o.seed}};
    int code = kPass;
    try {
        if (o.command == "selftest") {
            code = cmd_selftest(o, report);
        } else {
            require(!o.input.empty(), ErrorKind::InvalidInput, "--input is required for " + o.command);
            const Json doc = load_input(o, in);
            if (o.command == "satake") code = cmd_satake(o, doc, report);
            else if (o.command == "whittaker") code = cmd_whittaker(o, doc, report);
            else if (o.command == "congruence") code = cmd_congruence(o, doc, report);
            else if (o.command == "rr") code = cmd_rr(o, doc, report);
            else if (o.command == "psi") code = cmd_psi(o, doc, report);
            else if (o.command == "index") code = cmd_index(o, doc, report);
            else if (o.command == "expand") code = cmd_expand(o, doc, report);
            else code = cmd_pipeline(o, doc, report);
        }
        report["status"] = code == kPass ? "pass" : "fail";
    } catch (const Error& e) {
        code = exit_code_for(e.kind());
        report["status"] = "error";
        report["error"] = Json{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
        err << "lcong " << o.command << ": " << e.what() << '\n';
    } catch (const Json::exception& e) {
        code = kInputError;
        report["status"] = "error";
        report["error"] = Json{{"kind", "InvalidInput"}, {"message", e.what()}};
        err << "lcong " << o.command << ": malformed input: " << e.what() << '\n';
    }
    report["exit_code"] = code;
    emit(o, report, out);
    return code;
}

}  // namespace lcong::cli
