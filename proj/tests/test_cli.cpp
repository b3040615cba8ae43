#include <doctest.h>

#include <fstream>
#include <sstream>

#include "lcong/cli.hpp"
#include "lcong/json_io.hpp"
#include "support.hpp"

using namespace lcong;
using io::Json;

namespace {

struct Run {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& stdin_text = {}) {
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    const int code = cli::run(args, out, err, in);
    return {code, out.str(), err.str()};
}

std::string example(const std::string& name) { return std::string(LCONG_EXAMPLES_DIR) + "/" + name; }

Json doc(Json body) {
    Json j{{"schema_version", "1.0"}};
    for (auto& [k, v] : body.items()) j[k] = v;
    return j;
}

Run run_json(const std::string& cmd, const Json& input, std::vector<std::string> extra = {}) {
    std::vector<std::string> args{cmd, "--format", "json", "--input", input.dump()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args);
}

}  // namespace

TEST_CASE("satake command verdicts") {
    auto r = run({"satake", "--format", "json", "--input", example("satake_pair.json")});
    CHECK(r.code == 0);
    auto j = r.json();
    CHECK(j["schema_version"] == "1.0");
    CHECK(j["congruent"] == true);
    CHECK(j["matching"] == Json::array({1, 0}));
    CHECK(j["params"][0]["char_poly"][0]["exact"] == "-5");

    const Json field{{"ell", 7}};
    auto far = run_json("satake", doc({{"field", field}, {"params", {{{"q", 3}, {"mu", {2, 3}}}, {{"q", 3}, {"mu", {2, 4}}}}}}));
    CHECK(far.code == 1);
    CHECK(far.json()["congruent"] == false);

    const Json frac = doc({{"field", field}, {"params", {{{"q", 3}, {"mu", {"1/7", 2}}}}}});
    CHECK(run_json("satake", frac).code == 0);
    auto strict = run_json("satake", frac, {"--require-integral"});
    CHECK(strict.code == 1);
    CHECK(strict.json()["params"][0]["integral"] == false);
    CHECK(strict.json()["params"][0]["reduction"].is_null());
}

TEST_CASE("whittaker command values and congruence") {
    auto r = run({"whittaker", "--format", "json", "--input", example("whittaker_values.json")});
    REQUIRE(r.code == 0);
    const auto values = r.json()["values"];
    CHECK(values[0]["value"]["coef"]["exact"] == "1");
    CHECK(values[0]["value"]["q_half_exp"] == 0);
    // mu = (2, 5), q = 3: W(diag(w, 1)) = q^{-1/2} (2 + 5).
    CHECK(values[1]["value"]["coef"]["exact"] == "7");
    CHECK(values[1]["value"]["q_half_exp"] == -1);
    CHECK(values[3]["dominant"] == false);
    CHECK(values[3]["value"]["coef"]["valuation"] == "inf");

    auto c = run({"congruence", "--format", "json", "--input", example("congruence_pair.json")});
    CHECK(c.code == 0);
    CHECK(c.json()["congruence"]["violations"].empty());
    CHECK(c.json()["congruence"]["checked"] == 165);
    auto via_whittaker = run({"whittaker", "--format", "json", "--bound", "2", "--input", example("congruence_pair.json")});
    CHECK(via_whittaker.code == 0);
    CHECK(via_whittaker.json()["bound"] == 2);

    // Not congruent: the hypothesis fails, which is an input problem.
    const Json bad = doc({{"field", {{"ell", 7}}}, {"params", {{{"q", 3}, {"mu", {2, 3}}}, {{"q", 3}, {"mu", {2, 4}}}}}});
    auto nc = run_json("congruence", bad);
    CHECK(nc.code == 2);
    CHECK(nc.json()["error"]["kind"] == "NotCongruent");
}

TEST_CASE("function field commands") {
    auto rr = run({"rr", "--format", "json", "--input", example("rr.json")});
    CHECK(rr.code == 0);
    CHECK(rr.json()["dimension"] == 3);

    auto psi = run({"psi", "--format", "json", "--input", example("psi.json")});
    CHECK(psi.code == 0);
    for (const auto& e : psi.json()["principal"]) {
        CHECK(e["trivial"] == true);
        CHECK(e["value"]["exact"] == "1");
    }
    CHECK(psi.json()["adeles"][0]["exponent"] == 1);

    auto idx = run_json("index", doc({{"ground", {{"p", 5}}}, {"U", Json::array()}}));
    CHECK(idx.code == 0);
    CHECK(idx.json()["index"] == "1");
    auto idx2 = run({"index", "--format", "json", "--input", example("index.json")});
    CHECK(idx2.json()["factorization"] == "2^8");
    CHECK(idx2.json()["agrees"] == true);
}

TEST_CASE("flags override the input configuration") {
    auto r = run({"satake", "--format", "json", "--ell", "5", "--d", "2", "--input", example("satake_pair.json")});
    CHECK(r.code == 1);  // 2, 3 and 10, 9 are not congruent modulo 5
    CHECK(r.json()["field"]["ell"] == 5);
    CHECK(r.json()["field"]["d"] == 2);
    auto g = run({"rr", "--format", "json", "--p", "2", "--f", "2", "--input", example("rr.json")});
    CHECK(g.json()["ground"]["q"] == 4);
}

TEST_CASE("global commands") {
    auto e = run({"expand", "--format", "json", "--input", example("expand.json")});
    REQUIRE(e.code == 0);
    CHECK(e.json()["points"].size() == 3);

    auto p = run({"pipeline", "--format", "json", "--input", example("pipeline.json")});
    CHECK(p.code == 0);
    CHECK(p.json()["passed"] == true);
    CHECK(p.json()["points"].size() == 20);
    CHECK(p.json()["central_characters"]["passed"] == true);

    Json same = Json::parse(std::ifstream(example("pipeline.json")));
    same["spec2"] = same["spec1"];
    same.erase("characters");
    auto s = run_json("pipeline", same);
    CHECK(s.code == 0);
    for (const auto& pt : s.json()["points"]) CHECK(pt["W1"] == pt["W2"]);

    auto m = run({"pipeline", "--format", "json", "--input", example("pipeline_mismatch.json")});
    CHECK(m.code == 2);
    CHECK(m.json()["error"]["kind"] == "SpecMismatch");

    // Non-congruent central characters are a violation.
    Json chars = Json::parse(std::ifstream(example("pipeline.json")));
    chars["count"] = 2;
    chars["characters"]["chi2"]["base"] = 3;
    CHECK(run_json("pipeline", chars).code == 1);

    // A cap below the support size is an enumeration failure.
    auto capped = run({"expand", "--format", "json", "--cap", "1", "--input", example("expand.json")});
    CHECK(capped.code == 3);
    CHECK(capped.json()["error"]["kind"] == "TooLarge");
}

TEST_CASE("input errors exit with 2") {
    CHECK(run({"rr", "--input", "{not json"}).code == 2);
    CHECK(run({"rr", "--input", R"({"ground": {"p": 3}, "divisor": []})"}).code == 2);
    CHECK(run({"rr", "--input", R"({"schema_version": "2.0", "ground": {"p": 3}, "divisor": []})"}).code == 2);
    CHECK(run({"rr", "--input", "/nonexistent/file.json"}).code == 2);
    CHECK(run({"rr"}).code == 2);
    CHECK(run({"nosuchcommand"}).code == 2);
    CHECK(run({"rr", "--format", "xml", "--input", example("rr.json")}).code == 2);
    CHECK(run({"rr", "--cap", "0", "--input", example("rr.json")}).code == 2);
    auto no_field = run_json("satake", doc({{"params", {{{"q", 3}, {"mu", {2}}}}}}));
    CHECK(no_field.code == 2);
    CHECK(no_field.json()["status"] == "error");
    CHECK(!no_field.err.empty());
    CHECK(run_json("psi", doc({{"ground", {{"p", 7}}}, {"field", {{"ell", 7}}}, {"elements", {{1}}}})).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("stdin input and text rendering") {
    std::ifstream file(example("rr.json"));
    std::stringstream ss;
    ss << file.rdbuf();
    auto r = run({"rr", "--input", "-"}, ss.str());
    CHECK(r.code == 0);
    CHECK(r.out.find("schema_version: 1.0") != std::string::npos);
    CHECK(r.out.find("dimension: 3") != std::string::npos);
    CHECK(r.out.find("- [P[0, 1], 2]") != std::string::npos);
}

TEST_CASE("reports are deterministic and echo the seed") {
    const std::vector<std::string> args{"expand", "--format", "json", "--seed", "77", "--input",
                                        doc({{"ground", {{"p", 3}}},
                                             {"field", {{"ell", 13}}},
                                             {"count", 6},
                                             {"spec", Json::parse(std::ifstream(example("expand.json")))["spec"]}})
                                            .dump()};
    auto a = run(args), b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.json()["seed"] == 77);
    CHECK(a.json()["points"].size() == 6);
    auto c = run({"selftest", "--format", "json", "--seed", "5"});
    CHECK(c.code == 0);
    CHECK(c.json()["seed"] == 5);
    CHECK(c.json()["criteria"].size() == 11);
    CHECK(run({"selftest", "--format", "json", "--seed", "5"}).out == c.out);
}

TEST_CASE("number encodings round trip") {
    const auto cfg = padic::FieldConfig::make(5, 2);
    const auto x = padic::LocalNumber::from_coeffs(cfg, {mpq_class(3, 10), mpq_class(7)});
    const Json j = io::to_json(x);
    CHECK(j["valuation"] == -1);
    CHECK(j["unit_digits"].size() == 32);
    CHECK(j["unit_digits"][0].size() == 2);
    CHECK(io::local_number_from(cfg, j).identical(x));
    Json capped = j;
    capped.erase("exact");
    const auto y = io::local_number_from(cfg, capped);
    CHECK_FALSE(y.is_exact());
    CHECK(y.agrees_with(x));
    CHECK(io::to_json(y)["unit_digits"] == j["unit_digits"]);
    CHECK(io::local_number_from(cfg, io::to_json(padic::LocalNumber::zero(cfg))).is_zero());
    CHECK(test::throws_kind([&] { (void)io::local_number_from(cfg, Json{{"valuation", 0}, {"unit_digits", {{5, 0}}}}); },
                            ErrorKind::InvalidInput));

    const ff::GroundField F(3, 1);
    const auto v = ff::Place::finite(F, {1, 0, 1});
    CHECK(io::place_from(F, io::to_json(v)) == v);
    CHECK(io::place_from(F, Json{{"infinity", true}}) == ff::Place::infinity());
    CHECK(io::place_from(F, "inf") == ff::Place::infinity());
    ff::Divisor D;
    D.set(v, 2);
    D.set(ff::Place::infinity(), -1);
    CHECK(io::divisor_from(F, io::to_json(D)) == D);
    const auto fc = io::field_config_from(io::to_json(cfg));
    CHECK(fc == cfg);
}
