#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lcong/cli.hpp"
#include "lcong/json_io.hpp"

namespace py = pybind11;
using namespace lcong;
using io::Json;
using padic::FieldConfig;
using padic::LocalNumber;

namespace {

// Structured data crosses the boundary as JSON text; the Python side wraps it.
Json parse(const std::string& s) {
    Json j = Json::parse(s, nullptr, false);
    require(!j.is_discarded(), ErrorKind::InvalidInput, "malformed JSON argument");
    return j;
}

LocalNumber number(const FieldConfig& cfg, const py::object& x) {
    if (py::isinstance<LocalNumber>(x)) return x.cast<LocalNumber>();
    if (py::isinstance<py::int_>(x)) return LocalNumber::from_integer(cfg, mpz_class(py::str(x).cast<std::string>()));
    if (py::isinstance<py::str>(x)) return io::local_number_from(cfg, Json(x.cast<std::string>()));
    fail(ErrorKind::InvalidInput, "expected a LocalNumber, an int or an \"a/b\" string");
}

satake::SatakeParam make_param(const FieldConfig& cfg, std::int64_t q, const py::list& mu) {
    std::vector<LocalNumber> v;
    for (const auto& x : mu) v.push_back(number(cfg, py::reinterpret_borrow<py::object>(x)));
    return satake::SatakeParam(q, std::move(v));
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact congruence checks for Whittaker functions (C++ core)";

    static py::exception<Error> exc(m, "LcongError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object args = py::make_tuple(std::string(to_string(e.kind())), std::string(e.what()));
            PyErr_SetObject(exc.ptr(), args.ptr());
        }
    });

    m.attr("SCHEMA_VERSION") = io::kSchemaVersion;

    py::class_<FieldConfig>(m, "FieldConfig")
        .def(py::init([](std::int64_t ell, int d, int precision, std::vector<std::int64_t> modulus) {
                 return FieldConfig::make(ell, d, precision, std::move(modulus));
             }),
             py::arg("ell"), py::arg("d") = 1, py::arg("precision") = 32, py::arg("modulus") = std::vector<std::int64_t>{})
        .def_property_readonly("ell", &FieldConfig::ell)
        .def_property_readonly("d", &FieldConfig::degree)
        .def_property_readonly("precision", &FieldConfig::precision)
        .def_property_readonly("modulus", &FieldConfig::modulus)
        .def("__eq__", &FieldConfig::operator==)
        .def("__repr__", &FieldConfig::describe);

    py::class_<LocalNumber>(m, "LocalNumber")
        .def(py::init([](const FieldConfig& cfg, const py::object& x) {
                 if (py::isinstance<py::list>(x)) return io::local_number_from(cfg, parse(py::str(py::module_::import("json").attr("dumps")(x))));
                 return number(cfg, x);
             }),
             py::arg("cfg"), py::arg("value"))
        .def_static("from_json", [](const FieldConfig& cfg, const std::string& s) { return io::local_number_from(cfg, parse(s)); })
        .def("to_json", [](const LocalNumber& x) { return dump(io::to_json(x)); })
        .def_property_readonly("valuation", [](const LocalNumber& x) -> py::object {
            if (x.is_zero()) return py::none();
            return py::int_(x.valuation());
        })
        .def_property_readonly("is_zero", &LocalNumber::is_zero)
        .def_property_readonly("is_exact", &LocalNumber::is_exact)
        .def("reduce", [](const LocalNumber& x) { return x.reduce().coeffs(); })
        .def("inv", &LocalNumber::inv)
        .def("__pow__", &LocalNumber::pow)
        .def("__add__", [](const LocalNumber& a, const py::object& b) { return a + number(a.config(), b); })
        .def("__radd__", [](const LocalNumber& a, const py::object& b) { return number(a.config(), b) + a; })
        .def("__sub__", [](const LocalNumber& a, const py::object& b) { return a - number(a.config(), b); })
        .def("__rsub__", [](const LocalNumber& a, const py::object& b) { return number(a.config(), b) - a; })
        .def("__mul__", [](const LocalNumber& a, const py::object& b) { return a * number(a.config(), b); })
        .def("__rmul__", [](const LocalNumber& a, const py::object& b) { return number(a.config(), b) * a; })
        .def("__truediv__", [](const LocalNumber& a, const py::object& b) { return a / number(a.config(), b); })
        .def("__neg__", [](const LocalNumber& a) { return -a; })
        .def("__eq__", [](const LocalNumber& a, const py::object& b) { return a.agrees_with(number(a.config(), b)); })
        .def("identical", &LocalNumber::identical)
        .def("__repr__", &LocalNumber::to_string);

    py::class_<satake::SatakeParam>(m, "SatakeParam")
        .def(py::init(&make_param), py::arg("cfg"), py::arg("q"), py::arg("mu"))
        .def_property_readonly("q", &satake::SatakeParam::q)
        .def_property_readonly("rank", &satake::SatakeParam::rank)
        .def_property_readonly("mu", &satake::SatakeParam::mu);

    m.def("char_poly", [](const satake::SatakeParam& s) { return satake::char_poly(s).coeffs; },
          "Coefficients (c_1, ..., c_n) of the monic characteristic polynomial.");
    m.def("is_integral", [](const satake::SatakeParam& s) { return satake::is_integral(satake::char_poly(s)); });
    m.def("congruent", [](const satake::SatakeParam& a, const satake::SatakeParam& b) {
        return satake::congruent(satake::char_poly(a), satake::char_poly(b));
    });
    m.def("match_residues", &satake::match_residues);
    m.def("schur_value", &whittaker::schur_value);
    m.def("whittaker_value", [](const satake::SatakeParam& s, const whittaker::Weight& a) {
        const auto w = whittaker::whittaker_value(s, a);
        return py::make_tuple(w.coef, w.q_half_exp);
    }, "Returns (coef, q_half_exp) with W = coef * q^(q_half_exp / 2).");
    m.def("check_congruence", [](const satake::SatakeParam& a, const satake::SatakeParam& b, std::int64_t bound) {
        const auto rep = whittaker::check_congruence(a, b, bound);
        py::list violations;
        for (const auto& v : rep.violations) violations.append(py::make_tuple(v.weight, v.reason));
        py::dict out;
        out["checked"] = rep.checked;
        out["violations"] = violations;
        return out;
    }, py::arg("s1"), py::arg("s2"), py::arg("bound") = 4);

    // Function-field and global operations, JSON in and out.
    m.def("_rr_space", [](const std::string& ground, const std::string& divisor) {
        const auto F = io::ground_field_from(parse(ground));
        Json basis = Json::array();
        for (const auto& f : ff::rr_space(F, io::divisor_from(F, parse(divisor)))) basis.push_back(io::to_json(f));
        return dump(basis);
    });
    m.def("_psi_exponent", [](const std::string& ground, const std::string& gamma) {
        const auto F = io::ground_field_from(parse(ground));
        return ff::psi_global_exponent(F, ff::principal_adele(io::rational_from(F, parse(gamma))));
    });
    m.def("_quotient_index", [](const std::string& ground, const std::string& U) {
        const auto F = io::ground_field_from(parse(ground));
        const auto qi = ff::quotient_index(F, io::divisor_from(F, parse(U)));
        return py::make_tuple(py::int_(py::str(qi.value.get_str())), qi.p, qi.p_exponent);
    });
    m.def("_mirabolic_expand", [](const std::string& ground, const std::string& field, const std::string& spec,
                                  const std::string& point) {
        const auto F = io::ground_field_from(parse(ground));
        const auto cfg = io::field_config_from(parse(field));
        const auto s = io::spec_from(F, cfg, parse(spec));
        return dump(io::to_json(global::mirabolic_expand_exact(s, io::point_from(F, parse(point))), std::nullopt));
    });

    m.def("run_cli", [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::ostringstream out, err;
        std::istringstream in(stdin_text);
        int code;
        {
            py::gil_scoped_release release;
            code = cli::run(args, out, err, in);
        }
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"), py::arg("stdin") = "");
}
