#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "lcong/cyclo.hpp"
#include "lcong/function_field.hpp"
#include "lcong/global.hpp"
#include "lcong/satake.hpp"

/// JSON encodings shared by the command-line tool and the Python module.
/// Parsing failures raise InvalidInput with the offending path in the message.
namespace lcong::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

/// Accepts "1.x" (string) or 1 (integer); anything else is InvalidInput.
void check_schema_version(const Json& doc);

padic::FieldConfig field_config_from(const Json& j);
Json to_json(const padic::FieldConfig& cfg);
ff::GroundField ground_field_from(const Json& j);
Json to_json(const ff::GroundField& F);

/// Integer, "a/b" string, array of rational coefficients in the power basis,
/// {"exact": ...}, or {"valuation", "unit_digits"} where unit_digits[k][i] is
/// the ell^k digit of the X^i coordinate of the unit (one row per known digit).
/// Output always carries valuation and unit_digits, plus "exact" when known.
padic::LocalNumber local_number_from(const padic::FieldConfig& cfg, const Json& j);
Json to_json(const padic::LocalNumber& x);
Json to_json(const padic::Residue& r);

ff::Poly poly_from(const ff::GroundField& F, const Json& j);
Json poly_json(const ff::Poly& a);

/// {"infinity": true} or {"finite": [...]}; "inf" and bare coefficient lists are
/// accepted on input.
ff::Place place_from(const ff::GroundField& F, const Json& j);
Json to_json(const ff::Place& v);

/// {"num": [...], "den": [...]} (den defaults to 1) or a bare coefficient list.
ff::RationalFunction rational_from(const ff::GroundField& F, const Json& j);
Json to_json(const ff::RationalFunction& r);

/// {"valuation", "digits", "precision"?}; a missing precision means exact.
ff::LocalElement local_element_from(const ff::GroundField& F, const ff::Place& v, const Json& j);
Json to_json(const ff::LocalElement& x);

/// [[place, n], ...]; {"place", "n"} objects are accepted on input.
ff::Divisor divisor_from(const ff::GroundField& F, const Json& j);
Json to_json(const ff::Divisor& D);

/// {"q": ..., "mu": [...]}
satake::SatakeParam satake_from(const padic::FieldConfig& cfg, const Json& j);
Json to_json(const satake::SatakeParam& s);

global::KirillovTable table_from(const padic::FieldConfig& cfg, const Json& j);
Json to_json(const global::KirillovTable& t);
global::GlobalWhittakerSpec spec_from(const ff::GroundField& F, const padic::FieldConfig& cfg, const Json& j);
Json to_json(const global::GlobalWhittakerSpec& spec);
/// [{"place", "x"?, "a": [a1, a2], "central"?}, ...]
global::MirabolicPoint point_from(const ff::GroundField& F, const Json& j);
Json to_json(const global::MirabolicPoint& g);
global::CharacterData character_from(const ff::GroundField& F, const padic::FieldConfig& cfg, const Json& j);

/// {"formal": ..., "valuation_at_least": ..., "value": ...}; value is null when
/// the square root of q needed to collapse it does not exist.
Json to_json(const CycloValue& x, const std::optional<padic::LocalNumber>& sqrt_q);

}  // namespace lcong::io
