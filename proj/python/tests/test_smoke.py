import lcong
import pytest


def test_whittaker_normalization_and_vanishing():
    cfg = lcong.FieldConfig(13)
    s = lcong.SatakeParam(cfg, 3, [2, 5])
    coef, half = lcong.whittaker_value(s, [0, 0])
    assert coef == 1 and half == 0
    coef, half = lcong.whittaker_value(s, [1, 0])
    assert coef == 7 and half == -1
    coef, _ = lcong.whittaker_value(s, [0, 1])
    assert coef.is_zero


def test_char_poly_and_congruence():
    cfg = lcong.FieldConfig(7)
    a = lcong.SatakeParam(cfg, 3, [2, 3])
    b = lcong.SatakeParam(cfg, 3, [10, 9])
    assert [c == x for c, x in zip(lcong.char_poly(a), [-5, 6])] == [True, True]
    assert lcong.is_integral(a)
    assert not lcong.is_integral(lcong.SatakeParam(cfg, 3, ["1/7", 1]))
    assert lcong.congruent(a, b)
    assert lcong.match_residues(a, b) == [1, 0]
    report = lcong.check_congruence(a, b, 3)
    assert report["violations"] == []
    assert report["checked"] > 0


def test_local_number_json_round_trip():
    cfg = lcong.FieldConfig(5, 2)
    x = lcong.LocalNumber(cfg, ["3/10", 7])
    assert x.valuation == -1
    y = lcong.LocalNumber.from_json(cfg, x.to_json())
    assert y.identical(x)
    assert (x * x.inv()) == 1


def test_errors_carry_their_kind():
    cfg = lcong.FieldConfig(7)
    with pytest.raises(lcong.LcongError) as info:
        lcong.SatakeParam(cfg, 7, [1])
    assert info.value.args[0] == "InvalidInput"


def test_function_field_helpers():
    basis = lcong.rr_space([({"finite": [0, 1]}, 2)], p=3)
    assert len(basis) == 3
    assert lcong.psi_exponent({"num": [1, 0, 1], "den": [2, 1]}, p=3) == 0
    assert lcong.quotient_index([({"finite": [0, 1]}, 2), ({"infinity": True}, 3)], p=2, f=2) == (256, 2, 8)


def test_cli_round_trip():
    code, report = lcong.run("rr", {"ground": {"p": 3}, "divisor": [[{"finite": [0, 1]}, 2]]}, seed=4)
    assert code == 0
    assert report["schema_version"] == lcong.SCHEMA_VERSION
    assert report["seed"] == 4
    assert report["dimension"] == 3
    code, report = lcong.run("index", {"ground": {"p": 3}})
    assert code == 2
    assert report["error"]["kind"] == "InvalidInput"


def test_mirabolic_expand_identity():
    spec = {
        "w": {"infinity": True},
        "places": [{"place": {"infinity": True},
                    "datum": {"kind": "tabulated", "central": 1, "table": [{"j": 0, "m": 0, "value": 1}]}}],
        "default_mu": [1, 2],
    }
    value = lcong.mirabolic_expand(spec, [], p=3, ell=7)
    assert value["valuation_at_least"] == 0
    # Only the constants gamma in F_3^x contribute, each with value 1.
    assert value["formal"][0]["coef"]["exact"] == "2"
