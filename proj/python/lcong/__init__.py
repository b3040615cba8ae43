"""Exact congruence checks for Whittaker functions, local and over F_q(t)."""

import json

from ._core import (
    SCHEMA_VERSION,
    FieldConfig,
    LcongError,
    LocalNumber,
    SatakeParam,
    char_poly,
    check_congruence,
    congruent,
    is_integral,
    match_residues,
    run_cli,
    schur_value,
    whittaker_value,
)
from . import _core

__all__ = [
    "SCHEMA_VERSION",
    "FieldConfig",
    "LcongError",
    "LocalNumber",
    "SatakeParam",
    "char_poly",
    "check_congruence",
    "congruent",
    "is_integral",
    "match_residues",
    "run_cli",
    "schur_value",
    "whittaker_value",
    "rr_space",
    "psi_exponent",
    "quotient_index",
    "mirabolic_expand",
    "run",
]


def _ground(p, f=1):
    return json.dumps({"p": p, "f": f})


def rr_space(divisor, p, f=1):
    """Basis of L(D); divisor is a list of (place, n) with places as in the CLI schema."""
    return json.loads(_core._rr_space(_ground(p, f), json.dumps([list(t) for t in divisor])))


def psi_exponent(gamma, p, f=1):
    """Exponent e with psi(gamma) = zeta_p^e on the diagonal embedding of gamma."""
    return _core._psi_exponent(_ground(p, f), json.dumps(gamma))


def quotient_index(U, p, f=1):
    """(index, p, exponent) for the image of U in A/k."""
    return _core._quotient_index(_ground(p, f), json.dumps([list(t) for t in U]))


def mirabolic_expand(spec, point, p, ell, f=1, d=1):
    """Exact expansion phi(g) of a global Whittaker spec at a mirabolic point."""
    field = json.dumps({"ell": ell, "d": d})
    return json.loads(_core._mirabolic_expand(_ground(p, f), field, json.dumps(spec), json.dumps(point)))


def run(command, document, **flags):
    """Run a CLI subcommand on a JSON document; returns (exit_code, report)."""
    doc = dict(document)
    doc.setdefault("schema_version", SCHEMA_VERSION)
    args = [command, "--format", "json", "--input", "-"]
    for key, value in flags.items():
        args += ["--" + key.replace("_", "-"), str(value)]
    code, out, _ = run_cli(args, json.dumps(doc))
    return code, json.loads(out)
