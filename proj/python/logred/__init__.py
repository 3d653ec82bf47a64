"""Elliptic surfaces over k(pi): fibres, tameness of the discriminant and log charts.

Every entry point returns the same JSON document as the ``logred`` command
line tool, decoded into Python objects.
"""

import json

from . import _core
from ._core import Error, FieldError, MathError, ParseError, kodaira_type

schema_version = _core.schema_version


def analyze(text, assert_cohomological_tameness=False, aux_degree=None):
    return json.loads(_core.analyze(text, assert_cohomological_tameness, aux_degree))


def local_analysis(text, place):
    return json.loads(_core.local_analysis(text, place))


def tame(text):
    return json.loads(_core.tame(text))


def torsion3(text, oracle_q=None):
    return json.loads(_core.torsion3(text, oracle_q))


def charts(text, remove_horizontal=False, p=None):
    return json.loads(_core.charts(text, remove_horizontal, p))


def smith_normal_form(matrix):
    out = json.loads(_core.smith_normal_form(matrix))
    for key in ("U", "S", "V"):
        out[key] = [[int(x) for x in row] for row in out[key]]
    out["invariants"] = [int(x) for x in out["invariants"]]
    return out


def selftest():
    return json.loads(_core.selftest())


__all__ = [
    "Error",
    "FieldError",
    "MathError",
    "ParseError",
    "analyze",
    "charts",
    "kodaira_type",
    "local_analysis",
    "schema_version",
    "selftest",
    "smith_normal_form",
    "tame",
    "torsion3",
]
