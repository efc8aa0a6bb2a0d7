"""Invariant SU(3)- and G2-structures on Lie algebras.

Report functions return the same dictionaries the command line tool prints
as JSON. Forms, matrices and scalars use the text grammar of the C++ core,
for example ``"e12+e34-e56"`` or ``"diag(1,1,1,1,2,2)"``.
"""

import json as _json

from . import _core
from ._core import Error, ParseError, differential, hitchin_lambda, wedge

__all__ = [
    "Error",
    "ParseError",
    "algebra_list",
    "algebra_show",
    "check_scenario",
    "differential",
    "g2_analyze",
    "hitchin_lambda",
    "lambda_table",
    "metric_analyze",
    "obstruction",
    "reproduce",
    "su3_check",
    "wedge",
]


def algebra_list():
    return _json.loads(_core.algebra_list())


def algebra_show(algebra, ring=None):
    return _json.loads(_core.algebra_show(algebra, ring))


def su3_check(algebra, omega, sigma, lenient=False, ring=None, tol=1e-10):
    return _json.loads(_core.su3_check(algebra, omega, sigma, lenient, ring, tol))


def metric_analyze(algebra, metric=None, ring=None, tol=1e-10):
    return _json.loads(_core.metric_analyze(algebra, metric, ring, tol))


def g2_analyze(algebra, phi, orientation="coframe", ring=None, tol=1e-10):
    return _json.loads(_core.g2_analyze(algebra, phi, orientation, ring, tol))


def lambda_table(seed=1):
    return _json.loads(_core.lambda_table(seed))


def obstruction(which, trials, seed=1):
    return _json.loads(_core.obstruction(which, trials, seed))


def reproduce(only=None, ring=None, tol=1e-10):
    return _json.loads(_core.reproduce(only, ring, tol))


def check_scenario(text, tol=1e-10):
    return _json.loads(_core.check_scenario(text, tol))
