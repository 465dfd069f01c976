"""Quadratic forms on 3x3 matrices: acoustic tensor, determinant structure,
extremality and polyconvexity certificates.

Forms are passed as JSON-style dicts in the CLI's document format, e.g.
``{"d": 3, "format": "tensor4", "coefficients": [{"i": 1, "j": 1, "k": 1, "l": 1, "value": "1"}]}``.
"""

import json as _json

from . import _core
from ._core import QuasiformError, catalog_names

__all__ = [
    "QuasiformError",
    "acoustic",
    "catalog",
    "catalog_names",
    "certify",
    "classify",
    "determinant",
    "probe",
    "selftest",
    "verify",
]


def _doc(form):
    return form if isinstance(form, str) else _json.dumps(form)


def catalog(name, format="tensor4"):
    return _json.loads(_core.catalog(name, format))


def acoustic(form):
    return _json.loads(_core.acoustic(_doc(form)))


def determinant(form):
    return _core.determinant(_doc(form))


def classify(form, seed=0, restarts=16, tol=1e-9, max_iter=3000):
    return _json.loads(_core.classify(_doc(form), seed, restarts, tol, max_iter))


def certify(form, what, seed=0, restarts=16, tol=1e-9, max_iter=3000):
    return _json.loads(_core.certify(_doc(form), what, seed, restarts, tol, max_iter))


def probe(form, seed=0):
    return _json.loads(_core.probe(_doc(form), seed))


def verify(certificate):
    return _core.verify(_doc(certificate))


def selftest(seed=0):
    return _json.loads(_core.selftest(seed))
