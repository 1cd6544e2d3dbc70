"""Cyclic vectors and subspaces of finitely generated matrix algebras."""

import json
from fractions import Fraction

from . import _core
from ._core import Inconclusive, InputError

__all__ = [
    "Inconclusive",
    "InputError",
    "char_poly",
    "closure_dim",
    "commands",
    "coupling",
    "lambda_operator",
    "orbit_dim",
    "run",
]


def _s(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def _matrix(m):
    return [[_s(x) for x in row] for row in m]


def commands():
    return list(_core.commands())


def run(command, data, *, seed=0, trials=64, tol_rank=1e-9, tol_gap=1e-7, backend="exact", r=None):
    """Run a command on an input dict (or JSON text). Returns (exit_code, report)."""
    text = data if isinstance(data, str) else json.dumps(data)
    code, report = _core.run(command, text, seed, trials, tol_rank, tol_gap, backend, r)
    return code, json.loads(report)


def closure_dim(generators):
    n = len(generators[0])
    return _core.closure_dim([_matrix(g) for g in generators], n)


def orbit_dim(generators, b):
    return _core.orbit_dim([_matrix(g) for g in generators], len(b), [_s(x) for x in b])


def coupling(C, j, k):
    return Fraction(_core.coupling([_s(c) for c in C], j, k))


def lambda_operator(C, i, j, convention="displayed"):
    rows = _core.lambda_operator([_s(c) for c in C], i, j, convention)
    return [[Fraction(x) for x in row] for row in rows]


def char_poly(matrix):
    return [Fraction(x) for x in _core.char_poly(_matrix(matrix))]
