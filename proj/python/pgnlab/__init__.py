"""Exact parametric geometry of numbers."""

import json
from fractions import Fraction

from . import _pgnlab
from ._pgnlab import PgnError, run

__all__ = [
    "PgnError",
    "block",
    "classify",
    "construct",
    "dirichlet",
    "profile",
    "run",
    "subspace",
    "tau_check",
    "transference",
    "validate",
]


def _strs(values):
    return [str(v) for v in values]


def fraction(text):
    return Fraction(text)


def construct(n, gamma, tau, delta=0, blocks=6, strict=False):
    return json.loads(_pgnlab.construct(n, str(gamma), _strs(tau), str(delta), blocks, strict))


def validate(system):
    text = system if isinstance(system, str) else json.dumps(system)
    return json.loads(_pgnlab.validate(text))


def block(params):
    return json.loads(_pgnlab.block(json.dumps(params)))


def profile(x, ts=None, qs=None, threads=0):
    """Rows of the profile as dicts; give either ts (floats) or qs (rationals)."""
    if qs is None:
        qs = [_pgnlab.q_from_t(t) for t in ts]
    text = _pgnlab.profile(_strs(x), _strs(qs), threads)
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]], text


def classify(csv_text, d=0):
    return json.loads(_pgnlab.classify(csv_text, d))


def tau_check(n, tau):
    return json.loads(_pgnlab.tau_check(n, _strs(tau)))


def transference(n, omega):
    return json.loads(_pgnlab.transference(n, _strs(omega)))


def dirichlet(x, d, N):
    return json.loads(_pgnlab.dirichlet(_strs(x), d, str(N)))


def subspace(x, d, h_max):
    return json.loads(_pgnlab.subspace(_strs(x), d, str(h_max)))
