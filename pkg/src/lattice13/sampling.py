"""Seeded random generators for forms and unimodular matrices, shared by the
verification suites and the benchmarks."""
from __future__ import annotations

import random
from fractions import Fraction

from .core import SymMat, det_int, is_positive_definite
from .reduction import minkowski_reduce, reduce_2d, selling_reduce

__all__ = [
    "random_form",
    "random_form_2d",
    "random_minkowski_form",
    "random_reduced_2d",
    "random_selling_form",
    "random_unimodular",
    "rng_for",
]


def _entry(rng, lo, hi, den):
    return Fraction(rng.randint(lo * den, hi * den), den) if den > 1 else Fraction(rng.randint(lo, hi))


def random_form(rng, span=20, den=1):
    """Random positive-definite 3x3 form; entries have denominator dividing ``den``."""
    while True:
        d = [_entry(rng, 1, span, den) for _ in range(3)]
        o = [_entry(rng, -span // 2, span // 2, den) for _ in range(3)]
        S = SymMat.from_entries(d + o)
        if is_positive_definite(S):
            return S


def random_form_2d(rng, span=20, den=1):
    while True:
        S = SymMat.from_entries([_entry(rng, 1, span, den), _entry(rng, 1, span, den),
                                 _entry(rng, -span // 2, span // 2, den)])
        if is_positive_definite(S):
            return S


def random_minkowski_form(rng, span=20, den=1):
    return minkowski_reduce(random_form(rng, span, den)).reduced


def random_selling_form(rng, span=20, den=1):
    return selling_reduce(random_form(rng, span, den)).reduced


def random_reduced_2d(rng, span=20, den=1):
    return reduce_2d(random_form_2d(rng, span, den)).reduced


def random_unimodular(rng, bound=5, n=3):
    """Uniform over integer n x n matrices with entries in [-bound, bound] and
    determinant +-1 (rejection sampling)."""
    while True:
        g = tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n))
        if det_int(g) in (1, -1):
            return g


def rng_for(seed):
    return random.Random(seed)
