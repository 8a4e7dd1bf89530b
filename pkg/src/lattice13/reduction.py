"""Selling and Minkowski reduction of 2D/3D Gram matrices.

Every reduction returns a :class:`ReductionResult` carrying the unimodular
witness ``transform`` with ``apply_unimodular(transform, S) == reduced``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import (SymMat, apply_unimodular, det_int, identity, le, lt,
                   mat_mul, require_pd, signed_permutations)
from .errors import InternalAssertion, NonTermination

log = logging.getLogger(__name__)

__all__ = [
    "ReductionResult",
    "Superbase",
    "is_minkowski_reduced",
    "is_selling_reduced",
    "minkowski_reduce",
    "reduce_2d",
    "selling_reduce",
    "superbase",
    "theorem5_case",
]

# Balashov-Ursell transforms, indexed by case 1..3.
SIGMA = {
    1: ((-1, 0, 0), (1, 1, 0), (0, 0, 1)),
    2: ((1, 0, 0), (0, 1, 0), (1, 0, 1)),
    3: ((1, 0, 0), (0, 1, 0), (0, -1, -1)),
}


@dataclass(frozen=True)
class ReductionResult:
    reduced: SymMat
    transform: tuple


@dataclass(frozen=True)
class Superbase:
    """The (n+1)x(n+1) matrix w^T S w of the superbase e_1..e_n, -(e_1+..+e_n)."""

    tilde_S: tuple
    w: tuple

    def off_diagonal(self):
        m = len(self.tilde_S)
        return [self.tilde_S[i][j] for i in range(m) for j in range(i + 1, m)]


def _standard_superbase(n):
    vecs = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    vecs.append(tuple(-1 for _ in range(n)))
    return vecs


def _tilde(S, vecs):
    m = len(vecs)
    t = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(i, m):
            t[i][j] = t[j][i] = S.inner(vecs[i], vecs[j])
    return t


def superbase(S):
    vecs = _standard_superbase(S.n)
    w = tuple(zip(*vecs))  # columns are the superbase vectors
    return Superbase(tuple(tuple(r) for r in _tilde(S, vecs)), w)


def is_selling_reduced(S):
    require_pd(S)
    return all(le(x, 0) for x in superbase(S).off_diagonal())


def _bit_size(S):
    total = 0
    for x in S.entries:
        if isinstance(x, Fraction):
            total += x.numerator.bit_length() + x.denominator.bit_length()
        else:
            total += 64
    return total


def _selling_superbase(S):
    """Run the superbase exchange loop and return the final superbase vectors."""
    require_pd(S)
    n = S.n
    vecs = _standard_superbase(n)
    cap = max(200, 10 * _bit_size(S))
    for _ in range(cap):
        t = _tilde(S, vecs)
        best = None
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                if lt(0, t[i][j]) and (best is None or t[i][j] > t[best[0]][best[1]]):
                    best = (i, j)
        if best is None:
            return vecs
        i, j = best
        bi = vecs[i]
        if n == 3:
            new = list(vecs)
            new[i] = tuple(-x for x in bi)
            for k in range(4):
                if k not in (i, j):
                    new[k] = tuple(a + b for a, b in zip(vecs[k], bi))
        else:
            (k,) = [k for k in range(3) if k not in (i, j)]
            new = list(vecs)
            new[i] = tuple(-x for x in bi)
            new[k] = tuple(a - b for a, b in zip(bi, vecs[j]))
        vecs = new
    raise NonTermination(f"Selling reduction exceeded {cap} exchanges")


def selling_reduce(S):
    """Selling-reduce a 2D or 3D form by superbase exchanges.

    The largest positive off-diagonal entry of the superbase matrix is
    eliminated first (ties: lexicographically smallest index pair).
    """
    vecs = _selling_superbase(S)
    g = tuple(vecs[:S.n])
    return ReductionResult(apply_unimodular(g, S), g)


def reduce_2d(S):
    """Reduce a binary form to 0 <= -2 s12 <= s11 <= s22."""
    if S.n != 2:
        raise ValueError("reduce_2d expects a 2x2 form")
    vecs = _selling_superbase(S)
    order = sorted(range(3), key=lambda k: (S.quad(vecs[k]), k))
    g = (vecs[order[0]], vecs[order[1]])
    red = apply_unimodular(g, S)
    if not _is_2d_reduced(red):
        raise InternalAssertion(f"2D reduction failed on {S!r}")
    return ReductionResult(red, g)


def _is_2d_reduced(S):
    s11, s22, s12 = S.entries
    return le(0, -2 * s12) and le(-2 * s12, s11) and le(s11, s22)


def is_minkowski_reduced(S):
    s11, s22, s33, s12, s13, s23 = S.entries
    return (le(s11, s22) and le(s22, s33)
            and le(0, -2 * s12) and le(-2 * s12, s11)
            and le(2 * abs(s13), s11)
            and le(0, -2 * s23) and le(-2 * s23, s22)
            and le(-2 * (s12 + s13 + s23), s11 + s22))


def theorem5_case(S):
    """Case index 1..4 of the Balashov-Ursell transform for a Selling-reduced
    form whose superbase diagonal is sorted."""
    s11, s22, _, s12, s13, s23 = S.entries
    if lt(s11 + 2 * s12, 0):
        return 1
    if lt(s11 + 2 * s13, 0):
        return 2
    if lt(s22 + 2 * s23, 0):
        return 3
    return 4


_SIGNED_PERMS = signed_permutations(3)


def _normalize(S):
    """First signed permutation (identity first) landing in the Minkowski domain."""
    for p in _SIGNED_PERMS:
        T = apply_unimodular(p, S)
        if is_minkowski_reduced(T):
            return p, T
    return None


def _greedy_minkowski(S):
    """Exhaustive fallback: search bases among vectors no longer than the
    longest basis vector of the Selling-reduced form ``S``."""
    bound = max(S[i, i] for i in range(3))
    rng = range(-3, 4)
    short = sorted((v for v in product(rng, repeat=3)
                    if any(v) and le(S.quad(v), bound)),
                   key=lambda v: (S.quad(v), v))
    for a in short:
        for b in short:
            for c in short:
                g = (a, b, c)
                if det_int(g) in (1, -1):
                    T = apply_unimodular(g, S)
                    if is_minkowski_reduced(T):
                        return g, T
    return None


def minkowski_reduce(S):
    """Minkowski-reduce a ternary form.

    Pipeline: Selling reduction, sorting of the superbase by norm, the
    Balashov-Ursell transform selected by :func:`theorem5_case`, then a
    signed-permutation normalization onto the exact inequality system.
    """
    if S.n != 3:
        raise ValueError("minkowski_reduce expects a 3x3 form")
    vecs = _selling_superbase(S)
    order = sorted(range(4), key=lambda k: (S.quad(vecs[k]), k))
    basis = tuple(vecs[k] for k in order[:3])
    sel = apply_unimodular(basis, S)
    case = theorem5_case(sel)
    g = basis if case == 4 else mat_mul(SIGMA[case], basis)
    T = apply_unimodular(g, S)
    found = _normalize(T)
    if found is None:
        log.debug("signed-permutation normalization failed on %r; searching", T)
        found = _greedy_minkowski(sel)
        if found is None:
            raise InternalAssertion(f"could not Minkowski-reduce {S!r}")
        h, T = found
        g = mat_mul(h, basis)
    else:
        p, T = found
        g = mat_mul(p, g)
    return ReductionResult(T, g)


def is_identity(g):
    return g == identity(len(g))
