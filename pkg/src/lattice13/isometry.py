"""Potential isometries between nearly identical Minkowski-reduced forms, and
exact isometry search between exact forms.

Matrices act on row vectors: ``g`` maps ``S`` to ``g S g^T`` and row ``j`` of
``g`` is the new ``j``-th basis vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import (apply_unimodular, det_int, inverse_int, le, lt, mat_mul,
                   require_pd)
from .errors import NotReduced
from .reduction import is_minkowski_reduced, minkowski_reduce
from .vonorm import first_minimum, short_vectors, voronoi_vectors

__all__ = [
    "IsometryCandidate",
    "PsiSets",
    "candidate_isometries",
    "exact_isometries",
    "match_isometry",
    "psi_sets",
    "residual",
    "satisfies_condition_c",
    "stably_less",
]


def _pm(*vs):
    return [w for v in vs for w in (v, tuple(-x for x in v))]


_PSI1 = tuple(_pm((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1),
                  (0, 1, 1), (1, 0, -1), (1, 1, 1), (1, -1, -1)))
_PSI3 = _PSI1 + tuple(_pm((1, -1, 0)))


@dataclass(frozen=True)
class PsiSets:
    psi1: tuple
    psi2: tuple
    psi3: tuple


def psi_sets():
    return PsiSets(_PSI1, _PSI1, _PSI3)


@dataclass(frozen=True)
class IsometryCandidate:
    g: tuple
    residual: object

    @property
    def exact_match(self):
        return self.residual == 0


def stably_less(S, v1, v2, lam1=None):
    """v1 <<_S v2: the norm gap is at least the first minimum of S."""
    if lam1 is None:
        lam1 = first_minimum(S)
    return le(lam1, S.quad(v2) - S.quad(v1))


def _reduced(S, auto_reduce):
    if is_minkowski_reduced(S):
        return S, None
    if not auto_reduce:
        raise NotReduced(f"{S!r} is not Minkowski-reduced")
    res = minkowski_reduce(S)
    return res.reduced, res.transform


def _row_candidates(S, inclusive):
    """Rows allowed by the norm bound lambda_j + lambda_1, drawn from the
    vectors that are shortest in their class modulo 3."""
    lam = [S[j, j] for j in range(3)]
    phi = voronoi_vectors(S, 3)
    top = lam[2] + lam[0]
    pool = [(val, v) for val, v in short_vectors(S, top) if v in phi]
    cmp = le if inclusive else lt
    return [[v for val, v in pool if cmp(val, lam[j] + lam[0])] for j in range(3)]


def candidate_isometries(S, inclusive=False, auto_reduce=True):
    """All g whose rows pass the norm bound and whose inverse has every row
    in Psi_3.  Sorted lexicographically on the flattened matrix.

    With ``auto_reduce`` a non-reduced ``S`` is Minkowski-reduced first and
    the candidates refer to the reduced basis.
    """
    require_pd(S)
    S, _ = _reduced(S, auto_reduce)
    rows = _row_candidates(S, inclusive)
    psi3 = set(_PSI3)
    out = []
    for g in product(*rows):
        if det_int(g) not in (1, -1):
            continue
        if all(r in psi3 for r in inverse_int(g)):
            out.append(g)
    out.sort(key=lambda g: tuple(x for row in g for x in row))
    return out


def residual(g, S1, S2):
    """max |g S1 g^T - S2| over the entries."""
    return (apply_unimodular(g, S1) - S2).max_abs()


def satisfies_condition_c(g, T1, T2, lam1=None, lam2=None):
    """Neither e_i << g^T e_i (under T1) nor e_i << g^-T e_i (under T2)."""
    lam1 = T1[0, 0] if lam1 is None else lam1
    lam2 = T2[0, 0] if lam2 is None else lam2
    h = inverse_int(g)
    for i in range(3):
        if le(lam1, T1.quad(g[i]) - T1[i, i]):
            return False
        if le(lam2, T2.quad(h[i]) - T2[i, i]):
            return False
    return True


def _distance_from_identity(g):
    return sum(abs(x - (i == j)) for i, row in enumerate(g) for j, x in enumerate(row))


def match_isometry(T1, T2, tol, inclusive=False, all_candidates=False):
    """Best g with g T1 g^T ~ T2 among the potential isometries of T1.

    Inputs that are not Minkowski-reduced are reduced first; the returned
    matrix always refers to the input bases.  With ``all_candidates`` the
    full list of C-admissible candidates within ``tol`` is returned, sorted
    by residual.
    """
    require_pd(T1)
    require_pd(T2)
    R1, a = _reduced(T1, True)
    R2, b = _reduced(T2, True)
    binv = inverse_int(b) if b is not None else None
    found = []
    for k in candidate_isometries(R1, inclusive=inclusive, auto_reduce=False):
        if not satisfies_condition_c(k, R1, R2):
            continue
        g = k
        if a is not None:
            g = mat_mul(g, a)
        if binv is not None:
            g = mat_mul(binv, g)
        res = residual(g, T1, T2)
        if le(res, tol):
            found.append(IsometryCandidate(g, res))
    found.sort(key=lambda c: (c.residual, _distance_from_identity(c.g),
                              tuple(x for r in c.g for x in r)))
    if all_candidates:
        return found
    return found[0] if found else None


def exact_isometries(S1, S2):
    """Every g in GL_3(Z) with g S1 g^T = S2, found by backtracking over
    short vectors of the reduced S1 with matching norms and inner products."""
    require_pd(S1)
    require_pd(S2)
    if S1.det() != S2.det():
        return []
    r1 = minkowski_reduce(S1)
    r2 = minkowski_reduce(S2)
    R1, R2 = r1.reduced, r2.reduced
    n = R1.n
    diag = [R2[j, j] for j in range(n)]
    pool = short_vectors(R1, max(diag))
    by_norm = [[v for val, v in pool if val == d] for d in diag]
    binv = inverse_int(r2.transform)
    out = []

    def extend(rows):
        j = len(rows)
        if j == n:
            if det_int(rows) in (1, -1):
                out.append(mat_mul(mat_mul(binv, tuple(rows)), r1.transform))
            return
        for v in by_norm[j]:
            if all(R1.inner(rows[i], v) == R2[i, j] for i in range(j)):
                extend(rows + [v])

    extend([])
    return sorted(out)
