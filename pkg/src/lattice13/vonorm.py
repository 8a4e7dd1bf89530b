"""Vonorms modulo r, conorms and Voronoi vectors modulo r.

Coset minima are found by exhaustive enumeration in a Selling-reduced frame,
inside the box ``|x_i| <= sqrt(bound * (R^-1)_ii)`` that provably contains
every vector of norm at most ``bound``.  Exact forms are rescaled to integer
matrices first so the inner loop runs on Python ints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .core import (CONFIG, SymMat, adjugate, inverse_int, require_pd, vec_mat)
from .reduction import selling_reduce

__all__ = [
    "CosetClass",
    "PhiSet",
    "VonormTable",
    "conorm_map",
    "coset_classes",
    "first_minimum",
    "general_position_count",
    "is_general_position",
    "shortest_in_coset",
    "short_vectors",
    "vonorm_map",
    "voronoi_vectors",
]


def _mod(u, r):
    return tuple(x % r for x in u)


def _neg(u):
    return tuple(-x for x in u)


def sign_canonical(v):
    """``v`` or ``-v``, whichever has its first nonzero coordinate positive."""
    for x in v:
        if x:
            return tuple(v) if x > 0 else _neg(v)
    return tuple(v)


@dataclass(frozen=True, order=True)
class CosetClass:
    representative: tuple
    modulus: int
    identified_with_negation: bool = True

    @classmethod
    def of(cls, u, r):
        a = _mod(u, r)
        if not any(a):
            raise ValueError("the zero coset has no vonorm")
        b = _mod(_neg(u), r)
        return cls(min(a, b), r, a != b)


@lru_cache(maxsize=None)
def coset_classes(n, r):
    """Nonzero classes of Z^n / rZ^n modulo +-1, sorted by representative."""
    seen = set()
    for u in product(range(r), repeat=n):
        if any(u):
            seen.add(CosetClass.of(u, r))
    return tuple(sorted(seen))


@dataclass(frozen=True)
class PhiSet:
    """Finite set of nonzero integer vectors closed under negation."""

    vectors: frozenset
    modulus: int = 0

    def __post_init__(self):
        vs = frozenset(tuple(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vs)
        for v in vs:
            if not any(v):
                raise ValueError("PhiSet may not contain the zero vector")
            if _neg(v) not in vs:
                raise ValueError(f"PhiSet is not closed under negation: {v}")

    @classmethod
    def from_vectors(cls, vectors, modulus=0, symmetrize=True):
        vs = set(tuple(v) for v in vectors)
        if symmetrize:
            vs |= {_neg(v) for v in vs}
        return cls(frozenset(vs), modulus)

    def __iter__(self):
        return iter(sorted(self.vectors))

    def __len__(self):
        return len(self.vectors)

    def __contains__(self, v):
        return tuple(v) in self.vectors

    def sorted(self):
        return sorted(self.vectors)

    def __or__(self, other):
        return PhiSet(self.vectors | other.vectors, self.modulus)

    def __and__(self, other):
        return PhiSet(self.vectors & other.vectors, self.modulus)

    def __sub__(self, other):
        return PhiSet(self.vectors - other.vectors, self.modulus)

    def __le__(self, other):
        return self.vectors <= other.vectors

    @property
    def dim(self):
        return len(next(iter(self.vectors))) if self.vectors else 0


def _center(x, r):
    m = x % r
    return m if m <= r // 2 else m - r


class _Frame:
    """A Selling-reduced copy of ``S`` with integer (or float) coefficients."""

    def __init__(self, S):
        require_pd(S)
        res = selling_reduce(S)
        self.S = S
        self.g = res.transform
        self.ginv = inverse_int(res.transform)
        R = res.reduced
        self.exact = R.is_exact
        n = S.n
        if self.exact:
            L = 1
            for x in R.entries:
                L = L * x.denominator // math.gcd(L, x.denominator)
            self.scale = L
            self.Q = tuple(tuple(int(x * L) for x in row) for row in R.rows)
        else:
            self.scale = 1
            self.Q = R.rows
        Q = self.Q
        self.det = SymMat(Q).det()
        adj = adjugate(Q)
        self.cof = tuple(adj[i][i] for i in range(n))
        self.n = n

    def q(self, x):
        Q = self.Q
        if self.n == 3:
            a, b, c = x
            return (Q[0][0] * a * a + Q[1][1] * b * b + Q[2][2] * c * c
                    + 2 * (Q[0][1] * a * b + Q[0][2] * a * c + Q[1][2] * b * c))
        a, b = x
        return Q[0][0] * a * a + Q[1][1] * b * b + 2 * Q[0][1] * a * b

    def radius(self, bound, i):
        if self.exact:
            return math.isqrt(bound * self.cof[i] // self.det)
        return int(math.floor(math.sqrt(max(0.0, bound * self.cof[i] / self.det))
                              + 1e-9))

    def coset_minimizers(self, u, r):
        """Minimum of the form over u + rZ^n and all minimizers (S-coordinates)."""
        x0 = tuple(_center(x, r) for x in vec_mat(u, self.ginv))
        bound = self.q(x0)
        tol = 0 if self.exact else CONFIG.tau_cmp
        axes = []
        for i in range(self.n):
            rad = self.radius(bound + tol, i)
            lo = -rad + ((x0[i] + rad) % r)
            axes.append(range(lo, rad + 1, r))
        scored = [(self.q(x), x) for x in product(*axes)]
        best = min(val for val, _ in scored)
        found = [x for val, x in scored if val <= best + tol]
        value = Fraction(best, self.scale) if self.exact else best
        return value, [vec_mat(x, self.g) for x in found]


    def short(self, bound):
        """Nonzero x (frame coordinates) with q(x) <= bound, bound already scaled."""
        tol = 0 if self.exact else CONFIG.tau_cmp
        axes = [range(-self.radius(bound + tol, i), self.radius(bound + tol, i) + 1)
                for i in range(self.n)]
        return [(v, x) for x in product(*axes) if any(x)
                for v in (self.q(x),) if v <= bound + tol]


@lru_cache(maxsize=4096)
def _frame(S):
    return _Frame(S)


def shortest_in_coset(S, u, r):
    """(min of w S w^T over w in u + rZ^n, lexicographically smallest minimizer)."""
    u = tuple(u)
    if not any(x % r for x in u):
        raise ValueError("u lies in rZ^n")
    value, ws = _frame(S).coset_minimizers(u, r)
    return value, min(ws)


def short_vectors(S, bound):
    """All nonzero v with v S v^T <= bound, as (value, v) sorted by value then v."""
    frame = _frame(S)
    if frame.exact:
        scaled = Fraction(bound) * frame.scale
        scaled = scaled.numerator // scaled.denominator
    else:
        scaled = float(bound)
    out = []
    for val, x in frame.short(scaled):
        value = Fraction(val, frame.scale) if frame.exact else val
        out.append((value, vec_mat(x, frame.g)))
    out.sort()
    return out


@dataclass(frozen=True)
class VonormTable:
    modulus: int
    n: int
    entries: dict

    def __getitem__(self, u):
        key = u if isinstance(u, CosetClass) else CosetClass.of(u, self.modulus)
        return self.entries[key]

    def __len__(self):
        return len(self.entries)

    def classes(self):
        return list(self.entries)

    def values(self):
        return [self.entries[c][0] for c in self.entries]

    def sorted_values(self):
        return sorted(self.values())

    def witnesses(self):
        return [self.entries[c][1] for c in self.entries]


def vonorm_map(S, r):
    """Vonorm map modulo ``r``: one (value, witness) per class of cosets mod +-."""
    if r < 2:
        raise ValueError("modulus must be >= 2")
    frame = _frame(S)
    entries = {}
    for cls in coset_classes(S.n, r):
        value, ws = frame.coset_minimizers(cls.representative, r)
        entries[cls] = (value, min(sign_canonical(w) for w in ws))
    return VonormTable(r, S.n, entries)


def voronoi_vectors(S, r):
    """Phi_{S,r}: every vector that is shortest in its coset modulo r."""
    frame = _frame(S)
    out = set()
    for cls in coset_classes(S.n, r):
        _, ws = frame.coset_minimizers(cls.representative, r)
        for w in ws:
            out.add(tuple(w))
            out.add(_neg(w))
    return PhiSet(frozenset(out), r)


def general_position_count(n, r):
    return r ** n + 2 ** n - 2 if r % 2 == 0 else r ** n - 1


def is_general_position(S, r):
    return len(voronoi_vectors(S, r)) == general_position_count(S.n, r)


def first_minimum(S):
    """lambda_1: the smallest nonzero value of the form on Z^n."""
    return min(vonorm_map(S, 2).values())


def characters(n):
    return list(product((0, 1), repeat=n))


def conorm_map(S):
    """co_S(chi) = -(1/2^(n-1)) * sum_v vo_S(v) chi(v), keyed by the character
    vector a with chi(v) = (-1)^(a.v)."""
    table = vonorm_map(S, 2)
    n = S.n
    norm = 2 ** (n - 1)
    out = {}
    for a in characters(n):
        total = 0
        for cls in table.classes():
            v = cls.representative
            sign = -1 if sum(x * y for x, y in zip(a, v)) % 2 else 1
            total += sign * table[cls][0]
        out[a] = -total / norm if isinstance(total, float) else -Fraction(total) / norm
    return out


def nontrivial_conorms(S):
    """The six conorms of a ternary form (characters other than 000 and 111)."""
    co = conorm_map(S)
    skip = {(0,) * S.n, (1,) * S.n}
    return [co[a] for a in characters(S.n) if a not in skip]
