"""The two piecewise-linear fingerprints of rank-3 lattices in R^13, plus the
distance routines built on top of them."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import det_int, require_pd
from .errors import KindMismatch
from .reduction import minkowski_reduce, reduce_2d, selling_reduce, superbase
from .vonorm import coset_classes, vonorm_map

__all__ = [
    "Embedding13",
    "EmbeddingKind",
    "MINKOWSKI_VECTORS",
    "MINKOWSKI_MIN_GROUPS",
    "MetricKind",
    "SELLING_VECTORS",
    "embed",
    "embed_distance",
    "gl_mod2",
    "iota_m",
    "iota_s",
    "lattice_distance",
    "rank2_distance",
    "vonorm_distance_generic",
]


class EmbeddingKind(str, enum.Enum):
    SELLING = "s"
    MINKOWSKI = "m"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        v = str(value).lower()
        for k in cls:
            if v in (k.value, k.name.lower()):
                return k
        raise ValueError(f"unknown embedding kind {value!r}")


class MetricKind(str, enum.Enum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


SELLING_VECTORS = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1),
                   (0, 1, 1), (1, 1, 1))

MINKOWSKI_VECTORS = SELLING_VECTORS + ((1, -1, 0), (1, 0, -1), (0, 1, -1))

MINKOWSKI_MIN_GROUPS = (
    ((-1, 1, 1), (2, 1, 1)),
    ((1, 1, -1), (1, 1, 2)),
    ((1, -1, 1), (1, 2, 1), (-2, -1, 1), (1, -1, -2)),
)


@dataclass(frozen=True)
class Embedding13:
    """Sorted 13-vector.  SELLING keeps 7 sorted vonorms then 6 sorted conorms."""

    kind: EmbeddingKind
    values: tuple

    def __post_init__(self):
        if len(self.values) != 13:
            raise ValueError("an embedding has exactly 13 coordinates")

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return 13

    def __getitem__(self, i):
        return self.values[i]

    @property
    def vonorms(self):
        return self.values[:7] if self.kind is EmbeddingKind.SELLING else self.values

    @property
    def conorms(self):
        if self.kind is not EmbeddingKind.SELLING:
            raise AttributeError("only the Selling embedding carries conorms")
        return self.values[7:]

    def scaled(self, c):
        return Embedding13(self.kind, tuple(c * x for x in self.values))


def _stable_sorted(values):
    return [v for _, v in sorted(enumerate(values), key=lambda p: (p[1], p[0]))]


def _normalize_scale(S):
    d = float(S.det())
    return S.to_float().scaled(1.0 / d ** (1.0 / 3.0))


def iota_s(S, normalize_scale=False):
    """Sorted vonorms and sorted conorms of the Selling-reduced form."""
    require_pd(S)
    if normalize_scale:
        S = _normalize_scale(S)
    red = selling_reduce(S).reduced
    f1 = _stable_sorted([red.quad(v) for v in SELLING_VECTORS])
    f2 = _stable_sorted([-x for x in superbase(red).off_diagonal()])
    return Embedding13(EmbeddingKind.SELLING, tuple(f1 + f2))


def minkowski_values(R):
    """The 13 unsorted values read off a Minkowski-reduced form."""
    vals = [R.quad(v) for v in MINKOWSKI_VECTORS]
    vals.extend(min(R.quad(v) for v in group) for group in MINKOWSKI_MIN_GROUPS)
    return vals


def iota_m(S, normalize_scale=False):
    """Sorted vonorms modulo 3, evaluated on the Minkowski-reduced form."""
    require_pd(S)
    if normalize_scale:
        S = _normalize_scale(S)
    red = minkowski_reduce(S).reduced
    return Embedding13(EmbeddingKind.MINKOWSKI,
                       tuple(_stable_sorted(minkowski_values(red))))


def embed(S, kind=EmbeddingKind.MINKOWSKI, normalize_scale=False):
    kind = EmbeddingKind.parse(kind)
    f = iota_s if kind is EmbeddingKind.SELLING else iota_m
    return f(S, normalize_scale=normalize_scale)


def _norm(diffs, metric):
    metric = MetricKind.parse(metric)
    if not diffs:
        return 0
    if metric is MetricKind.LINF:
        return max(abs(d) for d in diffs)
    if metric is MetricKind.L1:
        return sum(abs(d) for d in diffs)
    sq = sum(d * d for d in diffs)
    if isinstance(sq, float):
        return math.sqrt(sq)
    sq = Fraction(sq)
    num, den = math.isqrt(sq.numerator), math.isqrt(sq.denominator)
    if num * num == sq.numerator and den * den == sq.denominator:
        return Fraction(num, den)
    return math.sqrt(sq)


def embed_distance(e1, e2, metric=MetricKind.LINF):
    if e1.kind is not e2.kind:
        raise KindMismatch(f"cannot compare {e1.kind.name} with {e2.kind.name}")
    return _norm([a - b for a, b in zip(e1.values, e2.values)], metric)


def lattice_distance(S1, S2, metric=MetricKind.LINF, kind=EmbeddingKind.MINKOWSKI):
    return embed_distance(embed(S1, kind), embed(S2, kind), metric)


def _gl_mod2(n):
    mats = []
    for entries in product((0, 1), repeat=n * n):
        g = tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(n))
        if det_int(g) % 2:
            mats.append(g)
    return mats


_GL2_CACHE = {}


def gl_mod2(n):
    """All invertible n x n matrices over Z/2Z."""
    if n not in _GL2_CACHE:
        _GL2_CACHE[n] = _gl_mod2(n)
    return _GL2_CACHE[n]


def vonorm_distance_generic(S1, S2, metric=MetricKind.LINF, n=None):
    """min over g in GL_n(Z/2Z) of d(vo_{S1}, g . vo_{S2})."""
    n = n or S1.n
    if S1.n != n or S2.n != n:
        raise ValueError("forms must both have dimension n")
    vo1, vo2 = vonorm_map(S1, 2), vonorm_map(S2, 2)
    classes = coset_classes(n, 2)
    best = None
    for g in gl_mod2(n):
        diffs = []
        for cls in classes:
            u = cls.representative
            ug = tuple(sum(u[i] * g[i][j] for i in range(n)) % 2 for j in range(n))
            diffs.append(vo1[cls][0] - vo2[ug][0])
        d = _norm(diffs, metric)
        if best is None or d < best:
            best = d
    return best


def rank2_vector(S):
    red = reduce_2d(S).reduced
    s11, s22, s12 = red.entries
    return (s11, s22, s11 + s22 + 2 * s12)


def rank2_distance(S1, S2, metric=MetricKind.LINF):
    l1, l2 = rank2_vector(S1), rank2_vector(S2)
    return _norm([a - b for a, b in zip(l1, l2)], metric)
