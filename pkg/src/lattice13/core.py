"""Scalars, symmetric Gram matrices, cell parameters and the GL_n(Z) action.

Everything here is an immutable value.  Exact arithmetic uses
:class:`fractions.Fraction`; float mode uses Python floats together with the
comparison tolerance held in :data:`CONFIG`.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from numbers import Rational

from .errors import NonPositiveDefinite

__all__ = [
    "CONFIG",
    "CellParameters",
    "SymMat",
    "apply_unimodular",
    "cell_from_gram",
    "det_int",
    "gram_from_cell",
    "identity",
    "inverse_int",
    "is_positive_definite",
    "mat_mul",
    "numeric_mode",
    "scalar",
    "signed_permutations",
    "sym2",
    "sym3",
    "transpose",
    "vec_mat",
]


@dataclass
class NumericConfig:
    mode: str = "exact"
    tau_cmp: float = 1e-9
    tau_pd: float = 1e-12


CONFIG = NumericConfig()


@contextmanager
def numeric_mode(mode, tau_cmp=None, tau_pd=None):
    """Temporarily switch the global numeric mode ("exact" or "float")."""
    if mode not in ("exact", "float"):
        raise ValueError(f"unknown numeric mode {mode!r}")
    saved = (CONFIG.mode, CONFIG.tau_cmp, CONFIG.tau_pd)
    CONFIG.mode = mode
    if tau_cmp is not None:
        CONFIG.tau_cmp = float(tau_cmp)
    if tau_pd is not None:
        CONFIG.tau_pd = float(tau_pd)
    try:
        yield CONFIG
    finally:
        CONFIG.mode, CONFIG.tau_cmp, CONFIG.tau_pd = saved


def scalar(x):
    """Convert ``x`` to the scalar type of the current mode.

    In exact mode strings and floats go through their decimal text, so
    ``scalar(0.1) == Fraction(1, 10)``.
    """
    if CONFIG.mode == "float":
        if isinstance(x, str) and "/" in x:
            return float(Fraction(x.strip()))
        return float(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def is_exact(x):
    return not isinstance(x, float)


# Tolerant comparisons: exact whenever both sides are rational.

def lt(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a < b - CONFIG.tau_cmp
    return a < b


def le(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return a <= b + CONFIG.tau_cmp
    return a <= b


def eq(a, b):
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= CONFIG.tau_cmp
    return a == b


class SymMat:
    """Symmetric 2x2 or 3x3 matrix stored as a tuple of rows."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n not in (2, 3) or any(len(r) != n for r in rows):
            raise ValueError("SymMat must be 2x2 or 3x3")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("SymMat is immutable")

    def __reduce__(self):
        return (SymMat, (self.rows,))

    @classmethod
    def from_entries(cls, entries):
        """Build from (s11, s22, s12) or (s11, s22, s33, s12, s13, s23)."""
        e = [scalar(x) for x in entries]
        if len(e) == 3:
            s11, s22, s12 = e
            return cls(((s11, s12), (s12, s22)))
        if len(e) == 6:
            s11, s22, s33, s12, s13, s23 = e
            return cls(((s11, s12, s13), (s12, s22, s23), (s13, s23, s33)))
        raise ValueError("expected 3 or 6 entries")

    @classmethod
    def from_matrix(cls, m):
        return cls([[scalar(x) for x in row] for row in m])

    @property
    def n(self):
        return len(self.rows)

    @property
    def entries(self):
        r = self.rows
        if self.n == 2:
            return (r[0][0], r[1][1], r[0][1])
        return (r[0][0], r[1][1], r[2][2], r[0][1], r[0][2], r[1][2])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, SymMat) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join(str(x) for x in self.entries)
        return f"SymMat({body})"

    def quad(self, v):
        """v S v^T for an integer row vector ``v``."""
        r = self.rows
        n = len(r)
        total = 0
        for i in range(n):
            vi = v[i]
            if vi:
                acc = 0
                for j in range(n):
                    if v[j]:
                        acc += r[i][j] * v[j]
                total += vi * acc
        return total

    def inner(self, u, v):
        r = self.rows
        n = len(r)
        return sum(u[i] * r[i][j] * v[j] for i in range(n) for j in range(n))

    def det(self):
        r = self.rows
        if self.n == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        return (r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
                - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
                + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]))

    def leading_minors(self):
        r = self.rows
        m1 = r[0][0]
        m2 = r[0][0] * r[1][1] - r[0][1] * r[1][0]
        return (m1, m2) if self.n == 2 else (m1, m2, self.det())

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.n))

    def max_abs(self):
        return max(abs(x) for row in self.rows for x in row)

    def scaled(self, c):
        return SymMat([[c * x for x in row] for row in self.rows])

    def __add__(self, other):
        return SymMat([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return SymMat([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def to_float(self):
        return SymMat([[float(x) for x in row] for row in self.rows])

    def to_exact(self):
        return SymMat([[x if is_exact(x) else Fraction(repr(x)) for x in row]
                       for row in self.rows])

    @property
    def is_exact(self):
        return all(is_exact(x) for row in self.rows for x in row)


def sym2(s11, s22, s12):
    return SymMat.from_entries((s11, s22, s12))


def sym3(s11, s22, s33, s12, s13, s23):
    return SymMat.from_entries((s11, s22, s33, s12, s13, s23))


def is_positive_definite(S):
    """All leading principal minors positive (above ``tau_pd`` for floats)."""
    for m in S.leading_minors():
        if isinstance(m, float):
            if not m > CONFIG.tau_pd:
                return False
        elif not m > 0:
            return False
    return True


def require_pd(S):
    if not is_positive_definite(S):
        raise NonPositiveDefinite(f"{S!r} is not positive definite")


# ---------------------------------------------------------------------------
# integer matrices

def identity(n=3):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a))


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def vec_mat(v, g):
    """Row vector times matrix."""
    n = len(g[0])
    return tuple(sum(v[i] * g[i][j] for i in range(len(v))) for j in range(n))


def det_int(g):
    if len(g) == 2:
        return g[0][0] * g[1][1] - g[0][1] * g[1][0]
    return (g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]))


def adjugate(g):
    if len(g) == 2:
        return ((g[1][1], -g[0][1]), (-g[1][0], g[0][0]))
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for k, r in enumerate(g) if k != i]
            minor = [[x for l, x in enumerate(r) if l != j] for r in rows]
            c[j][i] = (-1) ** (i + j) * (minor[0][0] * minor[1][1]
                                         - minor[0][1] * minor[1][0])
    return tuple(tuple(r) for r in c)


def inverse_int(g):
    """Inverse of an integer matrix with determinant +-1."""
    d = det_int(g)
    if d not in (1, -1):
        raise ValueError(f"matrix has determinant {d}, not unimodular")
    return tuple(tuple(d * x for x in row) for row in adjugate(g))


def apply_unimodular(g, S):
    """Return g S g^T; g is an integer matrix given by its rows."""
    n = S.n
    if len(g) != n:
        raise ValueError("dimension mismatch")
    rows = S.rows
    gs = [[sum(g[i][k] * rows[k][j] for k in range(n) if g[i][k])
           for j in range(n)] for i in range(n)]
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = sum(gs[i][k] * g[j][k] for k in range(n) if g[j][k])
            out[i][j] = out[j][i] = v
    return SymMat(out)


def signed_permutations(n=3):
    """All n! * 2^n signed permutation matrices, identity first."""
    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            out.append(tuple(tuple(signs[i] if j == perm[i] else 0
                                   for j in range(n)) for i in range(n)))
    return out


# ---------------------------------------------------------------------------
# cell parameters

@dataclass(frozen=True)
class CellParameters:
    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            if not float(getattr(self, name)) > 0:
                raise ValueError(f"cell length {name} must be positive")
        for name in ("alpha", "beta", "gamma"):
            ang = float(getattr(self, name))
            if not 0 < ang < 180:
                raise ValueError(f"cell angle {name} must lie in (0, 180)")


# cos of these angles (degrees) is rational; nothing else in (0, 180) is.
_RATIONAL_COS = {60: Fraction(1, 2), 90: Fraction(0), 120: Fraction(-1, 2)}


def _cos_deg(angle):
    if CONFIG.mode == "exact":
        a = scalar(angle)
        if a.denominator == 1 and int(a) in _RATIONAL_COS:
            return _RATIONAL_COS[int(a)]
        return Fraction(repr(math.cos(math.radians(float(a)))))
    return math.cos(math.radians(float(angle)))


def gram_from_cell(cell):
    a, b, c = scalar(cell.a), scalar(cell.b), scalar(cell.c)
    ca, cb, cg = _cos_deg(cell.alpha), _cos_deg(cell.beta), _cos_deg(cell.gamma)
    S = sym3(a * a, b * b, c * c, a * b * cg, a * c * cb, b * c * ca)
    require_pd(S)
    return S


def cell_from_gram(S):
    require_pd(S)
    s11, s22, s33, s12, s13, s23 = (float(x) for x in S.entries)
    a, b, c = math.sqrt(s11), math.sqrt(s22), math.sqrt(s33)

    def angle(num, den):
        return math.degrees(math.acos(max(-1.0, min(1.0, num / den))))

    return CellParameters(a, b, c, angle(s23, b * c), angle(s13, a * c),
                          angle(s12, a * b))
