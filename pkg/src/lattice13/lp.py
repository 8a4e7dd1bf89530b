"""Dense exact simplex over the rationals (Bland's rule).

Only the case needed by the facet computations is supported: maximize c.x
subject to A x <= b, x >= 0 with b >= 0, so the origin is a feasible start.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    status: str  # "optimal" or "unbounded"
    value: Fraction | None
    x: list | None


def maximize(c, A, b, max_pivots=100_000):
    m, n = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative")
    width = n + m + 1
    rows = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]] + [Fraction(0)] * m + [Fraction(b[i])]
        row[n + i] = Fraction(1)
        rows.append(row)
    obj = [Fraction(-x) for x in c] + [Fraction(0)] * (m + 1)
    basis = [n + i for i in range(m)]

    for _ in range(max_pivots):
        enter = next((j for j in range(width - 1) if obj[j] < 0), None)
        if enter is None:
            x = [Fraction(0)] * n
            for i, var in enumerate(basis):
                if var < n:
                    x[var] = rows[i][-1]
            return LPResult("optimal", obj[-1], x)
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return LPResult("unbounded", None, None)
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            prow = [x / piv for x in prow]
            rows[leave] = prow
        nz = [j for j in range(width) if prow[j]]
        for i in range(m):
            if i != leave:
                f = rows[i][enter]
                if f:
                    r = rows[i]
                    for j in nz:
                        r[j] -= f * prow[j]
        f = obj[enter]
        for j in nz:
            obj[j] -= f * prow[j]
        basis[leave] = enter
    raise RuntimeError("simplex pivot limit reached")
