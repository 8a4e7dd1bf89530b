"""Primitive C-type domains modulo r: inequalities, facets, neighbours and the
breadth-first enumeration of GL_n(Z)-classes.

A domain is described by its set ``phi`` of Voronoi vectors modulo r.  The
domain is the polyhedral cone of forms S with ``v S v^T >= u S u^T`` for the
facet pairs (u, v); these are linear functionals on the coordinates
(s11, s22, s33, s12, s13, s23) (or (s11, s22, s12) in rank 2).
"""
from __future__ import annotations

import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations, permutations, product

from .core import (SymMat, adjugate, det_int, inverse_int, is_positive_definite,
                   mat_mul, signed_permutations)
from .errors import DegenerateCone, RetryExhausted
from .lp import maximize
from .vonorm import PhiSet, general_position_count, voronoi_vectors

log = logging.getLogger(__name__)

__all__ = [
    "CTypeDomain",
    "ConeInequality",
    "FacetAnalysis",
    "canonical_key",
    "ctype_inequalities",
    "enumerate_ctype_reps",
    "facet_analysis",
    "facets",
    "initial_phi",
    "minkowski_cover_phis",
    "neighbor_phi",
    "phi_equivalent",
    "proposition1_violations",
    "theorem3_phis",
]


def _neg(v):
    return tuple(-x for x in v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _scale(k, v):
    return tuple(k * x for x in v)


def _gcd(v):
    return reduce(math.gcd, (abs(x) for x in v), 0)


def is_primitive(v):
    return _gcd(v) == 1


def _independent(u, w):
    n = len(u)
    return any(u[i] * w[j] - u[j] * w[i] for i in range(n) for j in range(i + 1, n))


def _upper(n):
    return [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(i + 1, n)]


@dataclass(frozen=True)
class ConeInequality:
    """trace(S C) >= 0 with C = v^T v - u^T u, i.e. v S v^T >= u S u^T."""

    coeff: tuple
    u: tuple
    v: tuple

    @classmethod
    def from_pair(cls, u, v):
        n = len(u)
        C = tuple(tuple(v[i] * v[j] - u[i] * u[j] for j in range(n)) for i in range(n))
        return cls(C, tuple(u), tuple(v))

    @property
    def n(self):
        return len(self.coeff)

    @property
    def entries(self):
        """Upper-triangular entries of C, ordered like SymMat.entries."""
        return tuple(self.coeff[i][j] for i, j in _upper(self.n))

    @property
    def functional(self):
        """Coefficients a with trace(S C) = a . S.entries."""
        return tuple(self.coeff[i][j] * (1 if i == j else 2) for i, j in _upper(self.n))

    def evaluate(self, S):
        return sum(a * s for a, s in zip(self.functional, S.entries))

    def direction(self):
        a = self.functional
        g = _gcd(a)
        return tuple(x // g for x in a)


@dataclass
class CTypeDomain:
    phi: PhiSet
    modulus: int
    facet_inequalities: list
    interior: SymMat | None = None
    neighbors: list = field(default_factory=list)


@dataclass
class FacetAnalysis:
    facets: list
    interior: SymMat
    witnesses: list


# ---------------------------------------------------------------------------
# initial domains

def _box_phi(n, r):
    h = r // 2
    vecs = [v for v in product(range(-h, h + 1), repeat=n) if any(v)]
    return PhiSet.from_vectors(vecs, r)


def phi0(n):
    """The mod-2 representative: +-(sums of distinct basis vectors)."""
    vecs = [v for v in product((0, 1), repeat=n) if any(v)]
    return PhiSet.from_vectors(vecs, 2)


def _perturbed_identity(n, T, eps):
    return SymMat([[int(i == j) + eps * T[i][j] for j in range(n)] for i in range(n)])


def _trace_criterion(n, r, T):
    """trace(S0 T) != 0 for every colliding pair of Phi_{I_n, r}."""
    box = sorted(_box_phi(n, r).vectors)
    for u, v in combinations(box, 2):
        if u == _neg(v) or any((a - b) % r for a, b in zip(u, v)):
            continue
        qu = sum(u[i] * T[i][j] * u[j] for i in range(n) for j in range(n))
        qv = sum(v[i] * T[i][j] * v[j] for i in range(n) for j in range(n))
        if qu == qv:
            return False
    return True


def initial_phi(n, r, seed=0, retries=200):
    """Phi of a form in general position near the identity.

    For odd r this is the box |x_i| <= r/2.  For even r the identity is moved
    along a direction T; the canonical T = -(J - I) is tried first, then
    seeded random directions passing the trace criterion.
    """
    if r < 2:
        raise ValueError("modulus must be >= 2")
    if r % 2:
        return _box_phi(n, r)
    target = general_position_count(n, r)
    box = _box_phi(n, r)
    rng = random.Random(seed)
    candidates = [(tuple(tuple(0 if i == j else -1 for j in range(n)) for i in range(n)), False)]
    for _ in range(retries):
        T = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                T[i][j] = T[j][i] = rng.randint(-20, 20)
        candidates.append((tuple(tuple(r_) for r_ in T), True))
    for T, random_dir in candidates:
        if random_dir and not _trace_criterion(n, r, T):
            continue
        eps = Fraction(1, 16 * r * r)
        for _ in range(6):
            S = _perturbed_identity(n, T, eps)
            if is_positive_definite(S):
                phi = voronoi_vectors(S, r)
                if len(phi) == target and phi <= box:
                    return PhiSet(phi.vectors, r)
            eps /= 8
    raise RetryExhausted(f"no general-position perturbation found for n={n}, r={r}")


# ---------------------------------------------------------------------------
# inequalities and facets

def ctype_inequalities(phi, r):
    """Candidate inequalities v S v^T >= u S u^T with v = u + r w."""
    vecs = phi.sorted()
    out = {}
    for u in vecs:
        for w in vecs:
            if not _independent(u, w):
                continue
            v = _add(u, _scale(r, w))
            if r % 2 == 0:
                if not is_primitive(_add(u, _scale(r // 2, w))):
                    continue
            elif not is_primitive(_add(u, v)):
                continue
            chain = [_scale(k, w) for k in range(1, r // 2 + 1)]
            chain += [_add(u, _scale(k, w)) for k in range(1, r)]
            if not all(x in phi for x in chain):
                continue
            ineq = ConeInequality.from_pair(u, v)
            key = ineq.coeff
            if key not in out:
                out[key] = ineq
    return sorted(out.values(), key=lambda q: (q.u, q.v))


def _split(a):
    return list(a) + [-x for x in a]


def _lp_rows(normals, equal=None):
    """Rows for: t - a_j.x <= 0, sum_j a_j.x <= 1, t <= 1 (and a_k.x = 0)."""
    d = len(normals[0])
    A, b = [], []
    total = [sum(a[i] for a in normals) for i in range(d)]
    if equal is not None:
        A.append(_split(equal) + [0])
        b.append(0)
        A.append(_split([-x for x in equal]) + [0])
        b.append(0)
    for a in normals:
        if a is equal:
            continue
        A.append(_split([-x for x in a]) + [1])
        b.append(0)
    A.append(_split(total) + [0])
    b.append(1)
    A.append([0] * (2 * d) + [1])
    b.append(1)
    c = [0] * (2 * d) + [1]
    return c, A, b


def _solve_point(normals, equal=None):
    c, A, b = _lp_rows(normals, equal)
    res = maximize(c, A, b)
    d = len(normals[0])
    x = [res.x[i] - res.x[d + i] for i in range(d)]
    return res.value, x


def _point_to_sym(x, n):
    S = [[0] * n for _ in range(n)]
    for (i, j), val in zip(_upper(n), x):
        S[i][j] = S[j][i] = val
    return SymMat(S)


def facet_analysis(ineqs):
    """Irredundant inequalities together with an interior point and, for each
    facet, a point of the cone where only that facet is tight."""
    if not ineqs:
        raise DegenerateCone("no inequalities")
    n = ineqs[0].n
    merged = {}
    for q in ineqs:
        merged.setdefault(q.direction(), q)
    dirs = list(merged)
    t, x = _solve_point(dirs)
    if t <= 0:
        raise DegenerateCone("cone is not full-dimensional")
    interior = _point_to_sym(x, n)
    if not is_positive_definite(interior):
        raise DegenerateCone("interior point is not positive definite")
    kept, witnesses = [], []
    for d in dirs:
        t, x = _solve_point(dirs, equal=d)
        if t > 0:
            W = _point_to_sym(x, n)
            if not is_positive_definite(W):
                raise DegenerateCone(f"facet witness {W!r} is not positive definite")
            kept.append(merged[d])
            witnesses.append(W)
    return FacetAnalysis(kept, interior, witnesses)


def facets(ineqs):
    return facet_analysis(ineqs).facets


# ---------------------------------------------------------------------------
# neighbours

def neighbor_phi(phi, u, v, r, general=None):
    """Cross the facet (u, v).

    For r <= 3 in rank <= 3 this swaps +-u for +-v.  Otherwise (or with
    ``general=True``) every vector of the form k(u+v)/2 + (u-v)/2 or its
    companion along (u-v)/r is replaced by its mirror image, since several
    coset ties can open on the same facet once r >= 4.
    """
    u, v = tuple(u), tuple(v)
    if general is None:
        general = r > 3 or len(u) > 3
    if not general:
        vecs = (phi.vectors - {u, _neg(u)}) | {v, _neg(v)}
        return PhiSet(vecs, r)
    half_sum = tuple(Fraction(a + b, 2) for a, b in zip(u, v))
    half_diff = tuple(Fraction(a - b, 2) for a, b in zip(u, v))
    if r % 2 == 0:
        second_a = tuple(Fraction(a - b, r) for a, b in zip(u, v))
        second_b = tuple(Fraction(r, 2) * x for x in half_sum)
    else:
        second_a = tuple(Fraction(a - b, 2 * r) for a, b in zip(u, v))
        second_b = tuple(Fraction(r, 2) * (a + b) for a, b in zip(u, v))
    rules = {}
    bound = 2 * max(abs(x) for vec in phi.vectors for x in vec) + 2
    for k in range(1, 2 * r * bound):
        for base, delta in ((half_sum, half_diff), (second_a, second_b)):
            src = tuple(k * x + y for x, y in zip(base, delta))
            dst = tuple(k * x - y for x, y in zip(base, delta))
            if all(s.denominator == 1 for s in src) and all(s.denominator == 1 for s in dst):
                rules.setdefault(tuple(int(s) for s in src), tuple(int(s) for s in dst))
    out = set()
    for x in phi.vectors:
        if x in rules:
            out.add(rules[x])
        elif _neg(x) in rules:
            out.add(_neg(rules[_neg(x)]))
        else:
            out.add(x)
    return PhiSet.from_vectors(out, r)


# ---------------------------------------------------------------------------
# equivalence

def _profile(phi):
    vecs = phi.vectors
    prof = {}
    for x in vecs:
        prof[x] = (sum(1 for y in vecs if _add(x, y) in vecs),
                   sum(1 for y in vecs if _add(x, _scale(2, y)) in vecs),
                   sum(1 for y in vecs if _add(_scale(2, x), y) in vecs))
    return prof


def canonical_key(phi):
    """Lexicographically least sorted image of ``phi`` under signed permutations."""
    n = phi.dim
    best = None
    for p in signed_permutations(n):
        img = tuple(sorted(tuple(sum(x[i] * p[i][j] for i in range(n)) for j in range(n))
                           for x in phi.vectors))
        if best is None or img < best:
            best = img
    return best


def _solve_int(B, C):
    """h with B h = C when det(B) = +-1."""
    return mat_mul(inverse_int(B), C)


def phi_equivalent(phi1, phi2):
    """Unimodular h with {x h : x in phi1} = phi2, or None."""
    if len(phi1) != len(phi2) or phi1.dim != phi2.dim:
        return None
    n = phi1.dim
    p1, p2 = _profile(phi1), _profile(phi2)
    if Counter(p1.values()) != Counter(p2.values()):
        return None
    classes2 = {}
    for y, key in p2.items():
        classes2.setdefault(key, []).append(y)
    for ys in classes2.values():
        ys.sort()
    order = sorted(phi1.vectors, key=lambda x: (len(classes2[p1[x]]), x))
    basis = None
    for trip in combinations(order, n):
        if det_int(trip) in (1, -1):
            basis = trip
            break
    if basis is None:
        return _phi_equivalent_rational(phi1, phi2)
    vecs1, vecs2 = phi1.vectors, phi2.vectors
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    cands = [classes2[p1[b]] for b in basis]
    for image in product(*cands):
        ok = True
        for i, j in pairs:
            if ((_add(basis[i], basis[j]) in vecs1) != (_add(image[i], image[j]) in vecs2)
                    or (_add(basis[i], _neg(basis[j])) in vecs1)
                    != (_add(image[i], _neg(image[j])) in vecs2)):
                ok = False
                break
        if not ok or det_int(image) not in (1, -1):
            continue
        h = _solve_int(basis, image)
        if all(tuple(sum(x[i] * h[i][j] for i in range(n)) for j in range(n)) in vecs2
               for x in vecs1):
            return h
    return None


def _phi_equivalent_rational(phi1, phi2):
    n = phi1.dim
    vecs1 = sorted(phi1.vectors)
    basis = next(t for t in combinations(vecs1, n) if det_int(t) != 0)
    d = det_int(basis)
    adj = adjugate(basis)
    for image in permutations(sorted(phi2.vectors), n):
        num = mat_mul(adj, image)
        if any(x % d for row in num for x in row):
            continue
        h = tuple(tuple(x // d for x in row) for row in num)
        if det_int(h) not in (1, -1):
            continue
        if all(tuple(sum(x[i] * h[i][j] for i in range(n)) for j in range(n)) in phi2.vectors
               for x in vecs1):
            return h
    return None


# ---------------------------------------------------------------------------
# enumeration

def enumerate_ctype_reps(n, r, seed=0):
    """Breadth-first closure over facet neighbours modulo GL_n(Z).

    Classes are returned in discovery order; class 0 is the initial domain.
    Each domain's ``neighbors[k]`` is the class index across facet k.
    """
    if n not in (2, 3):
        raise ValueError("only ranks 2 and 3 are supported")
    start = initial_phi(n, r, seed=seed)
    phis = [start]
    keys = [canonical_key(start)]
    domains = []
    idx = 0
    while idx < len(phis):
        phi = phis[idx]
        analysis = facet_analysis(ctype_inequalities(phi, r))
        dom = CTypeDomain(phi, r, analysis.facets, analysis.interior)
        for q in analysis.facets:
            nb = neighbor_phi(phi, q.u, q.v, r)
            key = canonical_key(nb)
            hit = None
            for j, (other, okey) in enumerate(zip(phis, keys)):
                if okey == key or phi_equivalent(nb, other) is not None:
                    hit = j
                    break
            if hit is None:
                phis.append(nb)
                keys.append(key)
                hit = len(phis) - 1
                log.info("n=%d r=%d: new class %d (%d vectors)", n, r, hit, len(nb))
            dom.neighbors.append(hit)
        domains.append(dom)
        idx += 1
    return domains


# ---------------------------------------------------------------------------
# facet properties

def _in_span(x, u, v):
    if len(x) == 2:
        return True
    m = (u, v, x)
    return det_int(m) == 0


def proposition1_violations(phi_a, phi_b, u, v, r):
    """Check the parallelogram-law properties of a common facet (u, v).

    Returns a list of human-readable failures (empty when all hold).
    """
    u, v = tuple(u), tuple(v)
    out = []
    union = phi_a.vectors | phi_b.vectors
    diff = tuple(a - b for a, b in zip(u, v))
    if any(x % r for x in diff):
        out.append(f"(u-v)/r not integral for u={u}, v={v}")
        return out
    step = tuple(x // r for x in diff)
    if not is_primitive(step):
        out.append(f"(u-v)/r = {step} is not primitive")
    for c1 in range(1, r // 2 + 1):
        w = _scale(c1, step)
        if w not in union or _neg(w) not in union:
            out.append(f"{c1}(u-v)/r = {w} missing from the union")
    for c2 in range(1, r):
        num = tuple(c2 * a + (r - c2) * b for a, b in zip(u, v))
        w = tuple(x // r for x in num)
        if any(x % r for x in num) or w not in union or _neg(w) not in union:
            out.append(f"({c2}u + {r - c2}v)/r missing from the union")
    if r == 3:
        if phi_a.vectors - phi_b.vectors != {u, _neg(u)}:
            out.append("Phi_a minus Phi_b is not {+-u}")
        if phi_b.vectors - phi_a.vectors != {v, _neg(v)}:
            out.append("Phi_b minus Phi_a is not {+-v}")
        inter = {x for x in phi_a.vectors & phi_b.vectors if _in_span(x, u, v)}
        want = set()
        for num in (diff, tuple(2 * a + b for a, b in zip(u, v)),
                    tuple(a + 2 * b for a, b in zip(u, v))):
            w = tuple(x // 3 for x in num)
            want |= {w, _neg(w)}
        if inter != want:
            out.append(f"intersection within span(u, v) is {sorted(inter)}, expected {sorted(want)}")
    return out


# ---------------------------------------------------------------------------
# representatives from the literature

def _swap(phi, add, remove):
    vecs = set(phi.vectors)
    for x in remove:
        vecs -= {tuple(x), _neg(x)}
    for x in add:
        vecs |= {tuple(x), _neg(x)}
    return PhiSet(frozenset(vecs), phi.modulus)


def theorem3_phis():
    """Representatives Phi_1..Phi_4 (n=3, r=3) plus the rank-2 sets for r=3, 4."""
    p1 = _box_phi(3, 3)
    p2 = _swap(p1, [(1, 2, 1)], [(1, -1, 1)])
    p3 = _swap(p2, [(1, 1, 2)], [(1, 1, -1)])
    p4 = _swap(p3, [(2, 1, 1)], [(-1, 1, 1)])
    q3 = _box_phi(2, 3)
    q4 = PhiSet(q3.vectors | PhiSet.from_vectors(
        [(2, 0), (0, 2), (2, 1), (1, 2), (2, 2)]).vectors, 4)
    return {"phi1": p1, "phi2": p2, "phi3": p3, "phi4": p4,
            "phi_2_3": q3, "phi_2_4": q4}


def minkowski_cover_phis():
    """Phi_1..Phi_10, whose closed domains cover the Minkowski-reduced forms."""
    t = theorem3_phis()
    p1 = t["phi1"]
    extra = [
        ([(2, 1, 1)], [(-1, 1, 1)]),
        ([(1, 1, 2)], [(1, 1, -1)]),
        ([(-2, -1, 1)], [(1, -1, 1)]),
        ([(1, -1, -2)], [(1, -1, 1)]),
        ([(2, 1, 1), (1, 2, 1)], [(-1, 1, 1), (1, -1, 1)]),
        ([(2, 1, 1), (1, 1, 2)], [(-1, 1, 1), (1, 1, -1)]),
    ]
    phis = [p1, t["phi2"], t["phi3"], t["phi4"]]
    phis += [_swap(p1, add, rem) for add, rem in extra]
    return phis

