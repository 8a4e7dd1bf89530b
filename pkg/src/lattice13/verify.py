"""Self-check suites run by ``lattice13 verify``.

Each suite samples seeded random inputs, checks one structural property and
returns a :class:`SuiteResult`.  Sample sizes default to the sizes used by the
acceptance tests and can be scaled down for a quick run.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import product

from .core import apply_unimodular, det_int
from .ctype import (enumerate_ctype_reps, minkowski_cover_phis, neighbor_phi,
                    proposition1_violations)
from .embedding import iota_m, iota_s
from .isometry import stably_less
from .sampling import (random_form, random_minkowski_form, random_reduced_2d,
                       random_selling_form, random_unimodular, rng_for)
from .vonorm import first_minimum, vonorm_map, voronoi_vectors

__all__ = ["SUITES", "SuiteResult", "run_suite", "run_suites"]


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def as_dict(self):
        return {"suite": self.name, "passed": self.passed, "checked": self.checked,
                "failures": [str(f) for f in self.failures[:10]],
                "seconds": round(self.seconds, 3)}


def _theorem1(res, samples, seed):
    rng = rng_for(seed)
    for _ in range(samples or 1000):
        S = random_minkowski_form(rng, span=rng.choice((6, 30, 200)), den=rng.choice((1, 2, 6)))
        got = list(iota_m(S).values)
        want = vonorm_map(S, 3).sorted_values()
        res.checked += 1
        if got != want:
            res.failures.append(f"{S!r}: {got} != {want}")


def _invariance(res, samples, seed):
    rng = rng_for(seed)
    for _ in range(samples or 1000):
        S = random_form(rng, span=rng.choice((6, 30)), den=rng.choice((1, 3)))
        g = random_unimodular(rng, 5)
        T = apply_unimodular(g, S)
        res.checked += 1
        for f in (iota_s, iota_m):
            if f(S) != f(T):
                res.failures.append(f"{f.__name__} differs on {S!r} under {g}")


def _outside_pairs_2d(v):
    # multiples of e1, e2 and +-(e1+e2) are excluded
    a, b = v
    return a != 0 and b != 0 and not (a == b and abs(a) == 1)


def _in_superbase_span(v):
    sb = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
    return any(det_int((sb[k], sb[l], v)) == 0 for k in range(4) for l in range(k + 1, 4))


def _lemma6(res, samples, seed):
    rng = rng_for(seed)
    n2 = samples or 500
    n3 = samples or 200
    ball2 = [v for v in product(range(-5, 6), repeat=2) if _outside_pairs_2d(v)]
    for _ in range(n2):
        S = random_reduced_2d(rng, span=rng.choice((6, 40)))
        lam = first_minimum(S)
        res.checked += 1
        for v in ball2:
            for e in ((1, 0), (0, 1)):
                if not stably_less(S, e, v, lam):
                    res.failures.append(f"2D: e={e} not << {v} for {S!r}")
    ball3 = [v for v in product(range(-4, 5), repeat=3)
             if any(v) and not _in_superbase_span(v)]
    sb = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1))
    sums = ((1, 1, 0), (1, 0, 1), (0, 1, 1))
    for _ in range(n3):
        S = random_selling_form(rng, span=rng.choice((6, 40)))
        lam = first_minimum(S)
        res.checked += 1
        for v in ball3:
            for e in sb:
                if not stably_less(S, e, v, lam):
                    res.failures.append(f"3D(i): {e} not << {v} for {S!r}")
            if sum(stably_less(S, w, v, lam) for w in sums) < 2:
                res.failures.append(f"3D(ii): fewer than two pair sums << {v} for {S!r}")


PROP1_CASES = ((2, 3), (2, 4), (3, 2), (3, 3))


def _prop1(res, samples, seed):
    for n, r in PROP1_CASES:
        for dom in enumerate_ctype_reps(n, r, seed=seed):
            for q in dom.facet_inequalities:
                other = neighbor_phi(dom.phi, q.u, q.v, r)
                res.checked += 1
                for msg in proposition1_violations(dom.phi, other, q.u, q.v, r):
                    res.failures.append(f"n={n} r={r}: {msg}")


def _cover(res, samples, seed):
    rng = rng_for(seed)
    phis = minkowski_cover_phis()
    for _ in range(samples or 2000):
        S = random_minkowski_form(rng, span=rng.choice((6, 30, 200)), den=rng.choice((1, 4)))
        found = voronoi_vectors(S, 3)
        res.checked += 1
        if not any(p <= found for p in phis):
            res.failures.append(f"{S!r}: Phi_S,3 contains none of the ten sets")


SUITES = {
    "theorem1": _theorem1,
    "invariance": _invariance,
    "lemma6": _lemma6,
    "prop1": _prop1,
    "cover": _cover,
}


def run_suite(name, samples=None, seed=0):
    if name not in SUITES:
        raise KeyError(name)
    res = SuiteResult(name)
    t0 = time.perf_counter()
    SUITES[name](res, samples, seed)
    res.seconds = time.perf_counter() - t0
    return res


def run_suites(names, samples=None, seed=0):
    if "all" in names:
        names = list(SUITES)
    return [run_suite(n, samples, seed) for n in names]
