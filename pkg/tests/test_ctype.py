from itertools import product

import pytest
from hypothesis import given, settings

import oracles
from strategies import unimodular
from lattice13 import (DegenerateCone, PhiSet, enumerate_ctype_reps, facets,
                       initial_phi, neighbor_phi, phi_equivalent, voronoi_vectors)
from lattice13.ctype import (ConeInequality, canonical_key, ctype_inequalities,
                             facet_analysis, minkowski_cover_phis, theorem3_phis)


def cube(n):
    return {v for v in product((-1, 0, 1), repeat=n) if any(v)}


def pm(*vs):
    return {tuple(v) for v in vs} | {tuple(-x for x in v) for v in vs}


def image(phi, h):
    n = len(h)
    return {tuple(sum(x[i] * h[i][j] for i in range(n)) for j in range(n)) for x in phi.vectors}


@pytest.fixture(scope="module")
def phis():
    return theorem3_phis()


def test_initial_phi_examples():
    assert set(initial_phi(3, 3).vectors) == cube(3)
    assert set(initial_phi(2, 3).vectors) == cube(2)
    phi0 = {v for v in product((0, 1), repeat=3) if any(v)}
    assert set(initial_phi(3, 2).vectors) == pm(*phi0)
    assert len(initial_phi(2, 4)) == 4 ** 2 + 2 ** 2 - 2


def test_initial_phi_is_a_generic_voronoi_set():
    # for even r the set is Phi_{S,r} of a form in general position
    for n, r in ((3, 2), (2, 4), (2, 2)):
        phi = initial_phi(n, r)
        analysis = facet_analysis(ctype_inequalities(phi, r))
        assert set(voronoi_vectors(analysis.interior, r)) == set(phi.vectors)


def test_inequalities_of_the_cube():
    ineqs = ctype_inequalities(initial_phi(3, 3), 3)
    pairs = {(q.u, q.v) for q in ineqs}
    assert ((1, -1, 1), (1, 2, 1)) in pairs or ((-1, 1, -1), (-1, -2, -1)) in pairs
    for q in ineqs:
        u, v = q.u, q.v
        assert all((a - b) % 3 == 0 for a, b in zip(u, v))
        assert q.coeff == tuple(tuple(v[i] * v[j] - u[i] * u[j] for j in range(3))
                                for i in range(3))


def test_inequalities_pair_members_with_outsiders():
    for n, r in ((2, 2), (2, 3), (3, 2)):
        phi = initial_phi(n, r)
        ineqs = ctype_inequalities(phi, r)
        assert ineqs
        for q in ineqs:
            assert q.u in phi.vectors and q.v not in phi.vectors
            assert all((a - b) % r == 0 for a, b in zip(q.u, q.v))


def test_interior_point_satisfies_every_inequality():
    for n, r in ((3, 2), (3, 3), (2, 3), (2, 4)):
        ineqs = ctype_inequalities(initial_phi(n, r), r)
        analysis = facet_analysis(ineqs)
        assert all(q.evaluate(analysis.interior) > 0 for q in ineqs)
        for q, W in zip(analysis.facets, analysis.witnesses):
            assert q.evaluate(W) == 0
            assert all(p.evaluate(W) > 0 for p in analysis.facets
                       if p.direction() != q.direction())


def test_facets_are_irredundant_and_merge_multiples():
    F = facets(ctype_inequalities(initial_phi(2, 3), 3))
    assert {f.direction() for f in facets(F)} == {f.direction() for f in F}
    q = F[0]
    doubled = ConeInequality(tuple(tuple(2 * x for x in row) for row in q.coeff), q.u, q.v)
    assert len(facets(F + [doubled])) == len(F)


def test_degenerate_cone():
    q = ConeInequality.from_pair((1, 0), (0, 1))
    flipped = ConeInequality.from_pair((0, 1), (1, 0))
    with pytest.raises(DegenerateCone):
        facets([q, flipped])
    with pytest.raises(DegenerateCone):
        facets([])


def test_neighbor_examples(phis):
    p1 = phis["phi1"]
    p2 = neighbor_phi(p1, (1, -1, 1), (1, 2, 1), 3)
    assert p2.vectors == phis["phi2"].vectors
    assert set(p2.vectors) == (cube(3) - pm((1, -1, 1))) | pm((1, 2, 1))
    p3 = neighbor_phi(p2, (1, 1, -1), (1, 1, 2), 3)
    assert p3.vectors == phis["phi3"].vectors
    assert all(tuple(-x for x in v) in p3.vectors for v in p3.vectors)


def test_phi_equivalent(phis):
    p1, p2 = phis["phi1"], phis["phi2"]
    assert phi_equivalent(p1, p2) is None
    g = ((1, 1, 0), (0, 1, 0), (2, 1, 1))
    moved = PhiSet.from_vectors(sorted(image(p2, g)), 3)
    h = phi_equivalent(p2, moved)
    assert h is not None and image(p2, h) == set(moved.vectors)
    assert oracles.det3(h) in (1, -1)
    assert phi_equivalent(p1, phis["phi_2_3"]) is None


@settings(max_examples=25, deadline=None)
@given(unimodular(steps=3, bound=2))
def test_phi_equivalence_finds_random_transforms(g):
    p4 = theorem3_phis()["phi4"]
    moved = PhiSet.from_vectors(sorted(image(p4, g)), 3)
    h = phi_equivalent(p4, moved)
    assert h is not None and image(p4, h) == set(moved.vectors)
    assert canonical_key(p4) == canonical_key(p4)


def test_enumeration_neighbors_are_consistent():
    doms = enumerate_ctype_reps(3, 3)
    assert len(doms) == 4
    for dom in doms:
        assert len(dom.neighbors) == len(dom.facet_inequalities)
        for q, k in zip(dom.facet_inequalities, dom.neighbors):
            nb = neighbor_phi(dom.phi, q.u, q.v, 3)
            assert phi_equivalent(nb, doms[k].phi) is not None
        assert set(voronoi_vectors(dom.interior, 3)) == set(dom.phi.vectors)


def test_enumeration_is_deterministic():
    a = [(sorted(d.phi.vectors), d.neighbors) for d in enumerate_ctype_reps(2, 4)]
    b = [(sorted(d.phi.vectors), d.neighbors) for d in enumerate_ctype_reps(2, 4)]
    assert a == b


def test_enumeration_rejects_other_ranks():
    with pytest.raises(ValueError):
        enumerate_ctype_reps(4, 2)


def test_cover_sets_are_voronoi_sets():
    phis = minkowski_cover_phis()
    assert len(phis) == 10 and all(len(p) == 26 for p in phis)
    for p in phis:
        interior = facet_analysis(ctype_inequalities(p, 3)).interior
        assert set(voronoi_vectors(interior, 3)) == set(p.vectors)
