import math
import pickle
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import pd_forms, unimodular
from lattice13 import (CellParameters, NonPositiveDefinite, SymMat, apply_unimodular,
                       cell_from_gram, gram_from_cell, is_positive_definite,
                       numeric_mode, sym2, sym3)
from lattice13.core import CONFIG, det_int, inverse_int, mat_mul, signed_permutations

I3 = sym3(1, 1, 1, 0, 0, 0)


def test_symmat_is_symmetric_and_immutable():
    S = sym3(1, 2, 3, 4, 5, 6)
    assert S.rows == ((1, 4, 5), (4, 2, 6), (5, 6, 3))
    assert S[2, 1] == S[1, 2] == 6
    with pytest.raises(AttributeError):
        S.rows = ()


def test_symmat_entries_are_exact_by_default():
    S = SymMat.from_entries(["1/3", 0.5, 2, 0, 0, 0])
    assert S[0, 0] == Fraction(1, 3)
    assert S[1, 1] == Fraction(1, 2)
    assert S.is_exact


def test_symmat_pickles():
    S = sym3(1, 2, 3, 0, "1/2", 0)
    assert pickle.loads(pickle.dumps(S)) == S


def test_float_mode_uses_tolerance():
    with numeric_mode("float", tau_cmp=1e-6):
        assert CONFIG.mode == "float"
        S = SymMat.from_entries([1, 1, 1, 0, 0, 0])
        T = SymMat.from_entries([1 + 1e-8, 1, 1, 0, 0, 0])
        assert not S.is_exact
        assert is_positive_definite(T)
    assert CONFIG.mode == "exact"


@pytest.mark.parametrize("cell, gram", [
    ((1, 1, 1, 90, 90, 90), I3),
    ((2, 2, 2, 90, 90, 90), sym3(4, 4, 4, 0, 0, 0)),
    ((1, 1, 1, 60, 60, 60), sym3(1, 1, 1, "1/2", "1/2", "1/2")),
    ((1, 1, 1, 90, 90, 120), sym3(1, 1, 1, "-1/2", 0, 0)),
])
def test_gram_from_cell(cell, gram):
    assert gram_from_cell(CellParameters(*cell)) == gram


def test_gram_from_cell_rejects_impossible_angles():
    with pytest.raises(NonPositiveDefinite):
        gram_from_cell(CellParameters(1, 1, 1, 120, 120, 120))


@pytest.mark.parametrize("gram, cell", [
    (I3, (1, 1, 1, 90, 90, 90)),
    (sym3(4, 9, 16, 0, 0, 0), (2, 3, 4, 90, 90, 90)),
])
def test_cell_from_gram(gram, cell):
    got = cell_from_gram(gram)
    assert [float(x) for x in (got.a, got.b, got.c, got.alpha, got.beta, got.gamma)] == \
        pytest.approx(cell)


def test_cell_round_trip_on_random_forms():
    rng = random.Random(3)
    with numeric_mode("float"):
        for _ in range(100):
            while True:
                S = SymMat.from_entries([rng.uniform(1, 10) for _ in range(3)]
                                        + [rng.uniform(-2, 2) for _ in range(3)])
                if is_positive_definite(S):
                    break
            back = gram_from_cell(cell_from_gram(S))
            assert max(abs(a - b) for a, b in zip(back.entries, S.entries)) < 1e-9


def test_apply_unimodular_examples():
    S = sym3(1, 2, 3, 4, 5, 6)
    assert apply_unimodular(((1, 0, 0), (0, 1, 0), (0, 0, 1)), S) == S
    assert apply_unimodular(((1, 0, 0), (0, 1, 0), (0, 0, -1)), S) == sym3(1, 2, 3, 4, -5, -6)
    g = ((1, 0, 0), (1, 1, 0), (0, 0, 1))
    assert apply_unimodular(g, sym3(1, 2, 3, 0, 0, 0)).rows == ((1, 1, 0), (1, 3, 0), (0, 0, 3))


def test_apply_unimodular_2d():
    assert apply_unimodular(((1, 1), (0, 1)), sym2(1, 1, 0)) == sym2(2, 1, 1)


@pytest.mark.parametrize("S, expected", [
    (I3, True),
    (sym3(1, 1, 0, 0, 0, 0), False),
    (sym2(2, 2, 3), False),
    (sym3(1, 1, 1, -1, 0, 0), False),
])
def test_is_positive_definite(S, expected):
    assert is_positive_definite(S) is expected


@settings(max_examples=60, deadline=None)
@given(unimodular(), pd_forms())
def test_unimodular_action_preserves_determinant(g, S):
    assert apply_unimodular(g, S).det() == S.det()
    assert apply_unimodular(g, S).rows == oracles.transform(g, S.rows)


@settings(max_examples=60, deadline=None)
@given(unimodular(steps=2), unimodular(steps=2), pd_forms())
def test_unimodular_action_composes(g, h, S):
    assert apply_unimodular(mat_mul(g, h), S) == apply_unimodular(g, apply_unimodular(h, S))


@settings(max_examples=50, deadline=None)
@given(st.tuples(st.floats(0.5, 5), st.floats(0.5, 5), st.floats(0.5, 5),
                 st.floats(60, 120), st.floats(60, 120), st.floats(60, 120)))
def test_cells_in_the_admissible_region_give_pd_forms(cell):
    a, b, c, al, be, ga = cell
    ca, cb, cg = (math.cos(math.radians(x)) for x in (al, be, ga))
    admissible = 1 - ca * ca - cb * cb - cg * cg + 2 * ca * cb * cg > 1e-9
    with numeric_mode("float"):
        if admissible:
            assert is_positive_definite(gram_from_cell(CellParameters(*cell)))


def test_integer_matrix_helpers():
    g = ((2, 1, 0), (1, 1, 0), (0, 0, 1))
    assert det_int(g) == 1
    assert mat_mul(g, inverse_int(g)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    perms = signed_permutations(3)
    assert len(perms) == 48 and len(set(perms)) == 48
    assert perms[0] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
