from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from strategies import pd_forms
from lattice13 import SymMat, embed, kernels
from lattice13.kernels import FALLBACK, NOT_PD, OK, _numba, _numpy

BACKENDS = kernels.available_backends()


def random_entries(rng, n):
    # A A^T plus a small ridge is positive-definite with varied shapes
    A = rng.uniform(-3, 3, size=(n, 3, 3))
    S = A @ A.transpose(0, 2, 1) + 0.1 * np.eye(3)
    return np.stack([S[:, 0, 0], S[:, 1, 1], S[:, 2, 2],
                     S[:, 0, 1], S[:, 0, 2], S[:, 1, 2]], axis=1)


def test_env_flag_selects_backend(monkeypatch):
    monkeypatch.setenv("LATTICE13_NUMBA", "0")
    assert kernels.backend_name() == "numpy"
    monkeypatch.setenv("LATTICE13_NUMBA", "1")
    assert kernels.backend_name() == ("numba" if _numba is not None else "numpy")
    assert kernels.backend_name("numpy") == "numpy"
    with pytest.raises(ValueError):
        kernels.backend_name("cuda")


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("kind", ["m", "s"])
def test_backends_match_exact_path(backend, kind):
    rng = np.random.default_rng(5)
    E = random_entries(rng, 300)
    values, reduced, status = kernels.fingerprint_batch(E, kind, backend=backend)
    assert (status == OK).all()
    for row, v in zip(E, values):
        want = [float(x) for x in embed(_exact(row), kind).values]
        np.testing.assert_allclose(v, want, rtol=1e-7, atol=1e-7)


def _exact(row):
    return SymMat.from_entries([Fraction(float(x)) for x in row])


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba not installed")
@pytest.mark.parametrize("kind", ["m", "s"])
def test_backends_agree(kind):
    E = random_entries(np.random.default_rng(6), 2000)
    a = kernels.fingerprint_batch(E, kind, backend="numba")
    b = kernels.fingerprint_batch(E, kind, backend="numpy")
    np.testing.assert_allclose(a[0], b[0], rtol=1e-9, atol=1e-9)
    assert (a[2] == b[2]).all()


@settings(max_examples=40, deadline=None)
@given(pd_forms())
def test_batch_of_one_matches_scalar_embedding(S):
    E = np.array([[float(x) for x in S.entries]])
    for kind in ("m", "s"):
        values, _, status = kernels.fingerprint_batch(E, kind)
        assert status[0] == OK
        want = [float(x) for x in embed(S, kind).values]
        np.testing.assert_allclose(values[0], want, rtol=1e-7, atol=1e-7)


@pytest.mark.parametrize("mod", [_numpy] + ([_numba] if _numba is not None else []))
def test_statuses(mod):
    E = np.array([[1, 1, 1, 0, 0, 0], [1, 1, 0, 0, 0, 0], [5, 1, 1, 2, 0, 0]], dtype=float)
    for fn in (mod.iota_m, mod.iota_s):
        values, _, status = (np.asarray(a) for a in fn(E, 1e-9, 1e-12, 200))
        assert list(status) == [OK, NOT_PD, OK]
        assert np.isnan(values[1]).all()
        # without any exchange steps the kernels hand non-reduced rows back
        _, _, status = (np.asarray(a) for a in fn(E, 1e-9, 1e-12, 0))
        assert list(status) == [FALLBACK, NOT_PD, FALLBACK]


def test_fallback_rows_are_filled_in():
    E = np.array([[5, 1, 1, 2, 0, 0]], dtype=float)
    values, _, status = kernels.fingerprint_batch(E, "m", cap=0)
    assert status[0] == OK
    want = [float(x) for x in embed(_exact(E[0]), "m").values]
    np.testing.assert_allclose(values[0], want)


@pytest.mark.parametrize("backend", BACKENDS)
def test_linf_pairs_match_brute_force(backend):
    rng = np.random.default_rng(7)
    X = np.round(rng.uniform(0, 4, size=(400, 13)), 1)
    X[50] = X[10] + 0.05
    t = 1.5
    got = {tuple(p) for p in kernels.linf_pairs(X, t, backend=backend).tolist()}
    D = np.abs(X[:, None, :] - X[None, :, :]).max(axis=2)
    i, j = np.nonzero(np.triu(D <= t, k=1))
    assert got == set(zip(i.tolist(), j.tolist()))
    assert (10, 50) in got
    assert len(kernels.linf_pairs(X[:1], t, backend=backend)) == 0
