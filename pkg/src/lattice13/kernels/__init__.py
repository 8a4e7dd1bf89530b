"""Batch float fingerprinting and near-duplicate search.

Two interchangeable backends compute the same arrays: compiled numba loops
and a vectorized numpy version.  ``LATTICE13_NUMBA=0`` in the environment (or
``backend="numpy"``) selects the numpy one; numba is the default whenever it
imports.

Rows the float kernels cannot finish (no convergence within the exchange cap,
or a tie that defeats the signed-permutation normalization) are recomputed
through the scalar Python path in float mode.
"""
import logging
import os

import numpy as np

from ..core import SymMat, numeric_mode
from ..embedding import embed
from ..reduction import minkowski_reduce, selling_reduce
from . import _numpy

log = logging.getLogger(__name__)

try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    _numba = None

OK, NOT_PD, FALLBACK = _numpy.OK, _numpy.NOT_PD, _numpy.FALLBACK

__all__ = ["FALLBACK", "NOT_PD", "OK", "available_backends", "backend_name",
           "fingerprint_batch", "linf_pairs"]


def available_backends():
    return ["numba", "numpy"] if _numba is not None else ["numpy"]


def backend_name(backend=None):
    if backend is None:
        flag = os.environ.get("LATTICE13_NUMBA", "1").strip().lower()
        backend = "numpy" if flag in ("0", "false", "no", "off") else "numba"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and _numba is None:
        log.warning("numba unavailable, using the numpy backend")
        backend = "numpy"
    return backend


def _module(backend):
    return _numba if backend_name(backend) == "numba" else _numpy


def fingerprint_batch(entries, kind="m", backend=None, tau=1e-9, tau_pd=1e-12,
                      cap=200):
    """Float embeddings for an (N, 6) array of Gram entries.

    Returns ``(values, reduced, status)``: values is (N, 13), reduced holds
    the entries of the reduced form the values were read from, both NaN where
    status is NOT_PD.  FALLBACK rows are filled in by the scalar code.
    """
    entries = np.ascontiguousarray(entries, dtype=np.float64).reshape(-1, 6)
    mod = _module(backend)
    fn = mod.iota_s if kind == "s" else mod.iota_m
    values, reduced, status = (np.array(a) for a in fn(entries, tau, tau_pd, cap))
    redo = np.nonzero(status == FALLBACK)[0]
    if redo.size:
        with numeric_mode("float", tau_cmp=tau, tau_pd=tau_pd):
            for r in redo:
                S = SymMat.from_entries([float(x) for x in entries[r]])
                values[r] = embed(S, kind).values
                red = (minkowski_reduce(S) if kind == "m" else selling_reduce(S)).reduced
                reduced[r] = red.entries
                status[r] = OK
    return values, reduced, status


def linf_pairs(X, threshold, backend=None):
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.shape[0] < 2:
        return np.empty((0, 2), dtype=np.int64)
    return np.asarray(_module(backend).linf_pairs(X, float(threshold)))
