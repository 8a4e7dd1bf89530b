"""Compiled per-matrix kernels.  Same algorithms and status codes as the
numpy backend, written as explicit loops over one Gram matrix at a time."""
import numpy as np
from numba import njit

from ._tables import (MIN_GROUP_IDS, MIN_GROUP_VECTORS, MINKOWSKI_VECTORS,
                      PAIRS, SIGMAS, SIGNED_PERMS, STANDARD_SUPERBASE)

OK, NOT_PD, FALLBACK = 0, 1, 2


@njit(cache=True)
def _load(e, S):
    S[0, 0], S[1, 1], S[2, 2] = e[0], e[1], e[2]
    S[0, 1] = S[1, 0] = e[3]
    S[0, 2] = S[2, 0] = e[4]
    S[1, 2] = S[2, 1] = e[5]


@njit(cache=True)
def _store(M, row):
    row[0], row[1], row[2] = M[0, 0], M[1, 1], M[2, 2]
    row[3], row[4], row[5] = M[0, 1], M[0, 2], M[1, 2]


@njit(cache=True)
def _is_pd(S, tau_pd):
    m2 = S[0, 0] * S[1, 1] - S[0, 1] * S[0, 1]
    m3 = (S[0, 0] * (S[1, 1] * S[2, 2] - S[1, 2] * S[1, 2])
          - S[0, 1] * (S[0, 1] * S[2, 2] - S[1, 2] * S[0, 2])
          + S[0, 2] * (S[0, 1] * S[1, 2] - S[1, 1] * S[0, 2]))
    return S[0, 0] > tau_pd and m2 > tau_pd and m3 > tau_pd


@njit(cache=True)
def _inner(S, u, v):
    acc = 0.0
    for i in range(3):
        for j in range(3):
            acc += u[i] * S[i, j] * v[j]
    return acc


@njit(cache=True)
def _congruence(G, S, out):
    m = G.shape[0]
    for i in range(m):
        for j in range(i, m):
            out[i, j] = out[j, i] = _inner(S, G[i], G[j])


@njit(cache=True)
def _selling(S, V, t, tau, cap):
    V[:, :] = STANDARD_SUPERBASE
    bi = np.empty(3)
    for _ in range(cap):
        _congruence(V, S, t)
        best = -1
        for p in range(6):
            val = t[PAIRS[p, 0], PAIRS[p, 1]]
            if val > tau and (best < 0 or val > t[PAIRS[best, 0], PAIRS[best, 1]]):
                best = p
        if best < 0:
            return True
        i, j = PAIRS[best, 0], PAIRS[best, 1]
        bi[:] = V[i]
        for k in range(4):
            if k != i and k != j:
                V[k] += bi
        V[i] = -bi
    return False


@njit(cache=True)
def _sort_inplace(x):
    # insertion sort: stable and fast for a handful of entries
    for i in range(1, x.shape[0]):
        v = x[i]
        j = i - 1
        while j >= 0 and x[j] > v:
            x[j + 1] = x[j]
            j -= 1
        x[j + 1] = v


@njit(cache=True)
def iota_s(entries, tau, tau_pd, cap):
    n = entries.shape[0]
    out = np.full((n, 13), np.nan)
    red = np.full((n, 6), np.nan)
    status = np.zeros(n, dtype=np.int8)
    S = np.empty((3, 3))
    V = np.empty((4, 3))
    t = np.empty((4, 4))
    f1 = np.empty(7)
    f2 = np.empty(6)
    for r in range(n):
        _load(entries[r], S)
        if not _is_pd(S, tau_pd):
            status[r] = NOT_PD
            continue
        if not _selling(S, V, t, tau, cap):
            status[r] = FALLBACK
            continue
        _congruence(V, S, t)
        for k in range(4):
            f1[k] = t[k, k]
        f1[4] = t[0, 0] + t[1, 1] + 2 * t[0, 1]
        f1[5] = t[0, 0] + t[2, 2] + 2 * t[0, 2]
        f1[6] = t[1, 1] + t[2, 2] + 2 * t[1, 2]
        for p in range(6):
            f2[p] = -t[PAIRS[p, 0], PAIRS[p, 1]]
        _sort_inplace(f1)
        _sort_inplace(f2)
        out[r, :7] = f1
        out[r, 7:] = f2
        _store(t, red[r])
    return out, red, status


@njit(cache=True)
def _is_minkowski(T, tau):
    s11, s22, s33 = T[0, 0], T[1, 1], T[2, 2]
    s12, s13, s23 = T[0, 1], T[0, 2], T[1, 2]
    return (s11 <= s22 + tau and s22 <= s33 + tau
            and 0 <= -2 * s12 + tau and -2 * s12 <= s11 + tau
            and 2 * abs(s13) <= s11 + tau
            and 0 <= -2 * s23 + tau and -2 * s23 <= s22 + tau
            and -2 * (s12 + s13 + s23) <= s11 + s22 + tau)


@njit(cache=True)
def _minkowski(S, V, t, R, tau, cap):
    if not _selling(S, V, t, tau, cap):
        return False
    norms = np.empty(4)
    for k in range(4):
        norms[k] = _inner(S, V[k], V[k])
    order = np.argsort(norms, kind="mergesort")
    B = np.empty((3, 3))
    for k in range(3):
        B[k] = V[order[k]]
    sel = np.empty((3, 3))
    _congruence(B, S, sel)
    if sel[0, 0] + 2 * sel[0, 1] < -tau:
        case = 0
    elif sel[0, 0] + 2 * sel[0, 2] < -tau:
        case = 1
    elif sel[1, 1] + 2 * sel[1, 2] < -tau:
        case = 2
    else:
        case = 3
    G = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                G[i, j] += SIGMAS[case, i, k] * B[k, j]
    T = np.empty((3, 3))
    _congruence(G, S, T)
    P = np.empty((3, 3))
    for p in range(SIGNED_PERMS.shape[0]):
        for i in range(3):
            for j in range(3):
                P[i, j] = SIGNED_PERMS[p, i, j]
        _congruence(P, T, R)
        if _is_minkowski(R, tau):
            return True
    return False


@njit(cache=True)
def iota_m(entries, tau, tau_pd, cap):
    n = entries.shape[0]
    out = np.full((n, 13), np.nan)
    red = np.full((n, 6), np.nan)
    status = np.zeros(n, dtype=np.int8)
    S = np.empty((3, 3))
    V = np.empty((4, 3))
    t = np.empty((4, 4))
    R = np.empty((3, 3))
    vals = np.empty(13)
    ng = MIN_GROUP_VECTORS.shape[0]
    vec = np.empty(3)
    for r in range(n):
        _load(entries[r], S)
        if not _is_pd(S, tau_pd):
            status[r] = NOT_PD
            continue
        if not _minkowski(S, V, t, R, tau, cap):
            status[r] = FALLBACK
            continue
        for k in range(10):
            vec[:] = MINKOWSKI_VECTORS[k]
            vals[k] = _inner(R, vec, vec)
        vals[10:] = np.inf
        for k in range(ng):
            vec[:] = MIN_GROUP_VECTORS[k]
            q = _inner(R, vec, vec)
            slot = 10 + MIN_GROUP_IDS[k]
            if q < vals[slot]:
                vals[slot] = q
        _sort_inplace(vals)
        out[r] = vals
        _store(R, red[r])
    return out, red, status


@njit(cache=True)
def linf_pairs(X, threshold):
    n, m = X.shape
    count = 0
    cap = 64
    pairs = np.empty((cap, 2), dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            close = True
            for k in range(m):
                if abs(X[i, k] - X[j, k]) > threshold:
                    close = False
                    break
            if close:
                if count == cap:
                    cap *= 2
                    grown = np.empty((cap, 2), dtype=np.int64)
                    grown[:count] = pairs[:count]
                    pairs = grown
                pairs[count, 0] = i
                pairs[count, 1] = j
                count += 1
    return pairs[:count].copy()
