"""Batch float kernels written with whole-array numpy operations.

Every routine works on a stack of Gram matrices given as an (N, 6) array of
entries (s11, s22, s33, s12, s13, s23) and mirrors the scalar Python code
path of the package step for step, so both give the same result away from
ties.
"""
import numpy as np

from ._tables import (MIN_GROUPS, MINKOWSKI_VECTORS, PAIRS, SIGMAS,
                      SIGNED_PERMS, STANDARD_SUPERBASE)

OK, NOT_PD, FALLBACK = 0, 1, 2


def to_matrices(entries):
    e = np.asarray(entries, dtype=np.float64)
    S = np.empty((e.shape[0], 3, 3))
    S[:, 0, 0], S[:, 1, 1], S[:, 2, 2] = e[:, 0], e[:, 1], e[:, 2]
    S[:, 0, 1] = S[:, 1, 0] = e[:, 3]
    S[:, 0, 2] = S[:, 2, 0] = e[:, 4]
    S[:, 1, 2] = S[:, 2, 1] = e[:, 5]
    return S


def _pd_mask(S, tau_pd):
    m1 = S[:, 0, 0]
    m2 = S[:, 0, 0] * S[:, 1, 1] - S[:, 0, 1] ** 2
    m3 = np.linalg.det(S)
    return (m1 > tau_pd) & (m2 > tau_pd) & (m3 > tau_pd)


def _congruence(G, S):
    return np.einsum("nik,nkl,njl->nij", G, S, G)


def selling_superbase(S, tau, cap):
    """Superbase vectors (N, 4, 3) of the Selling reduction and a converged flag."""
    n = S.shape[0]
    V = np.broadcast_to(STANDARD_SUPERBASE, (n, 4, 3)).astype(np.float64).copy()
    active = np.ones(n, dtype=bool)
    iu, ju = PAIRS[:, 0], PAIRS[:, 1]
    for _ in range(cap):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        t = _congruence(V[idx], S[idx])
        off = t[:, iu, ju]
        pos = off > tau
        has = pos.any(axis=1)
        active[idx[~has]] = False
        if not has.any():
            break
        idx, off, pos = idx[has], off[has], pos[has]
        best = np.argmax(np.where(pos, off, -np.inf), axis=1)
        i, j = iu[best], ju[best]
        bi = V[idx, i].copy()
        k = np.arange(4)[None, :]
        others = (k != i[:, None]) & (k != j[:, None])
        V[idx] += others[:, :, None] * bi[:, None, :]
        V[idx, i] = -bi
    return V, ~active


def to_entries(M):
    return np.stack([M[:, 0, 0], M[:, 1, 1], M[:, 2, 2],
                     M[:, 0, 1], M[:, 0, 2], M[:, 1, 2]], axis=1)


def _sorted_rows(x):
    return np.sort(x, axis=1, kind="stable")


def iota_s(entries, tau=1e-9, tau_pd=1e-12, cap=200):
    S = to_matrices(entries)
    out = np.full((S.shape[0], 13), np.nan)
    red = np.full((S.shape[0], 6), np.nan)
    status = np.full(S.shape[0], OK, dtype=np.int8)
    pd = _pd_mask(S, tau_pd)
    status[~pd] = NOT_PD
    idx = np.nonzero(pd)[0]
    if idx.size == 0:
        return out, red, status
    V, done = selling_superbase(S[idx], tau, cap)
    status[idx[~done]] = FALLBACK
    t = _congruence(V, S[idx])
    d = np.diagonal(t, axis1=1, axis2=2)
    f1 = np.concatenate([d, d[:, [0, 0, 1]] + d[:, [1, 2, 2]]
                         + 2 * t[:, [0, 0, 1], [1, 2, 2]]], axis=1)
    f2 = -t[:, PAIRS[:, 0], PAIRS[:, 1]]
    vals = np.concatenate([_sorted_rows(f1), _sorted_rows(f2)], axis=1)
    keep = idx[done]
    out[keep] = vals[done]
    red[keep] = to_entries(t[:, :3, :3])[done]
    return out, red, status


def _is_minkowski(T, tau):
    s11, s22, s33 = T[..., 0, 0], T[..., 1, 1], T[..., 2, 2]
    s12, s13, s23 = T[..., 0, 1], T[..., 0, 2], T[..., 1, 2]
    return ((s11 <= s22 + tau) & (s22 <= s33 + tau)
            & (0 <= -2 * s12 + tau) & (-2 * s12 <= s11 + tau)
            & (2 * np.abs(s13) <= s11 + tau)
            & (0 <= -2 * s23 + tau) & (-2 * s23 <= s22 + tau)
            & (-2 * (s12 + s13 + s23) <= s11 + s22 + tau))


def minkowski_forms(S, tau, cap):
    """Minkowski-reduced forms (N, 3, 3) and an ok flag per row."""
    V, done = selling_superbase(S, tau, cap)
    norms = np.einsum("nki,nij,nkj->nk", V, S, V)
    order = np.argsort(norms, axis=1, kind="stable")[:, :3]
    B = np.take_along_axis(V, order[:, :, None], axis=1)
    sel = _congruence(B, S)
    s11, s22 = sel[:, 0, 0], sel[:, 1, 1]
    s12, s13, s23 = sel[:, 0, 1], sel[:, 0, 2], sel[:, 1, 2]
    case = np.full(S.shape[0], 3)
    c3 = s22 + 2 * s23 < -tau
    c2 = s11 + 2 * s13 < -tau
    c1 = s11 + 2 * s12 < -tau
    case[c3] = 2
    case[c2] = 1
    case[c1] = 0
    G = np.einsum("nij,njk->nik", SIGMAS[case], B)
    T = _congruence(G, S)
    P = SIGNED_PERMS.astype(np.float64)
    TP = np.einsum("pik,nkl,pjl->npij", P, T, P)
    good = _is_minkowski(TP, tau)
    first = np.argmax(good, axis=1)
    ok = done & good[np.arange(S.shape[0]), first]
    return TP[np.arange(S.shape[0]), first], ok


def minkowski_values(R):
    vecs = MINKOWSKI_VECTORS.astype(np.float64)
    fixed = np.einsum("ki,nij,kj->nk", vecs, R, vecs)
    mins = []
    for group in MIN_GROUPS:
        g = group.astype(np.float64)
        mins.append(np.einsum("ki,nij,kj->nk", g, R, g).min(axis=1))
    return np.concatenate([fixed, np.stack(mins, axis=1)], axis=1)


def iota_m(entries, tau=1e-9, tau_pd=1e-12, cap=200):
    S = to_matrices(entries)
    out = np.full((S.shape[0], 13), np.nan)
    red = np.full((S.shape[0], 6), np.nan)
    status = np.full(S.shape[0], OK, dtype=np.int8)
    pd = _pd_mask(S, tau_pd)
    status[~pd] = NOT_PD
    idx = np.nonzero(pd)[0]
    if idx.size == 0:
        return out, red, status
    R, ok = minkowski_forms(S[idx], tau, cap)
    status[idx[~ok]] = FALLBACK
    vals = _sorted_rows(minkowski_values(R))
    out[idx[ok]] = vals[ok]
    red[idx[ok]] = to_entries(R)[ok]
    return out, red, status


def linf_pairs(X, threshold, block=256):
    """All index pairs i < j with max |X_i - X_j| <= threshold."""
    X = np.asarray(X, dtype=np.float64)
    n = X.shape[0]
    found_i, found_j = [], []
    for start in range(0, n, block):
        stop = min(n, start + block)
        d = np.abs(X[start:stop, None, :] - X[None, :, :]).max(axis=2)
        ii, jj = np.nonzero(d <= threshold)
        ii = ii + start
        keep = jj > ii
        found_i.append(ii[keep])
        found_j.append(jj[keep])
    if not found_i:
        return np.empty((0, 2), dtype=np.int64)
    return np.stack([np.concatenate(found_i), np.concatenate(found_j)], axis=1).astype(np.int64)
