"""Hot inner loops, each in a numba and a pure-numpy flavour.

The numba path is used when numba imports and ``LIEOBSTRUCT_NUMBA`` is not
set to ``0``.  Both flavours are exported under explicit names (``*_jit`` /
``*_numpy``) so benchmarks and tests can compare them; the unsuffixed names
are the dispatching entry points used by the rest of the package.

All kernels work on int64 arrays of residues in ``[0, p)`` and require
``p < 2**31`` so that products fit in 64 bits.  Larger primes go through the
numpy path on object arrays.
"""
from __future__ import annotations

import os
from itertools import combinations

import numpy as np

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
    HAS_NUMBA = False

USE_NUMBA = HAS_NUMBA and os.environ.get("LIEOBSTRUCT_NUMBA", "1") != "0"

INT64_PRIME_LIMIT = 2**31


def _njit(fn):
    if not HAS_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)


# ---------------------------------------------------------------------------
# row reduction over F_p

def _inv_mod_loop(a, p):
    t, new_t = 0, 1
    r, new_r = p, a % p
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    return t % p


_inv_mod_jit = _njit(_inv_mod_loop)


@_njit
def rref_jit(M, p):
    A = M.copy() % p
    rows, cols = A.shape
    pivots = np.empty(min(rows, cols), np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for t in range(cols):
                tmp = A[r, t]
                A[r, t] = A[piv, t]
                A[piv, t] = tmp
        inv = _inv_mod_jit(A[r, c], p)
        for t in range(c, cols):
            A[r, t] = (A[r, t] * inv) % p
        for i in range(rows):
            if i != r:
                f = A[i, c]
                if f != 0:
                    for t in range(c, cols):
                        A[i, t] = (A[i, t] - f * A[r, t]) % p
        pivots[r] = c
        r += 1
    return A, pivots[:r]


def rref_numpy(M, p):
    big = p >= INT64_PRIME_LIMIT
    A = (np.array(M, dtype=object) if big else np.array(M, dtype=np.int64)) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        f = A[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[hit] = (A[hit] - np.outer(f[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A, np.array(pivots, dtype=np.int64)


def rref(M, p):
    """Reduced row echelon form of ``M`` over F_p and its pivot columns."""
    M = np.asarray(M)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {M.shape}")
    if USE_NUMBA and p < INT64_PRIME_LIMIT and M.size:
        return rref_jit(np.ascontiguousarray(M, dtype=np.int64), np.int64(p))
    return rref_numpy(M, p)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg differential assembly
#
# Basis of degree-s cochains: sorted s-subsets of range(n) in lexicographic
# order, tensored with e_m (adjoint) with m fastest.  Subsets are handled as
# bitmasks; ``mask_rank[mask]`` is the lexicographic index of the subset
# among subsets of the same size.

def subset_tables(n: int, s: int) -> np.ndarray:
    """Sorted s-subsets of range(n) as rows, in lexicographic order."""
    subs = list(combinations(range(n), s))
    return np.array(subs, dtype=np.int64).reshape(len(subs), s)


def mask_ranks(n: int) -> np.ndarray:
    ranks = np.full(1 << n, -1, dtype=np.int64)
    for s in range(n + 1):
        for idx, sub in enumerate(combinations(range(n), s)):
            m = 0
            for t in sub:
                m |= 1 << t
            ranks[m] = idx
    return ranks


@_njit
def differential_jit(c, rows_sub, ncols_sub, mask_rank, p, adjoint):
    n = c.shape[0]
    nrow_sub, s1 = rows_sub.shape
    width = n if adjoint else 1
    D = np.zeros((nrow_sub * width, ncols_sub * width), np.int64)
    for I in range(nrow_sub):
        mask = 0
        for t in range(s1):
            mask |= 1 << rows_sub[I, t]
        if adjoint:
            for i in range(s1):
                xi = rows_sub[I, i]
                J = mask_rank[mask ^ (1 << xi)]
                sg = 1 if i % 2 == 0 else -1
                for b in range(n):
                    for m in range(n):
                        v = c[xi, b, m]
                        if v != 0:
                            D[I * n + m, J * n + b] += sg * v
        for i in range(s1):
            for j in range(i + 1, s1):
                xi = rows_sub[I, i]
                xj = rows_sub[I, j]
                sij = 1 if (i + j) % 2 == 0 else -1
                rest = mask ^ (1 << xi) ^ (1 << xj)
                for a in range(n):
                    coef = c[xi, xj, a]
                    if coef == 0 or (rest >> a) & 1:
                        continue
                    below = rest & ((1 << a) - 1)
                    cnt = 0
                    while below:
                        below &= below - 1
                        cnt += 1
                    sg = sij if cnt % 2 == 0 else -sij
                    J = mask_rank[rest | (1 << a)]
                    if adjoint:
                        for b in range(n):
                            D[I * n + b, J * n + b] += sg * coef
                    else:
                        D[I, J] += sg * coef
    for r in range(D.shape[0]):
        for t in range(D.shape[1]):
            D[r, t] = D[r, t] % p
    return D


def differential_numpy(c, rows_sub, ncols_sub, mask_rank, p, adjoint):
    n = c.shape[0]
    nrow_sub, s1 = rows_sub.shape
    width = n if adjoint else 1
    big = p >= INT64_PRIME_LIMIT
    D = np.zeros((nrow_sub * width, ncols_sub * width), dtype=object if big else np.int64)
    c = c.astype(object) if big else c
    masks = (np.left_shift(1, rows_sub)).sum(axis=1) if s1 else np.zeros(nrow_sub, np.int64)

    if adjoint and s1:
        # first sum: each (row subset, column subset) pair occurs once
        I_idx = np.repeat(np.arange(nrow_sub), s1)
        xs = rows_sub.reshape(-1)
        J_idx = mask_rank[np.repeat(masks, s1) ^ (1 << xs)]
        signs = np.tile(np.where(np.arange(s1) % 2 == 0, 1, -1), nrow_sub)
        D4 = D.reshape(nrow_sub, n, ncols_sub, n)
        D4[I_idx, :, J_idx, :] += signs[:, None, None] * c[xs].transpose(0, 2, 1)

    rows, cols, vals = [], [], []
    for I in range(nrow_sub):
        x = rows_sub[I]
        mask = int(masks[I])
        for i in range(s1):
            for j in range(i + 1, s1):
                rest = mask ^ (1 << int(x[i])) ^ (1 << int(x[j]))
                sij = 1 if (i + j) % 2 == 0 else -1
                for a in np.flatnonzero(c[x[i], x[j]]):
                    a = int(a)
                    if (rest >> a) & 1:
                        continue
                    sg = sij if bin(rest & ((1 << a) - 1)).count("1") % 2 == 0 else -sij
                    rows.append(I)
                    cols.append(int(mask_rank[rest | (1 << a)]))
                    vals.append(sg * c[x[i], x[j], a])
    if rows:
        rows = np.array(rows, dtype=np.int64)
        cols = np.array(cols, dtype=np.int64)
        vals = np.array(vals, dtype=D.dtype)
        if adjoint:
            b = np.arange(n)
            r = (rows[:, None] * n + b).reshape(-1)
            t = (cols[:, None] * n + b).reshape(-1)
            np.add.at(D, (r, t), np.repeat(vals, n))
        else:
            np.add.at(D, (rows, cols), vals)
    return D % p


def differential(c, s, p, adjoint):
    """Matrix of d: C^s -> C^(s+1) for structure constants ``c`` over F_p."""
    n = c.shape[0]
    rows_sub = subset_tables(n, s + 1)
    ncols_sub = len(subset_tables(n, s))
    ranks = mask_ranks(n)
    if USE_NUMBA and p < INT64_PRIME_LIMIT:
        return differential_jit(
            np.ascontiguousarray(c, dtype=np.int64), rows_sub, ncols_sub, ranks, np.int64(p), adjoint
        )
    return differential_numpy(np.asarray(c), rows_sub, ncols_sub, ranks, p, adjoint)


# ---------------------------------------------------------------------------
# ideal closure of many vectors (simplicity test)

@_njit
def ideal_closure_dims_jit(ad, vectors, p):
    n = ad.shape[0]
    N = vectors.shape[0]
    out = np.empty(N, np.int64)
    for v in range(N):
        R, piv = rref_jit(vectors[v : v + 1], p)
        dim = piv.shape[0]
        span = R[:dim].copy()
        while 0 < dim < n:
            cand = np.zeros((dim * (n + 1), n), np.int64)
            cand[:dim] = span
            r = dim
            for i in range(n):
                for f in range(dim):
                    for m in range(n):
                        acc = 0
                        for j in range(n):
                            acc += ad[i, m, j] * span[f, j]
                        cand[r, m] = acc % p
                    r += 1
            R, piv = rref_jit(cand, p)
            if piv.shape[0] == dim:
                break
            dim = piv.shape[0]
            span = R[:dim].copy()
        out[v] = dim
    return out


def ideal_closure_dims_numpy(ad, vectors, p):
    n = ad.shape[0]
    out = np.empty(len(vectors), dtype=np.int64)
    for idx, v in enumerate(vectors):
        R, piv = rref_numpy(np.asarray(v)[None, :], p)
        span = R[: len(piv)]
        while 0 < len(piv) < n:
            images = np.einsum("imj,rj->irm", ad, span).reshape(-1, n) % p
            R, new_piv = rref_numpy(np.vstack([span, images]), p)
            if len(new_piv) == len(piv):
                break
            span, piv = R[: len(new_piv)], new_piv
        out[idx] = len(piv)
    return out


def ideal_closure_dims(ad, vectors, p):
    """Dimension of the ideal generated by each row of ``vectors``.

    ``ad[i]`` is the matrix of ad(e_i), ``ad[i, m, j] = c[i, j, m]``.
    """
    vectors = np.atleast_2d(np.asarray(vectors))
    if USE_NUMBA and p < INT64_PRIME_LIMIT:
        return ideal_closure_dims_jit(
            np.ascontiguousarray(ad, dtype=np.int64), np.ascontiguousarray(vectors, dtype=np.int64), np.int64(p)
        )
    return ideal_closure_dims_numpy(np.asarray(ad), vectors, p)


# ---------------------------------------------------------------------------
# batched Jacobi defect over Z/q (brute-force enumeration)

@_njit
def jacobi_defect_jit(C, q):
    N, n = C.shape[0], C.shape[1]
    bad = np.zeros(N, np.bool_)
    for t in range(N):
        done = False
        for i in range(n):
            if done:
                break
            for j in range(i + 1, n):
                if done:
                    break
                for l in range(j + 1, n):
                    if done:
                        break
                    for m in range(n):
                        acc = 0
                        for a in range(n):
                            acc += C[t, i, j, a] * C[t, a, l, m] % q
                            acc += C[t, j, l, a] * C[t, a, i, m] % q
                            acc += C[t, l, i, a] * C[t, a, j, m] % q
                        if acc % q != 0:
                            bad[t] = True
                            done = True
                            break
    return bad


def jacobi_defect_numpy(C, q):
    T = np.einsum("tija,talm->tijlm", C, C) % q
    J = (T + T.transpose(0, 2, 3, 1, 4) + T.transpose(0, 3, 1, 2, 4)) % q
    return J.reshape(len(C), -1).any(axis=1)


def jacobi_defect(C, q):
    """Boolean mask: which of the stacked structure tensors ``C[t]`` over Z/q fail Jacobi."""
    C = np.asarray(C)
    if USE_NUMBA and q < INT64_PRIME_LIMIT:
        return jacobi_defect_jit(np.ascontiguousarray(C, dtype=np.int64), np.int64(q))
    return jacobi_defect_numpy(C.astype(object) if q >= INT64_PRIME_LIMIT else C, q)
