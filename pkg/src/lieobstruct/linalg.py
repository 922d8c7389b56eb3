"""Dense exact linear algebra over F_p on top of the row-reduction kernel."""
from __future__ import annotations

import numpy as np

from ._kernels import rref

__all__ = ["rref", "rank", "nullspace", "solve", "row_basis", "reduce_modulo", "complement_reps", "inverse"]


def _as_matrix(M, ncols: int | None = None) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim == 1:
        M = M[None, :]
    if M.size == 0 and ncols is not None:
        M = M.reshape(0, ncols)
    return M


def rank(M, p: int) -> int:
    M = _as_matrix(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def row_basis(M, p: int) -> np.ndarray:
    """Reduced echelon basis of the row space."""
    M = _as_matrix(M)
    if M.shape[0] == 0:
        return M.astype(np.int64)
    R, piv = rref(M, p)
    return R[: len(piv)]


def nullspace(M, p: int) -> np.ndarray:
    """Basis of {x : M x = 0}, one row per free column, in column order.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns, so the basis is itself in reduced form with respect to the
    free variables.
    """
    M = _as_matrix(M)
    rows, cols = M.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(M, p)
    piv = [int(c) for c in piv]
    free = [c for c in range(cols) if c not in set(piv)]
    N = np.zeros((len(free), cols), dtype=R.dtype)
    for t, f in enumerate(free):
        N[t, f] = 1
        for r, c in enumerate(piv):
            N[t, c] = (-R[r, f]) % p
    return N


def solve(M, b, p: int) -> np.ndarray | None:
    """A solution of M x = b, or None if inconsistent.

    Free variables are set to zero, so the answer is the unique solution
    supported on the pivot columns of ``M``.
    """
    M = _as_matrix(M)
    b = np.asarray(b).reshape(-1)
    rows, cols = M.shape
    if rows != b.shape[0]:
        raise ValueError(f"right-hand side has length {b.shape[0]}, expected {rows}")
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.hstack([np.asarray(M, dtype=b.dtype if b.dtype == object else np.int64),
                     b.reshape(-1, 1)])
    R, piv = rref(aug, p)
    if len(piv) and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=R.dtype)
    for r, c in enumerate(piv):
        x[int(c)] = R[r, cols]
    return x


def reduce_modulo(v, basis_rref: np.ndarray, pivots, p: int) -> np.ndarray:
    """Normal form of ``v`` modulo the row space of a reduced echelon basis."""
    v = np.array(v, copy=True) % p
    for r, c in enumerate(pivots):
        f = v[c]
        if f:
            v = (v - f * basis_rref[r]) % p
    return v


def complement_reps(kernel: np.ndarray, image: np.ndarray, p: int) -> np.ndarray:
    """Representatives of kernel / image.

    Kernel vectors are taken in order; each one is reduced modulo the image
    plus the representatives already chosen and kept if it survives.  The
    stored representative is the normal form modulo the image alone.
    """
    ncols = kernel.shape[1] if kernel.ndim == 2 else image.shape[1]
    image = _as_matrix(image, ncols)
    B = row_basis(image, p) if image.shape[0] else np.zeros((0, ncols), dtype=np.int64)
    B_piv = [int(np.flatnonzero(row)[0]) for row in B]
    reps = []
    span = B
    span_rank = B.shape[0]
    for z in kernel:
        nf = reduce_modulo(z, B, B_piv, p)
        if not nf.any():
            continue
        trial = np.vstack([span, nf[None, :]])
        r = rank(trial, p)
        if r > span_rank:
            reps.append(nf)
            span, span_rank = trial, r
    if not reps:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.array(reps)


def inverse(M, p: int) -> np.ndarray:
    M = _as_matrix(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError(f"inverse of non-square matrix {M.shape}")
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    R, piv = rref(np.hstack([M % p, np.eye(n, dtype=np.int64)]), p)
    if len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular mod p")
    return R[:, n:]
