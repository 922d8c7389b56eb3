"""Brute-force enumerators for tiny algebras (n <= 3, p in {2, 3}).

Nothing here touches row reduction or the cochain differential matrices:
lifts are found by trying every alternating correction and checking Jacobi
directly, equivalence classes by trying every linear map phi, and cohomology
dimensions by counting cocycles and coboundaries vector by vector.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from ._kernels import jacobi_defect
from .algebra import LieAlgebra, reduce_to_residue
from .errors import BudgetExceeded, InputError
from .ring import Family, RingSpec

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class OracleBudget:
    max_candidates: int = DEFAULT_BUDGET
    max_maps: int = DEFAULT_BUDGET

    @classmethod
    def from_env(cls) -> "OracleBudget":
        raw = os.environ.get("LIEOBSTRUCT_BUDGET")
        if not raw:
            return cls()
        value = int(raw)
        return cls(value, value)

    def check(self, count: int, limit: int, what: str):
        if count > limit:
            raise BudgetExceeded(f"{what}: {count} candidates exceed budget {limit}")


def _budget(budget: OracleBudget | None) -> OracleBudget:
    return budget if budget is not None else OracleBudget.from_env()


def _all_vectors(p: int, dim: int) -> np.ndarray:
    """Every vector of F_p^dim, one per row, in lexicographic order."""
    if dim == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * dim, dtype=np.int64)
    return grids.reshape(dim, -1).T.copy()


def _jacobi_fails(ring: RingSpec, C: np.ndarray) -> np.ndarray:
    """Per-candidate Jacobi failure for a stack of structure tensors over ``ring``."""
    if ring.family is Family.PADIC:
        return jacobi_defect(C, ring.order)
    # power series: explicit truncated products on every triple i < j < l
    N, n = C.shape[0], C.shape[1]
    bad = np.zeros(N, dtype=bool)
    for t in range(N):
        c = C[t]
        for i, j, l in combinations(range(n), 3):
            acc = np.zeros((n, ring.k), dtype=np.int64)
            for (u, v, w) in ((i, j, l), (j, l, i), (l, i, j)):
                for a in range(n):
                    for m in range(n):
                        acc[m] += np.convolve(c[u, v, a], c[a, w, m])[: ring.k]
            if (acc % ring.p).any():
                bad[t] = True
                break
    return bad


def _naive_lift(L: LieAlgebra) -> tuple[RingSpec, np.ndarray]:
    ring = L.ring.up()
    n = L.n
    c = ring.zeros((n, n, n))
    for i, j in combinations(range(n), 2):
        if ring.family is Family.PADIC:
            c[i, j] = L.c[i, j]
            c[j, i] = (-L.c[i, j]) % ring.order
        else:
            c[i, j, :, : L.ring.k] = L.c[i, j]
            c[j, i] = (-c[i, j]) % ring.p
    return ring, c


def _pi_power(ring: RingSpec, residues: np.ndarray) -> np.ndarray:
    """Embed F_p values as multiples of pi^(k-1) in ring layout."""
    if ring.family is Family.PADIC:
        return residues * ring.p ** (ring.k - 1)
    out = np.zeros(residues.shape + (ring.k,), dtype=np.int64)
    out[..., ring.k - 1] = residues
    return out


def _canon(ring: RingSpec, a: np.ndarray) -> np.ndarray:
    return a % (ring.order if ring.family is Family.PADIC else ring.p)


def enumerate_lifts_bruteforce(L: LieAlgebra, budget: OracleBudget | None = None) -> list[np.ndarray]:
    """Every structure tensor over R_{k+1} that reduces to L and satisfies Jacobi.

    Candidates are the canonical lift plus pi^k times each alternating F_p
    correction; there are p^(n * C(n,2)) of them.
    """
    budget = _budget(budget)
    n, p = L.n, L.ring.p
    pairs = list(combinations(range(n), 2))
    nvars = n * len(pairs)
    budget.check(p**nvars, budget.max_candidates, "lift enumeration")
    ring, base = _naive_lift(L)
    out = []
    chunk = 1 << 14
    vecs = _all_vectors(p, nvars)
    for start in range(0, len(vecs), chunk):
        V = vecs[start : start + chunk].reshape(-1, len(pairs), n)
        T = np.zeros((len(V), n, n, n), dtype=np.int64)
        for r, (i, j) in enumerate(pairs):
            T[:, i, j] = V[:, r]
            T[:, j, i] = -V[:, r]
        C = _canon(ring, base[None] + _pi_power(ring, T % p))
        ok = ~_jacobi_fails(ring, C)
        out.extend(C[ok])
    return out


def _ring_matmul_batch(ring: RingSpec, M: np.ndarray, c: np.ndarray, spec: str) -> np.ndarray:
    """Batched bilinear contraction in R_{k+1}, product by product."""
    if ring.family is Family.PADIC:
        return np.einsum(spec, M, c) % ring.order
    k = ring.k
    out = None
    for u in range(k):
        for v in range(k - u):
            term = np.einsum(spec, M[..., u], c[..., v])
            if out is None:
                out = np.zeros(term.shape + (k,), dtype=np.int64)
            out[..., u + v] += term
    return out % ring.p


def partition_by_psi_equivalence(lifts: list[np.ndarray], ring: RingSpec,
                                 budget: OracleBudget | None = None) -> list[list[int]]:
    """Group lifts (structure tensors over ``ring``) into classes under
    identity-inducing isomorphisms Id + pi^k phi, trying every phi in M_n(F_p).

    One member per class is transported along every Psi; the transported bracket
    Psi[Psi^-1 x, Psi^-1 y] is looked up among the lifts.
    """
    budget = _budget(budget)
    if not lifts:
        return []
    n, p = lifts[0].shape[0], ring.p
    budget.check(p ** (n * n), budget.max_maps, "linear map enumeration")
    lookup = {np.ascontiguousarray(c).tobytes(): idx for idx, c in enumerate(lifts)}
    phis = _all_vectors(p, n * n).reshape(-1, n, n)
    eye = np.eye(n, dtype=np.int64)
    if ring.family is not Family.PADIC:
        eye = np.concatenate([eye[..., None], np.zeros((n, n, ring.k - 1), dtype=np.int64)], axis=-1)
    Psi = _canon(ring, eye[None] + _pi_power(ring, phis))
    PsiInv = _canon(ring, eye[None] - _pi_power(ring, phis))
    # the maps Id + pi^k phi form a group, so a class is the orbit of any member
    label = [-1] * len(lifts)
    classes: list[list[int]] = []
    for idx, c in enumerate(lifts):
        if label[idx] >= 0:
            continue
        cb = np.broadcast_to(c, (len(phis),) + c.shape)
        t = _ring_matmul_batch(ring, PsiInv, cb, "zai,zabm->zibm")
        t = _ring_matmul_batch(ring, PsiInv, t, "zbj,zibm->zijm")
        t = _ring_matmul_batch(ring, Psi, t, "ztm,zijm->zijt")
        orbit = set()
        for z in range(len(phis)):
            other = lookup.get(np.ascontiguousarray(t[z]).tobytes())
            if other is None:
                raise InputError("transported bracket is not among the given lifts")
            orbit.add(other)
        for other in orbit:
            if label[other] >= 0:
                raise InputError("orbits overlap; the lifts are not closed under the action")
            label[other] = len(classes)
        classes.append(sorted(orbit))
    return sorted(classes)


# ---------------------------------------------------------------------------
# cohomology by counting

def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _dense_forms(vecs: np.ndarray, n: int, s: int, width: int) -> np.ndarray:
    """Coordinate vectors -> dense alternating tensors of shape (N,) + (n,)*s + (width,)."""
    N = len(vecs)
    W = np.zeros((N,) + (n,) * s + (width,), dtype=np.int64)
    V = vecs.reshape(N, -1, width)
    for r, I in enumerate(combinations(range(n), s)):
        for perm in permutations(range(s)):
            idx = tuple(I[q] for q in perm)
            W[(slice(None),) + idx] += _perm_sign(perm) * V[:, r]
    return W


def _apply_d(W: np.ndarray, c: np.ndarray, s: int, adjoint: bool, p: int) -> np.ndarray:
    """Evaluate d(omega) on every sorted (s+1)-tuple of basis vectors, straight from the formula."""
    N = W.shape[0]
    n = c.shape[0]
    rows = []
    for X in combinations(range(n), s + 1):
        val = np.zeros((N, W.shape[-1]), dtype=np.int64)
        for i in range(s + 1):
            rest = X[:i] + X[i + 1 :]
            w = W[(slice(None),) + rest]
            if adjoint:
                # [x_i, omega(rest)] = sum_b omega(rest)_b c[x_i, b, :]
                val += (-1) ** i * (w @ c[X[i]])
        for i, j in combinations(range(s + 1), 2):
            rest = tuple(X[t] for t in range(s + 1) if t not in (i, j))
            # omega([x_i, x_j], rest) = sum_a c[x_i, x_j, a] omega(e_a, rest)
            for a in np.flatnonzero(c[X[i], X[j]]):
                val += (-1) ** (i + j) * c[X[i], X[j], a] * W[(slice(None), a) + rest]
        rows.append(val % p)
    if not rows:
        return np.zeros((N, 0), dtype=np.int64)
    return np.stack(rows, axis=1).reshape(N, -1)


def cohomology_bruteforce(A: LieAlgebra, s: int, coeffs: str = "ad",
                          budget: OracleBudget | None = None) -> int:
    """dim H^s by enumerating every s-cochain and every (s-1)-cochain."""
    budget = _budget(budget)
    if A.ring.k != 1:
        A = reduce_to_residue(A)
    n, p = A.n, A.ring.p
    if s < 0 or s > n:
        return 0
    adjoint = coeffs == "ad"
    width = n if adjoint else 1
    dim_s = math.comb(n, s) * width
    dim_prev = math.comb(n, s - 1) * width if s >= 1 else 0
    budget.check(p**dim_s, budget.max_candidates, f"degree-{s} cochains")
    budget.check(p**dim_prev, budget.max_candidates, f"degree-{s - 1} cochains")
    c = np.asarray(A.residue_constants)

    vecs = _all_vectors(p, dim_s)
    if s < n:
        dw = _apply_d(_dense_forms(vecs, n, s, width), c, s, adjoint, p)
        kernel = int((~dw.any(axis=1)).sum())
    else:
        kernel = len(vecs)
    if s >= 1:
        prev = _all_vectors(p, dim_prev)
        de = _apply_d(_dense_forms(prev, n, s - 1, width), c, s - 1, adjoint, p)
        image = len({row.tobytes() for row in de})
    else:
        image = 1
    return _log_exact(kernel, p) - _log_exact(image, p)


def _log_exact(count: int, p: int) -> int:
    e = 0
    while count > 1:
        count, r = divmod(count, p)
        if r:
            raise ArithmeticError("subspace size is not a power of p")
        e += 1
    return e
