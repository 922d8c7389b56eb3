"""Chevalley-Eilenberg cochains of a Lie algebra over F_p with adjoint or
trivial coefficients: differentials, cohomology, coboundary solving.

Coordinates of a degree-s cochain follow the basis
``(e_{i1} ^ ... ^ e_{is})* (x) e_m`` with ``i1 < ... < is`` in lexicographic
order of the tuple and the value index ``m`` fastest.  With trivial
coefficients the value index is dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from . import _kernels, linalg
from .algebra import LieAlgebra
from .errors import GuardError, InputError

COHOMOLOGY_MAX_RANK = 16
COEFFS = ("ad", "trivial")


def _check_coeffs(coeffs: str) -> bool:
    if coeffs not in COEFFS:
        raise InputError(f"coefficients must be one of {COEFFS}, got {coeffs!r}")
    return coeffs == "ad"


def cochain_dim(n: int, s: int, coeffs: str = "ad") -> int:
    if s < 0 or s > n:
        return 0
    return comb(n, s) * (n if _check_coeffs(coeffs) else 1)


def _det_mod(M: np.ndarray, p: int) -> int:
    M = np.array(M, dtype=object) % p
    size = M.shape[0]
    det = 1
    for c in range(size):
        piv = next((r for r in range(c, size) if M[r, c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            M[[c, piv]] = M[[piv, c]]
            det = -det
        det = det * M[c, c] % p
        inv = pow(int(M[c, c]), -1, p)
        for r in range(c + 1, size):
            if M[r, c]:
                M[r] = (M[r] - M[r, c] * inv * M[c]) % p
    return int(det % p)


@dataclass(frozen=True, eq=False)
class AdForm:
    """An alternating s-form on a level-1 Lie algebra with values in the
    algebra (``coeffs='ad'``) or in F_p (``coeffs='trivial'``)."""

    algebra: LieAlgebra
    degree: int
    coords: np.ndarray
    coeffs: str = "ad"

    def __post_init__(self):
        A = self.algebra
        if A.ring.k != 1:
            raise InputError("cochains live over the residue field")
        dim = cochain_dim(A.n, self.degree, self.coeffs)
        if self.degree < 0 or self.degree > A.n:
            raise InputError(f"degree {self.degree} out of range 0..{A.n}")
        coords = np.asarray(self.coords, dtype=np.int64).reshape(-1) % A.ring.p
        if coords.shape != (dim,):
            raise InputError(f"degree-{self.degree} cochain needs {dim} coordinates, got {coords.shape[0]}")
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, A: LieAlgebra, degree: int, coeffs: str = "ad") -> "AdForm":
        return cls(A, degree, np.zeros(cochain_dim(A.n, degree, coeffs), dtype=np.int64), coeffs)

    @classmethod
    def from_values(cls, A: LieAlgebra, degree: int, values: dict, coeffs: str = "ad") -> "AdForm":
        """Build from ``{(i1, ..., is): value}`` on sorted index tuples."""
        width = A.n if coeffs == "ad" else 1
        index = {t: r for r, t in enumerate(combinations(range(A.n), degree))}
        coords = np.zeros(len(index) * width, dtype=np.int64)
        for key, val in values.items():
            key = tuple(key)
            if list(key) != sorted(set(key)):
                raise InputError(f"form values need strictly increasing indices, got {key}")
            coords[index[key] * width : (index[key] + 1) * width] = np.asarray(val).reshape(width)
        return cls(A, degree, coords, coeffs)

    @property
    def p(self) -> int:
        return self.algebra.ring.p

    @property
    def width(self) -> int:
        return self.algebra.n if self.coeffs == "ad" else 1

    def values(self) -> np.ndarray:
        """Coordinates reshaped to (C(n, s), width)."""
        return self.coords.reshape(-1, self.width)

    def _compatible(self, other: "AdForm"):
        if not isinstance(other, AdForm):
            return NotImplemented
        if (other.algebra is not self.algebra and other.algebra != self.algebra) or \
                other.degree != self.degree or other.coeffs != self.coeffs:
            raise InputError("cochains of different algebras, degrees or coefficients")
        return other

    def __add__(self, other):
        if self._compatible(other) is NotImplemented:
            return NotImplemented
        return AdForm(self.algebra, self.degree, self.coords + other.coords, self.coeffs)

    def __sub__(self, other):
        if self._compatible(other) is NotImplemented:
            return NotImplemented
        return AdForm(self.algebra, self.degree, self.coords - other.coords, self.coeffs)

    def __neg__(self):
        return AdForm(self.algebra, self.degree, -self.coords, self.coeffs)

    def __mul__(self, scalar: int):
        return AdForm(self.algebra, self.degree, self.coords * int(scalar), self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, AdForm):
            return NotImplemented
        return (self.degree == other.degree and self.coeffs == other.coeffs
                and self.algebra == other.algebra and np.array_equal(self.coords, other.coords))

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.coords.any()

    def __call__(self, *args) -> np.ndarray:
        return evaluate_form(self, *args)


def evaluate_form(omega: AdForm, *args) -> np.ndarray:
    """Alternating multilinear extension of ``omega`` evaluated on F_p vectors."""
    s, n, p = omega.degree, omega.algebra.n, omega.p
    if len(args) != s:
        raise InputError(f"degree-{s} form takes {s} arguments, got {len(args)}")
    vals = omega.values()
    if s == 0:
        return vals[0] % p
    X = np.array([np.asarray(a, dtype=np.int64).reshape(n) for a in args]) % p
    out = np.zeros(omega.width, dtype=object)
    for r, I in enumerate(combinations(range(n), s)):
        if vals[r].any():
            det = _det_mod(X[:, I], p)
            if det:
                out = out + det * vals[r].astype(object)
    return (out % p).astype(np.int64)


@lru_cache(maxsize=256)
def _differential_cached(A: LieAlgebra, s: int, adjoint: bool) -> np.ndarray:
    D = _kernels.differential(A.residue_constants, s, A.ring.p, adjoint)
    D = np.asarray(D, dtype=np.int64)
    D.setflags(write=False)
    return D


def differential_matrix(A: LieAlgebra, s: int, coeffs: str = "ad") -> np.ndarray:
    """Matrix of d: C^s -> C^(s+1); rows index the target basis, columns the source."""
    adjoint = _check_coeffs(coeffs)
    if A.ring.k != 1:
        raise InputError("differential computed over residue field only")
    if s < 0 or s > A.n:
        raise InputError(f"degree {s} out of range 0..{A.n}")
    if s == A.n:
        return np.zeros((0, cochain_dim(A.n, s, coeffs)), dtype=np.int64)
    return _differential_cached(A, s, adjoint)


def differential(omega: AdForm) -> AdForm:
    D = differential_matrix(omega.algebra, omega.degree, omega.coeffs)
    if omega.degree == omega.algebra.n:
        raise InputError("no cochains above the top degree")
    return AdForm(omega.algebra, omega.degree + 1, D @ omega.coords, omega.coeffs)


@dataclass(frozen=True)
class DegreeCohomology:
    degree: int
    cochains: int
    cocycles: int
    coboundaries: int
    representatives: np.ndarray = field(repr=False)
    image_basis: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.cocycles - self.coboundaries


@dataclass(frozen=True)
class CohomologyReport:
    algebra: LieAlgebra
    coeffs: str
    degrees: tuple[DegreeCohomology, ...]

    @property
    def dims(self) -> list[int]:
        return [d.dim for d in self.degrees]

    def __getitem__(self, s: int) -> DegreeCohomology:
        return self.degrees[s]

    def representatives(self, s: int) -> list[AdForm]:
        return [AdForm(self.algebra, s, r, self.coeffs) for r in self.degrees[s].representatives]

    def class_coordinates(self, omega: AdForm) -> np.ndarray:
        """Coordinates of the class of a cocycle in the representative basis."""
        s = omega.degree
        deg = self.degrees[s]
        p = self.algebra.ring.p
        stack = np.vstack([deg.image_basis, deg.representatives]).reshape(-1, omega.coords.shape[0])
        x = linalg.solve(stack.T, omega.coords, p)
        if x is None:
            raise InputError(f"degree-{s} cochain is not a cocycle")
        return np.asarray(x[deg.image_basis.shape[0]:], dtype=np.int64)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d.degree * d.dim for d in self.degrees)


def _guard(A: LieAlgebra):
    if A.ring.k != 1:
        raise InputError("cohomology computed over residue field only")
    if A.n > COHOMOLOGY_MAX_RANK:
        raise GuardError(f"dense cohomology limited to rank <= {COHOMOLOGY_MAX_RANK}, got {A.n}")


@lru_cache(maxsize=64)
def _cohomology_cached(A: LieAlgebra, coeffs: str) -> CohomologyReport:
    p, n = A.ring.p, A.n
    degrees = []
    for s in range(n + 1):
        dim = cochain_dim(n, s, coeffs)
        D = differential_matrix(A, s, coeffs)
        Z = linalg.nullspace(D, p) if D.shape[0] else np.eye(dim, dtype=np.int64)
        if s == 0:
            B = np.zeros((0, dim), dtype=np.int64)
        else:
            B = linalg.row_basis(differential_matrix(A, s - 1, coeffs).T, p).reshape(-1, dim)
        reps = linalg.complement_reps(Z, B, p).reshape(-1, dim)
        for arr in (reps, B):
            arr.setflags(write=False)
        degrees.append(DegreeCohomology(s, dim, Z.shape[0], B.shape[0], reps, B))
    return CohomologyReport(A, coeffs, tuple(degrees))


def cohomology(A: LieAlgebra, coeffs: str = "ad") -> CohomologyReport:
    _check_coeffs(coeffs)
    _guard(A)
    return _cohomology_cached(A, coeffs)


def is_coboundary(A: LieAlgebra, omega: AdForm) -> AdForm | None:
    """A cochain eta with d(eta) = omega, or None when omega is not exact.

    The solution has zero entries on the non-pivot columns of the
    differential, which makes the choice deterministic.
    """
    if omega.algebra != A:
        raise InputError("cochain belongs to a different algebra")
    s = omega.degree
    if s < 1:
        raise InputError("coboundaries start in degree 1")
    D = differential_matrix(A, s - 1, omega.coeffs)
    x = linalg.solve(D, omega.coords, A.ring.p)
    if x is None:
        return None
    return AdForm(A, s - 1, np.asarray(x, dtype=np.int64), omega.coeffs)
