"""Structure-constant Lie and bracket algebras over R_k, and the structural
predicates used for psl_3(F_3): center, perfectness, simplicity, Killing form,
unimodularity, invariant symmetric 3-forms.

Structure constants are stored as ``c[i, j, m]`` with
``[e_i, e_j] = sum_m c[i, j, m] e_m`` in the ring layout of
:class:`~lieobstruct.ring.RingSpec`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement, product
from typing import NamedTuple

import numpy as np

from . import linalg
from ._kernels import ideal_closure_dims
from .errors import GuardError, InputError, NotAlternatingError
from .ring import Family, RingSpec

SIMPLICITY_GUARD = 10**7
SYMMETRIC_FORM_MAX_RANK = 12


def _cyclic(T: np.ndarray, ring: RingSpec):
    """The two cyclic rotations of the first three axes of a rank-4 base tensor."""
    tail = tuple(range(3, T.ndim))
    return T.transpose((2, 0, 1) + tail), T.transpose((1, 2, 0) + tail)


@dataclass(frozen=True, eq=False)
class BracketAlgebra:
    """Free R_k-module with an alternating bilinear bracket; Jacobi not required."""

    ring: RingSpec
    c: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        c = self.ring.canonical(self.c)
        base = self.ring.base_shape(c)
        if len(base) != 3 or len(set(base)) != 1:
            raise InputError(f"structure tensor must have shape (n, n, n), got {base}")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    def __eq__(self, other):
        if not isinstance(other, BracketAlgebra):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash((self.ring, self.c.shape, self.c.tobytes()))

    def __repr__(self):
        kind = type(self).__name__
        label = f" {self.name}" if self.name else ""
        return f"<{kind}{label} rank {self.n} over {self.ring.label}>"

    @cached_property
    def residue_constants(self) -> np.ndarray:
        """Structure constants reduced to F_p, int64 array (n, n, n)."""
        out = self.ring.residue_of(self.c)
        out.setflags(write=False)
        return out

    def jacobiator_tensor(self) -> np.ndarray:
        """J[i, j, l] = [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j] over R_k."""
        T = self.ring.contract("ija,alm->ijlm", self.c, self.c)
        T1, T2 = _cyclic(T, self.ring)
        return self.ring.canonical(T + T1 + T2)

    def satisfies_jacobi(self) -> bool:
        return self.ring.is_zero(self.jacobiator_tensor())

    def vector(self, x) -> np.ndarray:
        """Coerce a coordinate vector into the ring layout."""
        x = np.asarray(x)
        if self.ring.family is Family.POWER_SERIES and x.ndim == 1:
            x = self.ring.from_integers(x)
        else:
            x = self.ring.canonical(x)
        if self.ring.base_shape(x) != (self.n,):
            raise InputError(f"coordinate vector of length {self.ring.base_shape(x)} for rank {self.n}")
        return x

    def bracket(self, x, y) -> np.ndarray:
        x, y = self.vector(x), self.vector(y)
        t = self.ring.contract("i,ijm->jm", x, self.c)
        return self.ring.contract("j,jm->m", y, t)

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        e[i] = 1
        return self.vector(e)


class LieAlgebra(BracketAlgebra):
    """A bracket algebra whose bracket satisfies the Jacobi identity."""


def validate(c, ring: RingSpec, name: str = "") -> BracketAlgebra:
    """Classify a structure tensor as a LieAlgebra or a BracketAlgebra.

    Raises NotAlternatingError at the first pair (i, j) with c[i,j] != -c[j,i]
    or c[i,i] != 0.
    """
    c = ring.canonical(c)
    base = ring.base_shape(c)
    if len(base) != 3 or len(set(base)) != 1:
        raise InputError(f"structure tensor must have shape (n, n, n), got {base}")
    n = base[0]
    for i in range(n):
        for j in range(i, n):
            if ring.canonical(c[i, j] + c[j, i]).any():
                raise NotAlternatingError(f"not alternating at ({i},{j})")
    A = BracketAlgebra(ring, c, name)
    if A.satisfies_jacobi():
        return LieAlgebra(ring, A.c, name)
    return A


def bracket(A: BracketAlgebra, x, y) -> np.ndarray:
    return A.bracket(x, y)


def reduce_algebra(A: BracketAlgebra) -> BracketAlgebra:
    """Entrywise reduction R_k -> R_{k-1}."""
    c = A.ring.reduce_level(A.c)
    target = A.ring.down()
    if isinstance(A, LieAlgebra):
        return LieAlgebra(target, c, A.name)
    return validate(c, target, A.name)


def reduce_to_residue(A: BracketAlgebra) -> BracketAlgebra:
    target = A.ring.residue
    c = target.from_integers(A.residue_constants)
    if isinstance(A, LieAlgebra):
        return LieAlgebra(target, c, A.name)
    return validate(c, target, A.name)


def from_residue(fp: np.ndarray, ring: RingSpec, name: str = "") -> LieAlgebra:
    """Level-1 algebra from an F_p tensor; Jacobi is checked."""
    A = validate(ring.residue.from_integers(np.asarray(fp) % ring.p), ring.residue, name)
    if not isinstance(A, LieAlgebra):
        raise InputError(f"{name or 'algebra'} fails the Jacobi identity")
    return A


# ---------------------------------------------------------------------------
# residue-field structure

def _require_field(A: BracketAlgebra, what: str):
    if A.ring.k != 1:
        raise InputError(f"{what} computed over residue field only")


def adjoint_matrices(A: BracketAlgebra) -> np.ndarray:
    """ad[i] is the matrix of ad(e_i): ad[i, m, j] = c[i, j, m] (mod p)."""
    return np.ascontiguousarray(A.residue_constants.transpose(0, 2, 1))


def center(A: LieAlgebra) -> np.ndarray:
    """Basis (rows) of {v : [v, e_i] = 0 for all i}."""
    _require_field(A, "center")
    n = A.n
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    fp = A.residue_constants
    # row (i, m), column j: coefficient of e_m in [e_j, e_i]
    M = fp.transpose(1, 2, 0).reshape(n * n, n)
    return linalg.nullspace(M, A.ring.p)


def quotient_by_center(A: LieAlgebra) -> LieAlgebra:
    """A / Z(A) in the basis of those e_j not absorbed by Z(A), chosen greedily in order."""
    _require_field(A, "quotient by center")
    p, n = A.ring.p, A.n
    Z = center(A)
    d = Z.shape[0]
    name = f"{A.name}/Z" if A.name else ""
    if d == 0:
        return LieAlgebra(A.ring, A.c, A.name)
    if d == n:
        return LieAlgebra(A.ring, A.ring.zeros((0, 0, 0)), name)
    chosen: list[int] = []
    span = Z
    r = linalg.rank(span, p)
    for j in range(n):
        e = np.zeros((1, n), dtype=np.int64)
        e[0, j] = 1
        trial = np.vstack([span, e])
        rt = linalg.rank(trial, p)
        if rt > r:
            chosen.append(j)
            span, r = trial, rt
    P = np.vstack([np.eye(n, dtype=np.int64)[chosen], Z])
    # coordinates of v in the basis (chosen e_j, Z rows) are Pinv^T v
    coord = linalg.inverse(P.T, p)
    fp = A.residue_constants
    q = len(chosen)
    out = np.zeros((q, q, q), dtype=np.int64)
    for a, ja in enumerate(chosen):
        for b, jb in enumerate(chosen):
            out[a, b] = (coord @ fp[ja, jb])[:q] % p
    return from_residue(out, A.ring, name)


def is_perfect(A: LieAlgebra) -> bool:
    _require_field(A, "perfectness")
    n = A.n
    if n == 0:
        return True
    fp = A.residue_constants
    rows = np.array([fp[i, j] for i, j in combinations(range(n), 2)]).reshape(-1, n)
    return linalg.rank(rows, A.ring.p) == n


def _projective_points(n: int, p: int, lead: int, chunk: int = 1 << 16):
    """Vectors with first nonzero coordinate 1 at position ``lead``, in chunks."""
    tail = n - lead - 1
    total = p**tail
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        V = np.zeros((len(idx), n), dtype=np.int64)
        V[:, lead] = 1
        for t in range(tail):
            V[:, n - 1 - t] = idx % p
            idx = idx // p
        yield V


def is_simple(A: LieAlgebra, guard: int = SIMPLICITY_GUARD) -> bool:
    """Nonabelian, and every nonzero vector generates the whole algebra as an ideal."""
    _require_field(A, "simplicity")
    p, n = A.ring.p, A.n
    if n == 0 or not A.residue_constants.any():
        return False
    if p**n > guard:
        raise GuardError(f"simplicity enumeration needs p^n = {p}^{n} > {guard} vectors")
    ad = adjoint_matrices(A)
    for lead in range(n):
        for V in _projective_points(n, p, lead):
            if (ideal_closure_dims(ad, V, p) < n).any():
                return False
    return True


def killing_form(A: LieAlgebra) -> np.ndarray:
    """K[i, j] = trace(ad e_i o ad e_j) mod p."""
    _require_field(A, "Killing form")
    fp = A.residue_constants
    return np.einsum("itm,jmt->ij", fp, fp) % A.ring.p


def is_killing_zero(A: LieAlgebra) -> bool:
    return not killing_form(A).any()


def is_unimodular(A: LieAlgebra) -> bool:
    _require_field(A, "unimodularity")
    return not (np.einsum("imm->i", A.residue_constants) % A.ring.p).any()


class FormSpace(NamedTuple):
    dimension: int
    basis: np.ndarray
    monomials: list[tuple[int, int, int]]


def invariance_system(A: LieAlgebra) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Linear conditions on symmetric trilinear forms for ad-invariance.

    Unknowns are the values on sorted triples a <= b <= c; one row per
    (w, x <= y <= z) expressing
    w([w,x],y,z) + w(x,[w,y],z) + w(x,y,[w,z]) = 0.
    """
    _require_field(A, "invariant forms")
    n, p = A.n, A.ring.p
    if n > SYMMETRIC_FORM_MAX_RANK:
        raise GuardError(f"invariant 3-forms limited to rank <= {SYMMETRIC_FORM_MAX_RANK}, got {n}")
    fp = A.residue_constants
    monos = list(combinations_with_replacement(range(n), 3))
    index = {m: t for t, m in enumerate(monos)}
    M = np.zeros((n * len(monos), len(monos)), dtype=np.int64)
    row = 0
    for w in range(n):
        for trip in monos:
            for slot in range(3):
                others = trip[:slot] + trip[slot + 1 :]
                for a in np.flatnonzero(fp[w, trip[slot]]):
                    col = index[tuple(sorted(others + (int(a),)))]
                    M[row, col] += fp[w, trip[slot], a]
            row += 1
    return M % p, monos


def invariant_symmetric_3forms(A: LieAlgebra) -> FormSpace:
    M, monos = invariance_system(A)
    basis = linalg.nullspace(M, A.ring.p)
    return FormSpace(basis.shape[0], basis, monos)


FORM_SYMMETRIES = ("symmetric", "alternating", "any")


def invariant_trilinear_forms(A: LieAlgebra, symmetry: str = "any") -> FormSpace:
    """Invariant trilinear forms on the full n^3 coordinate space.

    ``symmetry`` adds the linear conditions for fully symmetric or
    alternating forms (antisymmetric in every pair of slots, which is the
    same as alternating for odd p); ``any`` imposes none.  Basis rows are flattened
    (n, n, n) value tensors; ``monomials`` lists every ordered triple.
    """
    _require_field(A, "invariant forms")
    if symmetry not in FORM_SYMMETRIES:
        raise InputError(f"symmetry must be one of {FORM_SYMMETRIES}, got {symmetry!r}")
    n, p = A.n, A.ring.p
    if n > SYMMETRIC_FORM_MAX_RANK:
        raise GuardError(f"invariant 3-forms limited to rank <= {SYMMETRIC_FORM_MAX_RANK}, got {n}")
    fp = A.residue_constants
    eye = np.eye(n, dtype=np.int64)
    blocks = []
    for w in range(n):
        ad = fp[w].T  # ad[m, x] = c[w, x, m]
        # omega(ad x, y, z) + omega(x, ad y, z) + omega(x, y, ad z), as a map on vec(omega)
        blocks.append(np.einsum("ax,by,cz->xyzabc", ad, eye, eye).reshape(n**3, n**3)
                      + np.einsum("ax,by,cz->xyzabc", eye, ad, eye).reshape(n**3, n**3)
                      + np.einsum("ax,by,cz->xyzabc", eye, eye, ad).reshape(n**3, n**3))
    idx = np.arange(n**3).reshape(n, n, n)
    sign = 1 if symmetry == "symmetric" else -1
    if symmetry != "any":
        for perm in ((1, 0, 2), (0, 2, 1)):
            S = np.zeros((n**3, n**3), dtype=np.int64)
            S[idx.reshape(-1), idx.reshape(-1)] += 1
            S[idx.reshape(-1), idx.transpose(perm).reshape(-1)] -= sign
            blocks.append(S)
    M = np.vstack(blocks) % p
    basis = linalg.nullspace(M, p)
    return FormSpace(basis.shape[0], basis, [tuple(t) for t in np.ndindex(n, n, n)])


# ---------------------------------------------------------------------------
# catalog

def abelian_constants(n: int) -> np.ndarray:
    return np.zeros((n, n, n), dtype=np.int64)


def heisenberg_constants(n: int = 3) -> np.ndarray:
    """[e_i, e_{m+i}] = e_{2m} for i < m, with n = 2m + 1."""
    if n < 3 or n % 2 == 0:
        raise InputError(f"heisenberg algebra needs odd rank >= 3, got {n}")
    m = (n - 1) // 2
    c = np.zeros((n, n, n), dtype=np.int64)
    for i in range(m):
        c[i, m + i, n - 1] = 1
        c[m + i, i, n - 1] = -1
    return c


def _matrix_algebra_constants(basis: list[np.ndarray], coords) -> np.ndarray:
    d = len(basis)
    c = np.zeros((d, d, d), dtype=np.int64)
    for i, X in enumerate(basis):
        for j, Y in enumerate(basis):
            c[i, j] = coords(X @ Y - Y @ X)
    return c


def sl_basis(n: int) -> list[np.ndarray]:
    """E_ij (i != j) row-major, then E_ii - E_{i+1,i+1}."""
    basis = []
    for i, j in product(range(n), repeat=2):
        if i != j:
            E = np.zeros((n, n), dtype=np.int64)
            E[i, j] = 1
            basis.append(E)
    for i in range(n - 1):
        H = np.zeros((n, n), dtype=np.int64)
        H[i, i], H[i + 1, i + 1] = 1, -1
        basis.append(H)
    return basis


def sl_constants(n: int) -> np.ndarray:
    if n < 2:
        raise InputError(f"sl(n) needs n >= 2, got {n}")
    off = [(i, j) for i, j in product(range(n), repeat=2) if i != j]

    def coords(X):
        diag = np.cumsum(np.diag(X))[: n - 1]
        return np.concatenate([[X[i, j] for i, j in off], diag]).astype(np.int64)

    return _matrix_algebra_constants(sl_basis(n), coords)


def triangular_constants(n: int) -> np.ndarray:
    """Strictly upper triangular n x n matrices, basis E_ij (i < j) row-major."""
    if n < 2:
        raise InputError(f"nilpotent-triangular(n) needs n >= 2, got {n}")
    pos = [(i, j) for i, j in product(range(n), repeat=2) if i < j]
    basis = []
    for i, j in pos:
        E = np.zeros((n, n), dtype=np.int64)
        E[i, j] = 1
        basis.append(E)
    return _matrix_algebra_constants(basis, lambda X: np.array([X[i, j] for i, j in pos], dtype=np.int64))


CATALOG_NAMES = ("abelian", "heisenberg", "sl", "psl", "nilpotent-triangular")
INTEGER_CATALOG = ("abelian", "heisenberg", "sl", "nilpotent-triangular")

_NAME_RE = re.compile(r"^\s*([a-z-]+)\s*(?:\(\s*(\d+)\s*\)|(\d+))?\s*$")


def parse_catalog_name(name: str, n: int | None = None) -> tuple[str, int]:
    """'sl(3)', 'sl3' or ('sl', n=3) -> ('sl', 3)."""
    m = _NAME_RE.match(name.lower())
    if not m:
        raise InputError(f"unknown catalog name {name!r}")
    base = m.group(1)
    if base == "triangular":
        base = "nilpotent-triangular"
    if base not in CATALOG_NAMES:
        raise InputError(f"unknown catalog name {name!r}; choose from {', '.join(CATALOG_NAMES)}")
    given = m.group(2) or m.group(3)
    if given is not None:
        if n is not None and int(given) != n:
            raise InputError(f"conflicting sizes in {name!r} and n={n}")
        n = int(given)
    if n is None:
        if base == "heisenberg":
            n = 3
        else:
            raise InputError(f"catalog entry {base!r} needs a size n")
    return base, n


def catalog(name: str, p: int, k: int = 1, n: int | None = None,
            family: Family | str = Family.PADIC) -> LieAlgebra:
    """Named algebra with integer structure constants reduced into R_k.

    ``psl(n)`` is sl(n)/center over the residue field and needs p | n.
    """
    base, n = parse_catalog_name(name, n)
    ring = RingSpec(Family(family), p, k)
    label = f"{base}({n})"
    if base == "psl":
        if n % p:
            raise InputError("center is trivial; psl = sl")
        if k != 1:
            raise InputError("psl(n) is defined over the residue field only; use obstruct to lift it")
        sl = catalog("sl", p, 1, n, family)
        Q = quotient_by_center(sl)
        return LieAlgebra(Q.ring, Q.c, label)
    builders = {
        "abelian": abelian_constants,
        "heisenberg": heisenberg_constants,
        "sl": sl_constants,
        "nilpotent-triangular": triangular_constants,
    }
    A = validate(ring.from_integers(builders[base](n)), ring, label)
    assert isinstance(A, LieAlgebra), label
    return A
