"""Lifting a Lie algebra over R_k to R_{k+1}.

A bracket lift puts some alternating bracket on the free R_{k+1}-module
reducing to the given one.  Its Jacobiator lands in pi^k B; dividing by pi^k
gives a 3-cocycle J on the residue algebra with adjoint coefficients.  The
algebra lifts exactly when J is a coboundary, J = d(t), and then perturbing
the bracket by pi^k * t kills the Jacobiator.  Lifts up to isomorphisms of
the form Id + pi^k * phi are a torsor under H^2(L_bar, ad).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations, product

import numpy as np

from .algebra import BracketAlgebra, LieAlgebra, reduce_to_residue
from .cochains import AdForm, CohomologyReport, cohomology, differential, is_coboundary
from .errors import InputError, InvariantViolation
from .ring import RingSpec

log = logging.getLogger(__name__)

FAMILY_ENUMERATION_GUARD = 10**5


@dataclass(frozen=True)
class BracketLift:
    base: LieAlgebra
    lifted: BracketAlgebra

    @property
    def ring(self) -> RingSpec:
        return self.lifted.ring

    @property
    def residue(self) -> LieAlgebra:
        return reduce_to_residue(self.base)


def _pair_tensor(t: AdForm) -> np.ndarray:
    """Antisymmetric (n, n, n) F_p tensor of a degree-2 adjoint cochain."""
    n = t.algebra.n
    vals = t.values()
    T = np.zeros((n, n, n), dtype=np.int64)
    for r, (i, j) in enumerate(combinations(range(n), 2)):
        T[i, j] = vals[r]
        T[j, i] = -vals[r]
    return T % t.p


def _alternate_upper(ring: RingSpec, c: np.ndarray) -> np.ndarray:
    """Keep entries with i < j and fill the rest by antisymmetry."""
    n = ring.base_shape(c)[0]
    out = ring.zeros((n, n, n))
    for i, j in combinations(range(n), 2):
        out[i, j] = c[i, j]
        out[j, i] = ring.neg(c[i, j])
    return out


def make_bracket_lift(L: LieAlgebra) -> BracketLift:
    """Canonical lift: reinterpret each [e_i, e_j] (i < j) in R_{k+1}, antisymmetrize."""
    up = L.ring.up()
    c = _alternate_upper(up, L.ring.lift(L.c))
    return BracketLift(L, BracketAlgebra(up, c, L.name))


def as_bracket_lift(base: LieAlgebra, lifted: BracketAlgebra) -> BracketLift:
    if lifted.ring != base.ring.up() or lifted.n != base.n:
        raise InputError(f"{lifted!r} is not over the ring one level above {base!r}")
    if not np.array_equal(lifted.ring.reduce_level(lifted.c), base.c):
        raise InputError("bracket does not reduce to the base algebra")
    return BracketLift(base, lifted)


def perturb_lift(bl: BracketLift, t: AdForm) -> BracketLift:
    """New bracket [x, y]' = [x, y] + psi(t(lambda x, lambda y))."""
    if t.degree != 2 or t.coeffs != "ad" or t.algebra != bl.residue:
        raise InputError("perturbation must be an adjoint 2-cochain on the residue algebra")
    ring = bl.ring
    c = ring.add(bl.lifted.c, ring.psi(_pair_tensor(t)))
    return BracketLift(bl.base, BracketAlgebra(ring, c, bl.lifted.name))


def jacobiator(bl: BracketLift, check_closed: bool = True) -> AdForm | None:
    """The Jacobiator of a bracket lift divided by pi^k, as a 3-cochain on the residue algebra.

    Returns None below rank 3, where there are no 3-cochains.
    """
    ring = bl.ring
    Lbar = bl.residue
    n = Lbar.n
    if n < 3:
        return None
    full = bl.lifted.jacobiator_tensor()
    try:
        J = ring.chi(full)
    except InputError as exc:
        raise InvariantViolation(f"Jacobiator not divisible by pi^{ring.k - 1}: broken lift") from exc
    coords = np.zeros((len(list(combinations(range(n), 3))), n), dtype=np.int64)
    for r, (i, j, l) in enumerate(combinations(range(n), 3)):
        coords[r] = J[i, j, l]
    form = AdForm(Lbar, 3, coords.reshape(-1))
    if check_closed and n >= 4 and not differential(form).is_zero():
        raise InvariantViolation("dJ != 0 for a bracket lift")
    return form


@dataclass
class ObstructionReport:
    base: LieAlgebra
    J: AdForm | None
    closed: bool
    witness: AdForm | None
    lifted_algebra: LieAlgebra | None
    class_coordinates: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    @property
    def lifts(self) -> bool:
        return self.lifted_algebra is not None


def _residue_cohomology(Lbar: LieAlgebra) -> CohomologyReport:
    return cohomology(Lbar, "ad")


def obstruction(L: LieAlgebra) -> ObstructionReport:
    """Decide whether L over R_k lifts to R_{k+1}; build a lift if it does."""
    if not isinstance(L, LieAlgebra):
        raise InputError("obstruction needs a Lie algebra")
    bl = make_bracket_lift(L)
    Lbar = bl.residue
    if L.n < 3:
        # no Jacobi triples: every bracket lift is a Lie algebra
        witness = AdForm.zero(Lbar, 2) if L.n >= 2 else None
        lifted = LieAlgebra(bl.ring, bl.lifted.c, L.name)
        return ObstructionReport(L, None, True, witness, lifted)
    J = jacobiator(bl)
    witness = is_coboundary(Lbar, J)
    if witness is None:
        coords = _residue_cohomology(Lbar).class_coordinates(J)
        return ObstructionReport(L, J, True, None, None, coords)
    new = perturb_lift(bl, witness)
    if not new.lifted.satisfies_jacobi():
        raise InvariantViolation("perturbing by the witness did not produce a Lie algebra")
    lifted = LieAlgebra(new.ring, new.lifted.c, L.name)
    return ObstructionReport(L, J, True, witness, lifted,
                             np.zeros(_residue_cohomology(Lbar)[3].dim, dtype=np.int64))


@dataclass
class LiftFamily:
    base_lift: LieAlgebra
    h2_basis: list[AdForm]
    members: dict[tuple[int, ...], LieAlgebra] | None

    @property
    def count(self) -> int:
        if not self.h2_basis:
            return 1
        return self.base_lift.ring.p ** len(self.h2_basis)


def lift_family(L: LieAlgebra, guard: int = FAMILY_ENUMERATION_GUARD) -> LiftFamily | None:
    """All lifts up to identity-inducing isomorphism, indexed by H^2 coordinates.

    Returns None when L does not lift.  Members are materialized only when
    p^dim H^2 <= guard.
    """
    rep = obstruction(L)
    if not rep.lifts:
        return None
    base = BracketLift(L, rep.lifted_algebra)
    Lbar = base.residue
    h2 = cohomology(Lbar, "ad").representatives(2) if Lbar.n >= 2 else []
    p = L.ring.p
    members = None
    if p ** len(h2) <= guard:
        members = {}
        for coeffs in product(range(p), repeat=len(h2)):
            t = AdForm.zero(Lbar, 2)
            for a, h in zip(coeffs, h2):
                t = t + a * h
            m = perturb_lift(base, t).lifted
            if not m.satisfies_jacobi():
                raise InvariantViolation(f"member {coeffs} fails Jacobi")
            members[coeffs] = LieAlgebra(m.ring, m.c, L.name)
    return LiftFamily(rep.lifted_algebra, h2, members)


# ---------------------------------------------------------------------------
# identity-inducing isomorphisms Id + psi o phi o lambda

@dataclass(frozen=True)
class PsiMap:
    """The R_{k+1}-linear map x -> x + psi(phi(lambda(x))); ``matrix[:, j]`` is the image of e_j."""

    ring: RingSpec
    matrix: np.ndarray
    phi: AdForm

    def apply(self, x) -> np.ndarray:
        return self.ring.contract("mj,j->m", self.matrix, self.ring.canonical(x))

    def inverse(self) -> "PsiMap":
        return psi_automorphism(self.ring, -self.phi)

    def compose(self, other: "PsiMap") -> np.ndarray:
        return self.ring.contract("ma,aj->mj", self.matrix, other.matrix)


def _phi_matrix(phi: AdForm) -> np.ndarray:
    """phi[m, a]: coefficient of e_m in phi(e_a)."""
    return phi.values().T.copy()


def psi_automorphism(ring: RingSpec, phi: AdForm) -> PsiMap:
    if phi.degree != 1 or phi.coeffs != "ad":
        raise InputError("phi must be an adjoint 1-cochain")
    if ring.k < 2:
        raise InputError("psi maps into pi^k B, which needs level >= 2")
    n = phi.algebra.n
    M = ring.add(ring.from_integers(np.eye(n, dtype=np.int64)), ring.psi(_phi_matrix(phi)))
    return PsiMap(ring, M, phi)


def transport(algebra: BracketAlgebra, Psi: PsiMap) -> np.ndarray:
    """Structure constants of the bracket [x, y]' = Psi[Psi^-1 x, Psi^-1 y]."""
    ring = algebra.ring
    inv = Psi.inverse().matrix
    c = ring.contract("ai,abm->ibm", inv, algebra.c)
    c = ring.contract("bj,ibm->ijm", inv, c)
    return ring.contract("tm,ijm->ijt", Psi.matrix, c)


def preserves_brackets(Psi: PsiMap, source: BracketAlgebra, target: BracketAlgebra) -> bool:
    """[Psi x, Psi y]_target == Psi([x, y]_source) on all basis pairs."""
    ring = Psi.ring
    M = Psi.matrix
    lhs = ring.contract("ai,abm->ibm", M, target.c)
    lhs = ring.contract("bj,ibm->ijm", M, lhs)
    rhs = ring.contract("tm,ijm->ijt", M, source.c)
    return np.array_equal(lhs, rhs)


def correction_form(base: LieAlgebra, first: BracketAlgebra, second: BracketAlgebra) -> AdForm:
    """The 2-cochain t with second = first + psi(t), both lifting ``base``."""
    for X in (first, second):
        as_bracket_lift(base, X)
    ring = first.ring
    diff = ring.chi(ring.sub(second.c, first.c))
    Lbar = reduce_to_residue(base)
    pairs = list(combinations(range(base.n), 2))
    coords = np.array([diff[i, j] for i, j in pairs], dtype=np.int64).reshape(-1)
    return AdForm(Lbar, 2, coords)


def lifts_equivalent(base: LieAlgebra, first: BracketAlgebra, second: BracketAlgebra) -> AdForm | None:
    """phi with Id + psi phi lambda an isomorphism first -> second, or None.

    Solves <,>_2 - <,>_1 = -d(phi), then checks bracket preservation exactly.
    """
    delta = correction_form(base, first, second)
    Lbar = delta.algebra
    if Lbar.n < 2:
        return AdForm.zero(Lbar, 1)
    phi = is_coboundary(Lbar, -delta)
    if phi is None:
        return None
    Psi = psi_automorphism(first.ring, phi)
    if not preserves_brackets(Psi, first, second):
        raise InvariantViolation("coboundary-connected lifts are not Psi-isomorphic")
    return phi


# ---------------------------------------------------------------------------
# towers

@dataclass
class TowerStep:
    source_level: int
    target_level: int
    lifted: bool
    witness: AdForm | None
    class_coordinates: np.ndarray
    algebra: LieAlgebra | None


@dataclass
class TowerReport:
    start: LieAlgebra
    target_level: int
    steps: list[TowerStep]

    @property
    def reached_level(self) -> int:
        level = self.start.ring.k
        for step in self.steps:
            if not step.lifted:
                break
            level = step.target_level
        return level

    @property
    def complete(self) -> bool:
        return self.reached_level >= self.target_level

    @property
    def top(self) -> LieAlgebra:
        for step in reversed(self.steps):
            if step.lifted:
                return step.algebra
        return self.start


def lift_tower(L: LieAlgebra, target_level: int) -> TowerReport:
    """Lift level by level, always taking the witness chosen by the coboundary solver."""
    if target_level < 1:
        raise InputError("target level must be >= 1")
    steps: list[TowerStep] = []
    current = L
    while current.ring.k < target_level:
        rep = obstruction(current)
        k = current.ring.k
        log.debug("tower step %d -> %d: %s", k, k + 1, "lifts" if rep.lifts else "obstructed")
        steps.append(TowerStep(k, k + 1, rep.lifts, rep.witness, rep.class_coordinates, rep.lifted_algebra))
        if not rep.lifts:
            break
        current = rep.lifted_algebra
    return TowerReport(L, target_level, steps)
