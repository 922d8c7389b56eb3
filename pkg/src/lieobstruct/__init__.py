"""Obstructions to lifting Lie algebras over F_p to truncated valuation rings."""
from __future__ import annotations

from .algebra import (
    BracketAlgebra,
    LieAlgebra,
    catalog,
    center,
    invariant_symmetric_3forms,
    invariant_trilinear_forms,
    is_killing_zero,
    is_perfect,
    is_simple,
    is_unimodular,
    killing_form,
    quotient_by_center,
    reduce_algebra,
    reduce_to_residue,
    validate,
)
from .cochains import AdForm, cohomology, differential, differential_matrix, evaluate_form, is_coboundary
from .errors import BudgetExceeded, GuardError, InputError, InvariantViolation, LieObstructError
from .lifting import (
    jacobiator,
    lift_family,
    lift_tower,
    lifts_equivalent,
    make_bracket_lift,
    obstruction,
    perturb_lift,
    psi_automorphism,
)
from .ring import Family, RingElem, RingSpec

__version__ = "0.1.0"

__all__ = [
    "AdForm", "BracketAlgebra", "BudgetExceeded", "Family", "GuardError", "InputError",
    "InvariantViolation", "LieAlgebra", "LieObstructError", "RingElem", "RingSpec",
    "catalog", "center", "cohomology", "differential", "differential_matrix", "evaluate_form",
    "invariant_symmetric_3forms", "invariant_trilinear_forms", "is_coboundary", "is_killing_zero",
    "is_perfect", "is_simple", "is_unimodular", "jacobiator", "killing_form", "lift_family",
    "lift_tower", "lifts_equivalent", "make_bracket_lift", "obstruction", "perturb_lift",
    "psi_automorphism", "quotient_by_center", "reduce_algebra", "reduce_to_residue", "validate",
]
