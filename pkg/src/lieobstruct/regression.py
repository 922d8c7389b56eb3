"""Stated facts about psl_3(F_3) and the lifting theorems, as runnable checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .algebra import (
    catalog,
    center,
    invariant_symmetric_3forms,
    is_killing_zero,
    is_perfect,
    is_simple,
    is_unimodular,
)
from .cochains import cohomology
from .lifting import lift_tower, obstruction
from .ring import Family


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    compute: Callable[[], object]


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: object
    observed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "observed": self.observed,
                "passed": self.passed}


def _psl():
    return catalog("psl", 3, n=3)


def _split_ring_witnesses() -> bool:
    # levels 1 -> 2 -> 3, each step must come with an explicit witness
    for p in (2, 3):
        for name, n in _small_catalog(p):
            report = lift_tower(catalog(name, p, n=n, family=Family.POWER_SERIES), 3)
            if not report.complete or any(step.witness is None for step in report.steps):
                return False
    return True


def _small_catalog(p: int):
    out = [("abelian", 2), ("abelian", 3), ("heisenberg", 3), ("sl", 2), ("sl", 3),
           ("nilpotent-triangular", 4)]
    if p == 3:
        out.append(("psl", 3))
    return out


def _integer_towers() -> bool:
    for p in (2, 3, 5):
        for name, n in (("abelian", 3), ("heisenberg", 3), ("sl", 2), ("sl", 3)):
            report = lift_tower(catalog(name, p, n=n), 3)
            if not report.complete or not report.top.satisfies_jacobi():
                return False
    return True


CHECKS: tuple[Check, ...] = (
    Check("psl3(F3) trivial H^1, H^2, H^3", [0, 6, 0],
          lambda: cohomology(_psl(), "trivial").dims[1:4]),
    Check("psl3(F3) adjoint H^0, H^1", [0, 7],
          lambda: cohomology(_psl(), "ad").dims[0:2]),
    Check("psl3(F3) is perfect", True, lambda: is_perfect(_psl())),
    Check("psl3(F3) is simple", True, lambda: is_simple(_psl())),
    Check("psl3(F3) Killing form vanishes", True, lambda: is_killing_zero(_psl())),
    Check("psl3(F3) is unimodular", True, lambda: is_unimodular(_psl())),
    Check("psl3(F3) invariant symmetric 3-forms", 1,
          lambda: invariant_symmetric_3forms(_psl()).dimension),
    Check("sl3(F3) center dimension", 1, lambda: int(center(catalog("sl", 3, n=3)).shape[0])),
    Check("psl3(F3) lifts to Z/9", False, lambda: obstruction(_psl()).lifts),
    Check("heisenberg F2 lifts to F2[x]/(x^2)", True,
          lambda: obstruction(catalog("heisenberg", 2, n=3, family=Family.POWER_SERIES)).lifts),
    Check("power-series catalog obstructions vanish", True, _split_ring_witnesses),
    Check("integer catalog lifts to level 3", True, _integer_towers),
)


def run_checks(checks=CHECKS) -> list[CheckResult]:
    return [CheckResult(c.name, c.expected, c.compute()) for c in checks]
