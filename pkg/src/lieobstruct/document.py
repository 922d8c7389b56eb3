"""JSON serialization of structure constants.

An algebra document is one JSON object with exactly the fields
``family, p, k, n, brackets``.  Each bracket entry is ``{"i", "j", "coeffs"}``
with ``i < j`` and ``coeffs`` the coordinates of ``[e_i, e_j]``.  Over the
power-series family every coordinate is itself a list of ``k`` coefficients,
constant term first.  Zero brackets are omitted.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

import numpy as np

from .algebra import BracketAlgebra, validate
from .errors import InputError
from .ring import Family, RingSpec

FIELDS = ("brackets", "family", "k", "n", "p")


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


@dataclass(frozen=True)
class AlgebraDocument:
    family: str
    p: int
    k: int
    n: int
    brackets: tuple[tuple[int, int, tuple], ...]

    @property
    def ring(self) -> RingSpec:
        return RingSpec(Family(self.family), self.p, self.k)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "brackets": [{"i": i, "j": j, "coeffs": _plain(c)} for i, j, c in self.brackets],
        }

    def dumps(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=indent)

    def digest(self) -> str:
        return hashlib.sha256(self.dumps(indent=None).encode()).hexdigest()

    def to_algebra(self, name: str = "") -> BracketAlgebra:
        ring = self.ring
        c = ring.zeros((self.n, self.n, self.n))
        for i, j, coeffs in self.brackets:
            v = np.asarray(coeffs, dtype=c.dtype)
            c[i, j] = v
            c[j, i] = ring.neg(v)
        return validate(c, ring, name)

    @classmethod
    def from_algebra(cls, A: BracketAlgebra) -> "AlgebraDocument":
        ring = A.ring
        entries = []
        for i, j in combinations(range(A.n), 2):
            v = A.c[i, j]
            if np.asarray(v).any():
                entries.append((i, j, _freeze(v)))
        return cls(ring.family.value, ring.p, ring.k, A.n, tuple(entries))


def _freeze(v):
    if isinstance(v, np.ndarray):
        return tuple(_freeze(x) for x in v)
    return int(v)


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    return v


def parse(data: dict) -> AlgebraDocument:
    """Validate a decoded JSON object; error messages name the offending field."""
    if not isinstance(data, dict):
        raise InputError("document: expected a JSON object")
    missing = [f for f in FIELDS if f not in data]
    extra = sorted(set(data) - set(FIELDS))
    if missing:
        raise InputError(f"document: missing field(s) {', '.join(missing)}")
    if extra:
        raise InputError(f"document: unknown field(s) {', '.join(extra)}")
    family = data["family"]
    if family not in [f.value for f in Family]:
        raise InputError(f"family: expected 'padic' or 'power-series', got {json.dumps(family)}")
    p, k, n = _int(data["p"], "p"), _int(data["k"], "k"), _int(data["n"], "n")
    if n < 0:
        raise InputError(f"n: must be non-negative, got {n}")
    try:
        ring = RingSpec(Family(family), p, k)
    except InputError as exc:
        raise InputError(f"ring header: {exc}") from exc
    bound = ring.order if ring.family is Family.PADIC else ring.p
    if not isinstance(data["brackets"], list):
        raise InputError("brackets: expected a list")
    seen = set()
    entries = []
    for t, entry in enumerate(data["brackets"]):
        where = f"brackets[{t}]"
        if not isinstance(entry, dict) or set(entry) != {"i", "j", "coeffs"}:
            raise InputError(f"{where}: expected an object with fields i, j, coeffs")
        i, j = _int(entry["i"], f"{where}.i"), _int(entry["j"], f"{where}.j")
        if not 0 <= i < j < n:
            raise InputError(f"{where}: need 0 <= i < j < n, got i={i}, j={j}")
        if (i, j) in seen:
            raise InputError(f"{where}: pair ({i},{j}) appears twice")
        seen.add((i, j))
        coeffs = entry["coeffs"]
        if not isinstance(coeffs, list) or len(coeffs) != n:
            raise InputError(f"{where}.coeffs: expected a list of length {n}")
        vals = []
        for m, a in enumerate(coeffs):
            cw = f"{where}.coeffs[{m}]"
            if ring.family is Family.POWER_SERIES:
                if not isinstance(a, list) or len(a) != k:
                    raise InputError(f"{cw}: expected a list of {k} coefficients")
                parts = [_int(x, f"{cw}[{u}]") for u, x in enumerate(a)]
                for u, x in enumerate(parts):
                    if not 0 <= x < bound:
                        raise InputError(f"{cw}[{u}]: {x} is not a canonical residue mod {bound}")
                vals.append(tuple(parts))
            else:
                x = _int(a, cw)
                if not 0 <= x < bound:
                    raise InputError(f"{cw}: {x} is not a canonical residue mod {bound}")
                vals.append(x)
        if any(np.asarray(vals).reshape(-1)):
            entries.append((i, j, tuple(vals)))
    entries.sort(key=lambda e: (e[0], e[1]))
    return AlgebraDocument(family, p, k, n, tuple(entries))


def loads(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse(data)


def load(path: str | Path) -> AlgebraDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return loads(text)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from exc
