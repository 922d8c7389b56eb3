"""Exact arithmetic in the truncated valuation rings Z/p^k and F_p[x]/(x^k).

Both families share the residue field F_p and the uniformizer pi (p for the
p-adic family, x for the power-series family).  Scalars are wrapped in
:class:`RingElem`; tensors of ring elements are plain numpy arrays whose
layout is owned by :class:`RingSpec`:

* p-adic family: integer array of base shape, entries in ``[0, p**k)``.
* power-series family: integer array of shape ``base + (k,)``, entry ``[..., t]``
  holding the coefficient of ``x**t`` in ``[0, p)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import RingError


class Family(str, enum.Enum):
    PADIC = "padic"
    POWER_SERIES = "power-series"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# int64 einsum stays exact while a sum of n products of residues fits
_INT64_MODULUS_LIMIT = 2**28


@dataclass(frozen=True)
class RingSpec:
    """The quotient ring R_k = R / pi^k R of one of the two supported families."""

    family: Family
    p: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise RingError(f"p={self.p} is not prime")
        if self.k < 1:
            raise RingError(f"level k={self.k} must be >= 1")
        if self.family is Family.PADIC and self.p ** self.k >= 2**63:
            raise RingError(f"p^k = {self.p}^{self.k} exceeds 2^63")
        object.__setattr__(self, "p", int(self.p))
        object.__setattr__(self, "k", int(self.k))

    @classmethod
    def padic(cls, p: int, k: int = 1) -> "RingSpec":
        return cls(Family.PADIC, p, k)

    @classmethod
    def power_series(cls, p: int, k: int = 1) -> "RingSpec":
        return cls(Family.POWER_SERIES, p, k)

    # --- structure -------------------------------------------------------

    @property
    def order(self) -> int:
        """Number of elements, p^k in both families."""
        return self.p ** self.k

    @property
    def is_field(self) -> bool:
        return self.k == 1

    @property
    def residue(self) -> "RingSpec":
        return RingSpec(self.family, self.p, 1)

    def at_level(self, k: int) -> "RingSpec":
        return RingSpec(self.family, self.p, k)

    def up(self) -> "RingSpec":
        return self.at_level(self.k + 1)

    def down(self) -> "RingSpec":
        if self.k == 1:
            raise RingError("cannot reduce below residue field")
        return self.at_level(self.k - 1)

    @property
    def label(self) -> str:
        if self.family is Family.PADIC:
            return f"F{self.p}" if self.k == 1 else f"Z/{self.order}"
        return f"F{self.p}" if self.k == 1 else f"F{self.p}[x]/(x^{self.k})"

    @property
    def coeff_shape(self) -> tuple[int, ...]:
        return () if self.family is Family.PADIC else (self.k,)

    @property
    def dtype(self):
        modulus = self.order if self.family is Family.PADIC else self.p
        return np.int64 if modulus < _INT64_MODULUS_LIMIT else object

    # --- array layer -----------------------------------------------------

    def base_shape(self, a: np.ndarray) -> tuple[int, ...]:
        return a.shape if self.family is Family.PADIC else a.shape[:-1]

    def zeros(self, shape: Sequence[int] | int) -> np.ndarray:
        if isinstance(shape, (int, np.integer)):
            shape = (int(shape),)
        return np.zeros(tuple(shape) + self.coeff_shape, dtype=self.dtype)

    def canonical(self, a) -> np.ndarray:
        """Canonical representatives of an integer array already laid out for this ring."""
        a = np.asarray(a)
        if self.dtype is object:
            a = a.astype(object)
        else:
            a = a.astype(np.int64)
        if self.family is Family.PADIC:
            return a % self.order
        if a.ndim == 0 or a.shape[-1] != self.k:
            raise RingError(f"power-series array needs trailing axis of length {self.k}")
        return a % self.p

    def from_integers(self, a) -> np.ndarray:
        """Image of integer entries under Z -> R_k (constant term for the power-series family)."""
        a = np.asarray(a)
        if self.family is Family.PADIC:
            return self.canonical(a)
        out = self.zeros(a.shape)
        out[..., 0] = np.asarray(a, dtype=out.dtype) % self.p
        return out

    def add(self, a, b) -> np.ndarray:
        return self.canonical(np.asarray(a) + np.asarray(b))

    def sub(self, a, b) -> np.ndarray:
        return self.canonical(np.asarray(a) - np.asarray(b))

    def neg(self, a) -> np.ndarray:
        return self.canonical(-np.asarray(a))

    def scale(self, a, m: int) -> np.ndarray:
        """Multiply by an integer."""
        return self.canonical(np.asarray(a) * int(m))

    def contract(self, subscripts: str, a, b) -> np.ndarray:
        """Bilinear einsum in the ring; ``subscripts`` names base axes only."""
        a = np.asarray(a)
        b = np.asarray(b)
        if self.family is Family.PADIC:
            return self.canonical(np.einsum(subscripts, a, b))
        # truncated convolution over the trailing coefficient axis
        out = None
        for u in range(self.k):
            au = a[..., u]
            if not au.any():
                continue
            for v in range(self.k - u):
                term = np.einsum(subscripts, au, b[..., v])
                if out is None:
                    out = np.zeros(term.shape + (self.k,), dtype=term.dtype)
                out[..., u + v] += term
        if out is None:
            shape = np.einsum(subscripts, a[..., 0], b[..., 0]).shape
            return self.zeros(shape)
        return self.canonical(out)

    def is_zero(self, a) -> bool:
        return not np.asarray(a).any()

    def reduce_level(self, a) -> np.ndarray:
        """Entrywise R_k -> R_{k-1}."""
        target = self.down()
        a = np.asarray(a)
        if self.family is Family.PADIC:
            return target.canonical(a % target.order)
        return target.canonical(a[..., : target.k])

    def residue_of(self, a) -> np.ndarray:
        """Entrywise reduction to F_p; returns a plain int array of base shape."""
        a = np.asarray(a)
        if self.family is Family.PADIC:
            r = a % self.p
        else:
            r = a[..., 0] % self.p
        return r.astype(np.int64) if self.p < 2**62 else r

    def lift(self, a) -> np.ndarray:
        """Canonical lift R_k -> R_{k+1}: reinterpret representatives / extend coefficients by zero."""
        a = np.asarray(a)
        target = self.up()
        if self.family is Family.PADIC:
            return target.canonical(a)
        pad = [(0, 0)] * (a.ndim - 1) + [(0, 1)]
        return target.canonical(np.pad(a, pad))

    def section(self, a) -> np.ndarray:
        """kappa: R_k -> R_{k+1} splitting the reduction (power-series family only; see :func:`kappa`)."""
        if self.family is not Family.POWER_SERIES:
            raise RingError("Z/p^k -> Z/p^(k+1) has no ring-theoretic section")
        return self.lift(a)

    def psi(self, c) -> np.ndarray:
        """F_p -> pi^(k-1) R_k, c |-> pi^(k-1) * c  (inverse of :meth:`chi`)."""
        c = np.asarray(c)
        if self.family is Family.PADIC:
            return self.canonical(np.asarray(c, dtype=self.dtype) % self.p * self.p ** (self.k - 1))
        out = self.zeros(c.shape)
        out[..., self.k - 1] = np.asarray(c, dtype=out.dtype) % self.p
        return out

    def chi(self, a) -> np.ndarray:
        """pi^(k-1) R_k -> F_p, the division by pi^(k-1) followed by reduction."""
        a = np.asarray(a)
        if self.family is Family.PADIC:
            step = self.p ** (self.k - 1)
            if (a % step).any():
                raise RingError(f"not in pi^{self.k - 1}B")
            r = (a // step) % self.p
        else:
            if a[..., : self.k - 1].any():
                raise RingError(f"not in pi^{self.k - 1}B")
            r = a[..., self.k - 1] % self.p
        return r.astype(np.int64) if self.p < 2**62 else r

    def element(self, value) -> "RingElem":
        return RingElem(self, value)


@dataclass(frozen=True)
class RingElem:
    """A single element of R_k in canonical form."""

    spec: RingSpec
    value: int | tuple[int, ...]

    def __post_init__(self):
        spec = self.spec
        if spec.family is Family.PADIC:
            if not isinstance(self.value, (int, np.integer)):
                raise RingError(f"p-adic element needs an integer, got {self.value!r}")
            object.__setattr__(self, "value", int(self.value) % spec.order)
        else:
            v = self.value
            if isinstance(v, (int, np.integer)):
                v = (int(v),)
            v = tuple(int(t) % spec.p for t in v)
            if len(v) > spec.k:
                raise RingError(f"power-series element has {len(v)} > {spec.k} coefficients")
            object.__setattr__(self, "value", v + (0,) * (spec.k - len(v)))

    def _coerce(self, other) -> "RingElem":
        if isinstance(other, RingElem):
            if other.spec != self.spec:
                raise RingError(f"ring mismatch: {self.spec.label} vs {other.spec.label}")
            return other
        if isinstance(other, (int, np.integer)):
            if self.spec.family is Family.PADIC:
                return RingElem(self.spec, int(other))
            return RingElem(self.spec, (int(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.spec.family is Family.PADIC:
            return RingElem(self.spec, self.value + other.value)
        return RingElem(self.spec, tuple(a + b for a, b in zip(self.value, other.value)))

    __radd__ = __add__

    def __neg__(self):
        if self.spec.family is Family.PADIC:
            return RingElem(self.spec, -self.value)
        return RingElem(self.spec, tuple(-a for a in self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.spec.family is Family.PADIC:
            return RingElem(self.spec, self.value * other.value)
        k = self.spec.k
        out = [0] * k
        for u, a in enumerate(self.value):
            if a:
                for v in range(k - u):
                    out[u + v] += a * other.value[v]
        return RingElem(self.spec, tuple(out))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.value) if isinstance(self.value, tuple) else self.value == 0

    def to_array(self) -> np.ndarray:
        return self.spec.canonical(np.array(self.value))

    def __repr__(self):
        return f"RingElem({self.spec.label}, {self.value})"


def reduce_level(x: RingElem) -> RingElem:
    spec = x.spec
    if spec.k == 1:
        raise RingError("cannot reduce below residue field")
    target = spec.down()
    if spec.family is Family.PADIC:
        return RingElem(target, x.value % target.order)
    return RingElem(target, x.value[: target.k])


def lambda_residue(x: RingElem) -> RingElem:
    spec = x.spec
    if spec.family is Family.PADIC:
        return RingElem(spec.residue, x.value % spec.p)
    return RingElem(spec.residue, x.value[:1])


def chi(x: RingElem) -> RingElem:
    """Divide an element of pi^k R_{k+1} by pi^k and reduce to F_p."""
    spec = x.spec
    if spec.family is Family.PADIC:
        step = spec.p ** (spec.k - 1)
        if x.value % step:
            raise RingError(f"not in pi^{spec.k - 1}B")
        return RingElem(spec.residue, (x.value // step) % spec.p)
    if any(x.value[: spec.k - 1]):
        raise RingError(f"not in pi^{spec.k - 1}B")
    return RingElem(spec.residue, (x.value[spec.k - 1],))


def psi(c: RingElem, target: RingSpec) -> RingElem:
    """Inverse of :func:`chi`: F_p -> pi^(k) R_{k+1} where ``target`` is R_{k+1}."""
    if c.spec.k != 1 or c.spec.p != target.p:
        raise RingError("psi takes a residue-field element of matching characteristic")
    v = c.value if isinstance(c.value, int) else c.value[0]
    if target.family is Family.PADIC:
        return RingElem(target, v * target.p ** (target.k - 1))
    return RingElem(target, (0,) * (target.k - 1) + (v,))


def kappa(x: RingElem) -> RingElem:
    """Coefficient-padding lift F_p[x]/(x^k) -> F_p[x]/(x^(k+1)).

    Always a right inverse of :func:`reduce_level`; a ring homomorphism when
    k = 1, where it is the constant embedding of F_p.
    """
    if x.spec.family is not Family.POWER_SERIES:
        raise RingError("no ring section exists for the p-adic family")
    return RingElem(x.spec.up(), x.value)
