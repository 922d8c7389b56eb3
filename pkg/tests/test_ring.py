from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieobstruct.errors import RingError
from lieobstruct.ring import (
    Family,
    RingElem,
    RingSpec,
    chi,
    is_prime,
    kappa,
    lambda_residue,
    psi,
    reduce_level,
)

PRIMES = (2, 3, 5)
LEVELS = (1, 2, 3)
FAMILIES = (Family.PADIC, Family.POWER_SERIES)


def all_elements(spec: RingSpec):
    if spec.family is Family.PADIC:
        return [RingElem(spec, v) for v in range(spec.order)]
    from itertools import product

    return [RingElem(spec, v) for v in product(range(spec.p), repeat=spec.k)]


def test_is_prime():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p,k", [(4, 1), (1, 2), (3, 0)])
def test_ring_rejects_bad_parameters(p, k):
    with pytest.raises(RingError):
        RingSpec.padic(p, k)


def test_padic_order_overflow_guard():
    with pytest.raises(RingError):
        RingSpec.padic(2, 63)
    assert RingSpec.padic(2, 62).order == 2**62


def test_labels():
    assert RingSpec.padic(3, 1).label == "F3"
    assert RingSpec.padic(3, 2).label == "Z/9"
    assert RingSpec.power_series(3, 2).label == "F3[x]/(x^2)"


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("k", LEVELS)
def test_lambda_psi_vanishes_and_chi_psi_inverse(family, p, k):
    """psi: F_p -> pi^k R_{k+1}; lambda o psi = 0 and chi, psi are mutually inverse."""
    target = RingSpec(family, p, k + 1)
    for c in all_elements(RingSpec(family, p, 1)):
        y = psi(c, target)
        if k >= 1:
            assert lambda_residue(y).is_zero()
        assert chi(y) == c
    for y in all_elements(target):
        try:
            c = chi(y)
        except RingError:
            assert not _in_top_ideal(y)
            continue
        assert psi(c, target) == y


def _in_top_ideal(y: RingElem) -> bool:
    spec = y.spec
    if spec.family is Family.PADIC:
        return y.value % spec.p ** (spec.k - 1) == 0
    return not any(y.value[: spec.k - 1])


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("p", PRIMES)
def test_reduce_level_is_a_ring_map(family, p):
    spec = RingSpec(family, p, 3)
    elems = all_elements(spec)[:: max(1, len(all_elements(spec)) // 40)]
    for a in elems:
        for b in elems:
            assert reduce_level(a + b) == reduce_level(a) + reduce_level(b)
            assert reduce_level(a * b) == reduce_level(a) * reduce_level(b)


def test_reduce_below_residue_raises():
    with pytest.raises(RingError, match="residue field"):
        reduce_level(RingElem(RingSpec.padic(3, 1), 2))


def test_kappa_is_section_only_for_power_series():
    spec = RingSpec.power_series(3, 2)
    for a in all_elements(spec):
        assert reduce_level(kappa(a)) == a
    field = RingSpec.power_series(3, 1)
    for a in all_elements(field):
        for b in all_elements(field):
            assert kappa(a * b) == kappa(a) * kappa(b)
    with pytest.raises(RingError):
        kappa(RingElem(RingSpec.padic(3, 2), 1))
    with pytest.raises(RingError):
        RingSpec.padic(3, 2).section(np.zeros(3, dtype=np.int64))


def test_padic_has_no_multiplicative_section():
    # the canonical representative lift Z/3 -> Z/9 is not multiplicative: 2 * 2 = 4 != 1
    lo = RingSpec.padic(3, 1)
    two = RingElem(lo.up(), int(lo.lift(np.array(2))))
    assert (two * two).value == 4
    assert RingElem(lo, 2) * RingElem(lo, 2) == RingElem(lo, 1)


def test_power_series_truncated_product():
    spec = RingSpec.power_series(2, 3)
    x = RingElem(spec, (0, 1, 0))
    assert (x * x).value == (0, 0, 1)
    assert (x * x * x).is_zero()


def test_ring_mismatch():
    with pytest.raises(RingError):
        RingElem(RingSpec.padic(3, 2), 1) + RingElem(RingSpec.padic(3, 1), 1)


def test_array_psi_chi_roundtrip():
    for family in FAMILIES:
        spec = RingSpec(family, 5, 3)
        c = np.arange(24).reshape(2, 3, 4) % 5
        assert np.array_equal(spec.chi(spec.psi(c)), c)
        assert not spec.residue_of(spec.psi(c)).any()
        with pytest.raises(RingError):
            spec.chi(spec.from_integers(np.ones(3, dtype=np.int64)))


@pytest.mark.parametrize("family", FAMILIES)
def test_contract_matches_elementwise(family):
    spec = RingSpec(family, 3, 3)
    rng = np.random.default_rng(7)
    shape = (4, 4) + spec.coeff_shape
    bound = spec.order if family is Family.PADIC else 3
    A = rng.integers(0, bound, size=shape)
    B = rng.integers(0, bound, size=shape)
    C = spec.contract("ij,jk->ik", A, B)
    for i in range(4):
        for k in range(4):
            acc = RingElem(spec, 0)
            for j in range(4):
                a = RingElem(spec, _val(A[i, j]))
                b = RingElem(spec, _val(B[j, k]))
                acc = acc + a * b
            assert acc == RingElem(spec, _val(C[i, k]))


def _val(a):
    a = np.asarray(a)
    return int(a) if a.ndim == 0 else tuple(int(x) for x in a)


@given(st.sampled_from(PRIMES), st.integers(1, 4), st.integers(), st.integers(), st.integers())
def test_padic_matches_integer_arithmetic(p, k, a, b, c):
    spec = RingSpec.padic(p, k)
    x, y, z = (RingElem(spec, v) for v in (a, b, c))
    assert (x * y + z).value == (a * b + c) % p**k
    assert (x * (y + z)) == x * y + x * z
    assert (x - x).is_zero()


@given(st.sampled_from(PRIMES), st.integers(1, 4),
       st.lists(st.integers(0, 4), min_size=4, max_size=4),
       st.lists(st.integers(0, 4), min_size=4, max_size=4))
def test_power_series_matches_polynomial_product(p, k, a, b):
    spec = RingSpec.power_series(p, k)
    x, y = RingElem(spec, tuple(a[:k])), RingElem(spec, tuple(b[:k]))
    full = np.convolve(np.array(a[:k]), np.array(b[:k]))[:k] % p
    assert (x * y).value == tuple(int(t) for t in full)
    assert x * y == y * x
