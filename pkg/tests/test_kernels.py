"""The numba and numpy flavours of every kernel must agree exactly."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lieobstruct import _kernels as K
from lieobstruct.algebra import adjoint_matrices, catalog

pytestmark = pytest.mark.skipif(not K.HAS_NUMBA, reason="numba not installed")


@given(st.sampled_from([2, 3, 5, 7, 101]), st.integers(1, 7), st.integers(1, 9), st.data())
def test_rref_agrees(p, rows, cols, data):
    M = data.draw(arrays(np.int64, (rows, cols), elements=st.integers(0, p - 1)))
    R1, piv1 = K.rref_jit(M.copy(), np.int64(p))
    R2, piv2 = K.rref_numpy(M.copy(), p)
    assert np.array_equal(np.asarray(piv1), np.asarray(piv2))
    assert np.array_equal(R1 % p, np.asarray(R2, dtype=np.int64) % p)


def test_rref_is_reduced():
    rng = np.random.default_rng(3)
    M = rng.integers(0, 5, size=(6, 9))
    R, piv = K.rref(M, 5)
    for r, c in enumerate(piv):
        col = R[:, c] % 5
        assert col[r] == 1 and col.sum() == 1


@pytest.mark.parametrize("name,p,n", [("sl", 3, 3), ("psl", 3, 3), ("heisenberg", 2, 3),
                                      ("nilpotent-triangular", 5, 4), ("sl", 2, 2)])
@pytest.mark.parametrize("adjoint", [True, False])
def test_differential_agrees(name, p, n, adjoint):
    A = catalog(name, p, n=n)
    c = A.residue_constants
    for s in range(A.n):
        rows = K.subset_tables(A.n, s + 1)
        ncols = len(K.subset_tables(A.n, s))
        ranks = K.mask_ranks(A.n)
        D1 = K.differential_jit(c, rows, ncols, ranks, np.int64(p), adjoint)
        D2 = K.differential_numpy(c, rows, ncols, ranks, p, adjoint)
        assert np.array_equal(D1, D2)


@pytest.mark.parametrize("name,p,n", [("sl", 3, 3), ("psl", 3, 3), ("sl", 5, 2)])
def test_ideal_closure_agrees(name, p, n):
    A = catalog(name, p, n=n)
    ad = adjoint_matrices(A)
    rng = np.random.default_rng(0)
    V = rng.integers(0, p, size=(20, A.n))
    assert np.array_equal(K.ideal_closure_dims_jit(ad, V, np.int64(p)),
                          K.ideal_closure_dims_numpy(ad, V, p))


def test_jacobi_defect_agrees():
    rng = np.random.default_rng(1)
    C = rng.integers(0, 9, size=(50, 3, 3, 3))
    C = (C - C.transpose(0, 2, 1, 3)) % 9
    good = catalog("sl", 3, 2, n=2).c
    C[0] = good
    a = K.jacobi_defect_jit(C, np.int64(9))
    b = K.jacobi_defect_numpy(C, 9)
    assert np.array_equal(a, b)
    assert not a[0] and a.any()


def test_large_prime_falls_back_to_object_arithmetic():
    p = 2**61 - 1
    M = np.array([[p - 1, 2], [3, p - 2]], dtype=object)
    R, piv = K.rref(M, p)
    assert list(piv) == [0, 1]
