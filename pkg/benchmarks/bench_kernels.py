"""Time the numba and numpy flavours of each kernel on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call is a warm-up (compilation or cache load) and is not timed.
Outputs are compared for equality before timing.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from lieobstruct import _kernels as K
from lieobstruct.algebra import adjoint_matrices, catalog


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    P = catalog("psl", 3, n=3)
    S = catalog("sl", 5, n=3)
    rng = np.random.default_rng(0)

    D = K.differential(P.residue_constants, 3, 3, True)
    yield "rref psl3 d^3 (245x245, F3)", (
        lambda: K.rref_jit(D, np.int64(3)), lambda: K.rref_numpy(D, 3))

    M = rng.integers(0, 101, size=(120, 160))
    yield "rref random 120x160 (F101)", (
        lambda: K.rref_jit(M, np.int64(101)), lambda: K.rref_numpy(M, 101))

    for s in (2, 3):
        rows = K.subset_tables(8, s + 1)
        ncols = len(K.subset_tables(8, s))
        ranks = K.mask_ranks(8)
        c = S.residue_constants
        yield f"differential sl3 ad degree {s}", (
            lambda c=c, rows=rows, ncols=ncols: K.differential_jit(c, rows, ncols, ranks, np.int64(5), True),
            lambda c=c, rows=rows, ncols=ncols: K.differential_numpy(c, rows, ncols, ranks, 5, True))

    ad = adjoint_matrices(P)
    V = rng.integers(0, 3, size=(300, 7))
    yield "ideal closure psl3, 300 vectors", (
        lambda: K.ideal_closure_dims_jit(ad, V, np.int64(3)), lambda: K.ideal_closure_dims_numpy(ad, V, 3))

    C = rng.integers(0, 9, size=(4096, 3, 3, 3))
    C = (C - C.transpose(0, 2, 1, 3)) % 9
    yield "jacobi defect 4096 tensors over Z/9", (
        lambda: K.jacobi_defect_jit(C, np.int64(9)), lambda: K.jacobi_defect_numpy(C, 9))


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    if not K.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':<38} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for name, (jit_fn, np_fn) in cases():
        if not same(jit_fn(), np_fn()):
            raise SystemExit(f"{name}: flavours disagree")
        tj = best_of(jit_fn, args.repeat)
        tn = best_of(np_fn, args.repeat)
        print(f"{name:<38} {tj * 1e3:>10.2f} {tn * 1e3:>10.2f} {tn / tj:>7.1f}x")


if __name__ == "__main__":
    main()
