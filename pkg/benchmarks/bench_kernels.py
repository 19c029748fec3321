#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python fallback.

Builds S(m, delta) once, then runs each bitset kernel on the same inputs
with both backends and checks that they agree.

    python3 benchmarks/bench_kernels.py --m 10 --delta 4
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from stlab import _kernels as K
from stlab._kernels import _pykernels
from stlab.poset import _second_order, enumerate_poset, linear_extension


def _time(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=10)
    ap.add_argument("--delta", type=int, default=4)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-python", action="store_true", help="only time the compiled backend")
    args = ap.parse_args(argv)

    K.set_threads(args.threads)
    P = enumerate_poset(args.m, args.delta)
    n = len(P)
    print(f"S({args.m},{args.delta}): {n} elements, {len(P.hasse1)} covers, threads={args.threads}")

    successors = [[] for _ in range(n)]
    for a, b in P.hasse1:
        successors[a].append(b)
    order = linear_extension(P.rel1, n)
    up = K.permute(P.rel1, order, n)
    down = K.transpose(up, n)
    d = args.delta // 2
    if P.is_even:
        from stlab.core import universe

        U = universe(args.m, d)
        A = K.pack_ints(P.masks, len(U))
        B = K.pack_ints([U.above(x) for x in P.masks], len(U))
    else:
        from stlab.odd import checker

        C = checker(args.m, d)
        A = K.pack_ints([C.full ^ x for x in P.masks], len(C.tuples))
        B = K.pack_ints(P.masks, len(C.tuples))

    kernels = {
        "disjoint_matrix": lambda impl: K.disjoint_matrix(A, B, impl),
        "closure": lambda impl: K.closure(successors, order, impl),
        "lattice_witness": lambda impl: K.lattice_witness(up, down, impl),
        "cover_pairs": lambda impl: sorted(K.cover_pairs(P.rel1, K.transpose(P.rel1, n), impl)),
    }
    backends = []
    if K.BACKEND == "cython":
        from stlab._kernels import _ckernels

        backends.append(("cython", _ckernels))
    else:
        print("compiled extension not available; timing the fallback only")
    if not args.skip_python:
        backends.append(("python", _pykernels))

    header = f"{'kernel':<18}" + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, fn in kernels.items():
        times, outs = [], []
        for _, impl in backends:
            t, out = _time(lambda: fn(impl), args.repeat)
            times.append(t)
            outs.append(out)
        row = f"{name:<18}" + "".join(f"{t:>11.4f}s" for t in times)
        if len(backends) == 2:
            row += f"{times[1] / max(times[0], 1e-9):>9.1f}x"
            if not _same(outs[0], outs[1]):
                row += "  MISMATCH"
        print(row)
    # sanity: the second order rebuilt through the public path agrees
    assert np.array_equal(_second_order(args.m, args.delta, P.masks), P.rel2)


if __name__ == "__main__":
    main()
