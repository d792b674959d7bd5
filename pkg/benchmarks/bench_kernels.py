#!/usr/bin/env python3
"""Time the numba kernels against their pure-numpy fallbacks.

Both backends run on the same seeded random networks; outputs are compared
before timing so a speedup never hides a disagreement. JIT compilation is
triggered once up front and excluded from the timings.

    python3 benchmarks/bench_kernels.py --sizes 8 16 32 --repeats 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from flowrank import kernels


def _random_capacity(rng: np.random.Generator, n: int, max_cap: int) -> np.ndarray:
    cap = rng.integers(0, max_cap + 1, size=(n, n)).astype(np.int64)
    np.fill_diagonal(cap, 0)
    return cap


def _best_time(fn, cap: np.ndarray, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(cap.copy())
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 48])
    parser.add_argument("--max-cap", type=int, default=10)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    if kernels.NUMBA_KERNELS is None:
        raise SystemExit("numba is not installed; install the 'fast' extra to benchmark it")
    # compile directly: the public warmup is a no-op when FLOWRANK_NUMBA=0
    tiny = np.array([[0, 1, 0], [0, 0, 2], [1, 0, 0]], dtype=np.int64)
    kernels.NUMBA_KERNELS["max_flow"](tiny.copy(), 0, 2)
    kernels.NUMBA_KERNELS["all_pairs_max_flow"](tiny.copy())
    kernels.NUMBA_KERNELS["widest_paths"](tiny.copy())

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<20}{'n':>5}{'numpy s':>12}{'numba s':>12}{'speedup':>10}")
    for n in args.sizes:
        cap = _random_capacity(rng, n, args.max_cap)
        for name in ("all_pairs_max_flow", "widest_paths"):
            slow, fast = kernels.NUMPY_KERNELS[name], kernels.NUMBA_KERNELS[name]
            if not np.array_equal(slow(cap.copy()), fast(cap.copy())):
                raise SystemExit(f"{name} disagrees between backends at n={n}")
            t_np = _best_time(slow, cap, args.repeats)
            t_nb = _best_time(fast, cap, args.repeats)
            print(f"{name:<20}{n:>5}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
