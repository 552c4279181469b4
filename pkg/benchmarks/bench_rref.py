"""Time compiled vs numpy row reduction over GF(p).

Run with ``python3 benchmarks/bench_rref.py [--sizes 20 60 120] [--repeat 5]``.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from recollift import linalg as la


def best_time(m: np.ndarray, p: int, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        la.rref(m, p)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[20, 60, 120, 200])
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 101])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if not la.compiled_available():
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    rng = np.random.default_rng(0)
    print(f"{'p':>4} {'n':>5} {'compiled ms':>12} {'python ms':>10} {'speedup':>8}")
    for p in args.primes:
        for n in args.sizes:
            m = rng.integers(0, p, (n, n + n // 2), dtype=np.int64)
            la.set_backend("compiled")
            tc = best_time(m, p, args.repeat)
            ref = la.rref(m, p)
            la.set_backend("python")
            tp = best_time(m, p, args.repeat)
            assert np.array_equal(la.rref(m, p)[0], ref[0])
            print(f"{p:>4} {n:>5} {tc * 1e3:>12.3f} {tp * 1e3:>10.3f} {tp / tc:>7.1f}x")
    la.set_backend("compiled")


if __name__ == "__main__":
    main()
