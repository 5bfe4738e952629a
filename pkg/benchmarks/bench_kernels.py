"""Compare the numba and numpy shift-multiset kernels behind the hyperdeterminant.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each case is timed after one warm-up call (which also triggers numba compilation),
and the two backends' outputs are checked for equality.
"""

import argparse
import time

import numpy as np

from cbeta import multialt
from cbeta._accel import numba_available

CASES = [(1, 6), (1, 7), (2, 4), (2, 5), (3, 3), (3, 4)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if numba_available() else [])
    print(f"{'p':>2} {'N':>2} {'work':>10} " + " ".join(f"{b:>10}" for b in backends) + "   speedup  same")
    for p, N in CASES:
        work = multialt.hyperdet_work(2 * p, N)
        row, outs = [], []
        for b in backends:
            multialt.shift_multiset_counts(p, N, 0, backend=b)
            t, out = best_of(lambda: multialt.shift_multiset_counts(p, N, 0, backend=b), args.repeat)
            row.append(t)
            outs.append(out)
        same = True
        if len(outs) == 2:
            (k1, c1, _), (k2, c2, _) = outs
            o1, o2 = np.argsort(k1), np.argsort(k2)
            same = np.array_equal(k1[o1], k2[o2]) and np.array_equal(c1[o1], c2[o2])
        speed = f"{row[0] / row[1]:8.1f}x" if len(row) == 2 else "       -"
        print(f"{p:>2} {N:>2} {work:>10} " + " ".join(f"{t:>9.4f}s" for t in row) + f"  {speed}  {same}")
    if not numba_available():
        print("numba is not installed; only the numpy kernel was timed")


if __name__ == "__main__":
    main()
