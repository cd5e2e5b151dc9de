"""Compare the compiled and numpy kernel backends.

    python bench/bench_kernels.py [--qs 7,11,13,17,19] [--repeat 3]

Times the full low-crossing tree build on norm graphs (d=2) for every
available backend and checks that they agree, then times the row
alternation kernel on a large random 0/1 matrix.
"""

import argparse
import time

import numpy as np

from labelforge import kernels
from labelforge.bench import time_backends


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--qs", default="7,11,13,17,19")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    qs = [int(x) for x in args.qs.split(",")]

    print(f"backends: {sorted(kernels.BACKENDS)} (default {kernels.BACKEND})")
    print(f"{'q':>3} {'n':>5} " + " ".join(f"{b + '_s':>10}" for b in sorted(kernels.BACKENDS)) + "  speedup  same")
    for row in time_backends(qs, repeat=args.repeat):
        times = " ".join(f"{row[b + '_s']:10.4f}" for b in sorted(kernels.BACKENDS))
        speed = f"{row.get('speedup', float('nan')):7.2f}x"
        print(f"{row['q']:3d} {row['n']:5d} {times}  {speed}  {row['same_tree']}")

    mat = np.ascontiguousarray(np.random.default_rng(0).integers(0, 2, size=(2000, 2000), dtype=np.uint8))
    print("row_alternations on 2000x2000:")
    for name in sorted(kernels.BACKENDS):
        k = kernels.get(name)
        print(f"  {name:>7}: {_best(lambda: k.row_alternations(mat), args.repeat):.4f}s")


if __name__ == "__main__":
    main()
