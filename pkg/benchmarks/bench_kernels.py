"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--n 8] [--repeat 3]
"""
import argparse
import time
from math import factorial

import numpy as np

from cayley_perc import kernels
from cayley_perc.cayley import CayleyGraph
from cayley_perc.generators import star
from cayley_perc.percolation import PercolationParams


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    n = args.n
    gens = CayleyGraph(star(n)).gen_array
    key, thr, every = PercolationParams(n, 1.0, seed=1)._kernel_args()
    ranks = np.arange(factorial(n), dtype=np.int64)
    cases = {
        "percolate": lambda m: m.percolate(n, gens, key, thr, every),
        "neighbor_ranks": lambda m: m.neighbor_ranks(n, gens, ranks),
        "bfs_distances": lambda m: m.bfs_distances(n, gens, 0),
        "selection_mask": lambda m: m.selection_mask(len(ranks), key, thr, every),
    }
    backends = kernels.available_backends()
    print(f"n={n} ({factorial(n)} vertices), best of {args.repeat}")
    print(f"{'kernel':<16}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, fn in cases.items():
        t = {b: best_of(lambda: fn(mod), args.repeat) for b, mod in backends.items()}
        speed = f"{t['python'] / t['compiled']:9.1f}x" if "compiled" in t else ""
        print(f"{name:<16}" + "".join(f"{t[b]:11.4f}s" for b in backends) + f" {speed}")


if __name__ == "__main__":
    main()
