"""Compare the compiled and pure-Python branch-and-bound kernels.

    python benchmarks/bench_kernel.py [--reps 3] [--sizes 8 10 12 14]

Both backends solve the same seeded random graphs; the script checks that
they agree on the partition and prints per-size timings and the speedup.
"""

from __future__ import annotations

import argparse
import statistics
import time

from dgp import SearchConfig, solve_exact
from dgp._kernel import BACKEND
from dgp.testkit import gen_random_cubic, gen_random_graph


def corpus(sizes, per_size):
    for n in sizes:
        graphs = [gen_random_graph(n, p, seed=1000 * n + i)
                  for i, p in enumerate([0.3, 0.5, 0.7][:per_size])]
        if n % 2 == 0:
            graphs.append(gen_random_cubic(n, seed=n))
        yield n, graphs


def timed(g, backend, cfg, reps):
    times = []
    rep = None
    for _ in range(reps):
        start = time.perf_counter()
        rep = solve_exact(g, cfg, backend=backend)
        times.append(time.perf_counter() - start)
    return rep, statistics.median(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 10, 12, 14])
    ap.add_argument("--per-size", type=int, default=3)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args(argv)
    if BACKEND != "cython":
        print("compiled kernel not available; only the Python fallback would run")
        return 1
    cfg = SearchConfig(max_n=max(args.sizes))
    print(f"{'n':>4} {'graphs':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n, graphs in corpus(args.sizes, args.per_size):
        py_total = cy_total = 0.0
        for g in graphs:
            rp, tp = timed(g, "python", cfg, args.reps)
            rc, tc = timed(g, "cython", cfg, args.reps)
            if rp.partition != rc.partition or rp.density != rc.density:
                raise SystemExit(f"backends disagree on n={n}: {rp.density} vs {rc.density}")
            py_total += tp
            cy_total += tc
        print(f"{n:>4} {len(graphs):>6} {py_total:>10.4f} {cy_total:>10.4f} "
              f"{py_total / max(cy_total, 1e-9):>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
