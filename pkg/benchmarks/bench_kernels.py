"""Time the compiled kernels against the pure-Python fallback.

Runs each kernel on the same layered instance with both backends, checks that
the outputs match, and prints one CSV row per (kernel, n, backend).

    python3 benchmarks/bench_kernels.py --sizes 1024,4096 --repeat 3
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

import numpy as np

from dagwidth import _backend
from dagwidth.dnc import solve_dnc
from dagwidth.graph import layered_dag


def best_of(repeat: int, fn):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def kernel_inputs(n: int, width: int, seed: int):
    g = layered_dag(width, max(1, n // width), seed)
    topo = np.asarray(g.topo, dtype=np.int64)
    pos = np.asarray(g.topo_pos, dtype=np.int64)
    src = pos[np.array([u for u, _ in g.edges], dtype=np.int64)]
    dst = pos[np.array([v for _, v in g.edges], dtype=np.int64)]
    # the chain cover, expressed in topological positions
    paths = [[pos[l * width + c] for l in range(g.n // width)] for c in range(width)]
    flat = np.array([v for p in paths for v in p], dtype=np.int64)
    off = np.cumsum([0] + [len(p) for p in paths]).astype(np.int64)
    ident = np.arange(g.n, dtype=np.int64)
    return g, topo, src, dst, flat, off, ident


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1024,4096")
    ap.add_argument("--width", type=int, default=8)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    backends = ["python"] + (["compiled"] if _backend.kernels_compiled is not None else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the fallback only", file=sys.stderr)
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["kernel", "n", "m", "backend", "millis", "speedup"])
    for n in map(int, args.sizes.split(",")):
        g, topo, src, dst, flat, off, ident = kernel_inputs(n, args.width, args.seed)
        n_ = g.n
        cases = {
            "sparsify_edges": lambda k: k.sparsify_edges(n_, src, dst, flat, off),
            "shrink_paths": lambda k: k.shrink_paths(n_, src, dst, ident, np.arange(n_ + 1, dtype=np.int64)),
            "solve_dnc": None,
        }
        for name, fn in cases.items():
            times, outs = {}, {}
            for b in backends:
                if fn is None:
                    t, out = best_of(args.repeat, lambda: solve_dnc(g, backend=b).cover.sorted_paths())
                else:
                    k = _backend.get(b)
                    t, out = best_of(args.repeat, lambda: fn(k))
                times[b], outs[b] = t, out
            if len(backends) == 2:
                a, c = outs["python"], outs["compiled"]
                same = a == c if fn is None else all(np.array_equal(x, y) for x, y in zip(a, c))
                if not same:
                    print(f"{name} n={n_}: backends disagree", file=sys.stderr)
                    return 1
            for b in backends:
                w.writerow([name, n_, g.m, b, f"{times[b] * 1000:.2f}", f"{times['python'] / times[b]:.1f}"])
            sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
