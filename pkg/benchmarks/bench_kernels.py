"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Kernel calls are timed in-process on both backends; the end-to-end timing
runs a Hausdorff computation in a subprocess with and without
HAUSMID_PURE=1 so each run imports exactly one backend.
"""
from __future__ import annotations

import argparse
import math
import os
import subprocess
import sys
import timeit

import numpy as np

from hausmid import kernels
from hausmid.geometry import feature_rows, parity_rows
from hausmid.region import Shape


def _polygon(n: int, seed: int = 0) -> Shape:
    rng = np.random.default_rng(seed)
    a = np.sort(rng.uniform(0, 2 * math.pi, n))
    r = rng.uniform(0.6, 1.0, n)
    return Shape.polygon(list(zip(r * np.cos(a), r * np.sin(a))))


def _tables(n: int):
    R = _polygon(n).to_region()
    return feature_rows(R.edges(), []), parity_rows(R.loop_edges)


E2E = """
import time
from hausmid import hausdorff, dilate, kernels
from hausmid.region import Shape
import math, numpy as np
rng = np.random.default_rng(3)
a = np.sort(rng.uniform(0, 2 * math.pi, {n})); r = rng.uniform(0.6, 1.0, {n})
A = Shape.polygon(list(zip(r * np.cos(a), r * np.sin(a))))
B = dilate(A.translated(0.2, 0.1), 0.05)
t = time.perf_counter()
hausdorff(A, B)
print(kernels.USING_COMPILED, time.perf_counter() - t)
"""


def end_to_end(n: int, pure: bool) -> tuple[bool, float]:
    env = dict(os.environ, HAUSMID_PURE="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", E2E.format(n=n)], env=env, capture_output=True, text=True,
                         check=True).stdout.split()
    return out[0] == "True", float(out[1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 200, 800])
    args = ap.parse_args(argv)
    try:
        compiled = kernels.backend(True)
    except ImportError:
        print("compiled extension not built; only the numpy backend is available")
        return 1
    pure = kernels.backend(False)
    rng = np.random.default_rng(1)
    P = rng.uniform(-1.2, 1.2, (2000, 2))
    print(f"{'kernel':<16}{'n':>6}{'compiled ms':>14}{'numpy ms':>12}{'speedup':>10}")
    for n in args.sizes:
        F, Q = _tables(n)
        cases = {
            "min_dist_many": lambda m: m.min_dist_many(P, F),
            "inside_many": lambda m: m.inside_many(P, Q),
            "cell_bounds": lambda m: [m.cell_bounds(x, y, 0.05, F) for x, y in P[:200]],
            "segment_ub": lambda m: [m.segment_ub(x, y, x + 0.05, y, F) for x, y in P[:200]],
        }
        for name, fn in cases.items():
            tc = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat)) * 1e3
            tp = min(timeit.repeat(lambda: fn(pure), number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<16}{n:>6}{tc:>14.2f}{tp:>12.2f}{tp / tc:>9.1f}x")
    print()
    print(f"{'hausdorff':<16}{'n':>6}{'compiled s':>14}{'numpy s':>12}{'speedup':>10}")
    for n in (20, 80):
        used_c, tc = end_to_end(n, pure=False)
        used_p, tp = end_to_end(n, pure=True)
        assert used_c and not used_p
        print(f"{'end-to-end':<16}{n:>6}{tc:>14.3f}{tp:>12.3f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
