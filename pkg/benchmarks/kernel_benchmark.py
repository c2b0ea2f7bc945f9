#!/usr/bin/env python3
"""Benchmark the segment-cost kernel: numba fast path vs numpy fallback.

The kernel computes the line-fit SSE of every admissible index range, the
O(n^3) core of the breakpoint search.  Run:

    python benchmarks/kernel_benchmark.py --sizes 100 200 400 800 --repeats 3

The numba column includes a warm-up call, so JIT compilation is not timed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from hypergrowth import _kernels


def make_inputs(n: int) -> tuple[np.ndarray, np.ndarray]:
    # Reciprocal values of a noisy hyperbolic trajectory on [-1, 1] time.
    rng = np.random.default_rng(0)
    u = np.linspace(-1.0, 1.0, n)
    y = (1.0 - 0.9 * u) * np.exp(0.02 * rng.standard_normal(n))
    return u, y


def time_backend(backend: str, u: np.ndarray, y: np.ndarray, repeats: int) -> float:
    _kernels.sse_matrix(u, y, 4, backend=backend)  # warm up (JIT, caches)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        _kernels.sse_matrix(u, y, 4, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+", default=[100, 200, 400, 800])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    backends = ["numpy"]
    if _kernels._numba_importable():
        backends.append("numba")
    else:
        print("numba not installed; timing the numpy fallback only")

    header = f"{'n':>6}" + "".join(f"{b + ' (s)':>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for n in args.sizes:
        u, y = make_inputs(n)
        times = [time_backend(b, u, y, args.repeats) for b in backends]
        line = f"{n:>6}" + "".join(f"{t:>14.4f}" for t in times)
        if len(times) == 2 and times[1] > 0:
            line += f"{times[0] / times[1]:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
