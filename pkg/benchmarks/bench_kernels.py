#!/usr/bin/env python3
"""Benchmark the scan kernels: numba backend vs the pure-numpy fallback.

The dense chart scans are the hot loop of a full verification run (millions
of residual evaluations).  This script times both backends on identical
work and prints the speedup; run it directly, optionally with a custom
resolution:

    python3 benchmarks/bench_kernels.py --step 1e-3 --repeat 3
"""

import argparse
import statistics
import time

from nkflag import kernels

CASES = (
    ("sphere chart (compact)", kernels.CHART_SPHERE, 1),
    ("split chart, norm +1", kernels.CHART_SPLIT_POSITIVE, -1),
    ("split chart, norm -1", kernels.CHART_SPLIT_NEGATIVE, -1),
)


def time_backend(backend: str, chart: int, eps: int, step: float, repeat: int) -> tuple[float, int]:
    kwargs = dict(hit_thresh=5e-3, margin=0.1, extent=2.0, backend=backend)
    # warm-up (jit compile / cache priming)
    result = kernels.scan_chart(chart, eps, step, **kwargs)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        kernels.scan_chart(chart, eps, step, **kwargs)
        times.append(time.perf_counter() - t0)
    return statistics.median(times), result.points


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--step", type=float, default=1e-3, help="scan resolution")
    parser.add_argument("--repeat", type=int, default=3, help="timed repetitions")
    args = parser.parse_args()

    backends = ["numpy"]
    if kernels.HAVE_NUMBA:
        backends.insert(0, "numba")
    else:
        print("numba not importable; timing the numpy fallback only")

    print(f"scan resolution {args.step:g}, median of {args.repeat} runs\n")
    header = f"{'chart':<24} {'points':>12} " + "".join(f"{b:>12}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, chart, eps in CASES:
        times = {}
        points = 0
        for backend in backends:
            times[backend], points = time_backend(backend, chart, eps, args.step, args.repeat)
        row = f"{name:<24} {points:>12,d} " + "".join(f"{times[b]*1e3:>10.1f}ms" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
