#!/usr/bin/env python3
"""Throughput comparison of the sampling backends.

Measures five-number-summary extraction (the hot Monte Carlo kernel) per
backend over the sample sizes that dominate the simulation runtimes. Run
from the repository root:

    python3 benchmarks/bench_kernels.py [--reps 200000]
"""

import argparse
import time

from skewsum.distributions import LogNormal, MixtureNormal, Normal
from skewsum.kernels import available_backends, sample_summaries

CASES = [
    (Normal(0.0, 1.0), 5),
    (Normal(0.0, 1.0), 101),
    (Normal(0.0, 1.0), 401),
    (LogNormal(0.0, 1.0), 201),
    (MixtureNormal(0.3, -2.0, 1.0, 2.0, 1.0), 201),
]


def measure(backend: str, dist, n: int, reps: int) -> float:
    sample_summaries(dist, n, min(reps, 2000), 0, backend=backend)  # warm up
    best = float("inf")
    for _ in range(3):
        start = time.perf_counter()
        sample_summaries(dist, n, reps, 12345, backend=backend)
        best = min(best, time.perf_counter() - start)
    return reps / best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--reps", type=int, default=200_000)
    args = parser.parse_args()

    backends = sorted(available_backends())
    if len(backends) < 2:
        print(f"only {backends} available; build the extension for a comparison")
    header = f"{'distribution':<16}{'n':>6}" + "".join(f"{b + ' (reps/s)':>18}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for dist, n in CASES:
        rates = {b: measure(b, dist, n, args.reps) for b in backends}
        row = f"{type(dist).__name__:<16}{n:>6}" + "".join(
            f"{rates[b]:>18,.0f}" for b in backends)
        if len(backends) == 2:
            row += f"{rates['c'] / rates['numpy']:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
