#!/usr/bin/env python3
"""Benchmark the numba and numpy kernel backends against each other.

Runs each hot kernel on realistic workloads under both backends, checks the
outputs agree, and prints a timing table.  Usage:

    python benchmarks/bench_kernels.py [--x 1000000] [--repeat 3]

The package-level backend switch is the MAJORANT_LAB_BACKEND environment
variable; this script imports both backend modules directly and is not
affected by it.
"""

from __future__ import annotations

import argparse
import importlib
import time

import numpy as np

from majorant_lab.arith import primes_up_to


def _load_backends():
    backends = {}
    for name in ("numba", "numpy"):
        try:
            backends[name] = importlib.import_module(
                f"majorant_lab.kernels._{name}")
        except ImportError:
            print(f"(backend {name} unavailable, skipping)")
    return backends


def _time(fn, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--x", type=int, default=10**6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = _load_backends()
    rows = []

    primes = np.array([p for p in primes_up_to(args.x) if p > 2],
                      dtype=np.int64)
    coeffs = [1, 0, 1]  # X^2 + 1
    cmod = np.empty((len(primes), 3), dtype=np.int64)
    for j, c in enumerate(coeffs):
        cmod[:, j] = c % primes

    workloads = {
        f"count_roots_many ({len(primes)} primes)":
            lambda impl: impl.count_roots_many(cmod, primes),
        "scan_exact_count (mod 5^8)":
            lambda impl: impl.scan_exact_count(
                np.array([[1, 0, 1]], dtype=np.int64),
                np.array([5**8], dtype=np.int64),
                np.array([5**7], dtype=np.int64),
                np.array([5**8], dtype=np.int64), 5**8),
        "tau_m_table (m=3, n=2 000 000)":
            lambda impl: impl.tau_m_table(2_000_000, 3),
    }

    values = np.abs(np.arange(10**6, 10**6 + 200_000, dtype=np.int64)) ** 2 + 1
    roots_5 = np.array([2, 3], dtype=np.int64)

    def divide_out_workload(impl):
        vals = values.copy()
        idx = np.empty(vals.size, dtype=np.int64)
        exp = np.empty(vals.size, dtype=np.int64)
        k = impl.divide_out(vals, 10**6, 5, roots_5, idx, exp)
        return int(exp[:k].sum())

    workloads["divide_out (200k values, p=5)"] = divide_out_workload

    print(f"backends: {', '.join(backends)}   (repeat={args.repeat}, best-of)")
    print(f"{'kernel':42s}" + "".join(f"{n:>12s}" for n in backends))
    for label, work in workloads.items():
        times = {}
        results = {}
        for name, impl in backends.items():
            work(impl)  # warm up (numba compilation)
            times[name], results[name] = _time(lambda: work(impl), args.repeat)
        line = f"{label:42s}" + "".join(
            f"{times[n] * 1000:>10.1f}ms" for n in backends)
        print(line)
        vals = list(results.values())
        for other in vals[1:]:
            same = (np.array_equal(vals[0], other)
                    if isinstance(vals[0], np.ndarray) else vals[0] == other)
            if not same:
                raise SystemExit(f"BACKEND MISMATCH in {label}")
    print("all backends agree on every workload")


if __name__ == "__main__":
    main()
