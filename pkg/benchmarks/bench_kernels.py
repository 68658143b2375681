#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the two hot paths (minimax table, fidelity grid + crossing scan) through
both backends in this process and prints a timing table. The numba column is
skipped when numba is unavailable or disabled via QSL_DISABLE_NUMBA.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from qsl import kernels, rootfind


def timeit(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def minimax_inputs(n_theta=2048, n_y=2048, delta=0.5):
    yb = rootfind.y_bounds()
    y = np.linspace(yb.y_minus, yb.y_plus, n_y)
    cy, sy = np.cos(y), np.sin(y)
    fa = (sy - y * cy) / (1.0 - cy)
    fb = (1.0 - cy - y * sy) / (1.0 - cy)
    theta = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    rho = 1.0 - math.sqrt(delta) * np.cos(theta)
    sigma = math.sqrt(delta) * np.sin(theta)
    return rho, sigma, fa, fb


def fidelity_inputs(d=8, n=65536, seed=0):
    rng = np.random.default_rng(seed)
    energies = np.sort(rng.uniform(0.0, 2.0, d))
    p = rng.uniform(0.1, 1.0, d)
    return p / p.sum(), energies, n


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rho, sigma, fa, fb = minimax_inputs()
    p, energies, n = fidelity_inputs()

    cases = {
        "minimax_table 2048x2048": {
            "numpy": lambda: kernels.theta_max_table_np(rho, sigma, fa, fb),
        },
        "fidelity_grid 8x65536": {
            "numpy": lambda: kernels.fidelity_grid_np(p, energies, 0.0, 0.005, n),
        },
        "grid + scan 10 levels": {
            "numpy": lambda: [
                kernels.first_crossing_np(
                    kernels.fidelity_grid_np(p, energies, 0.0, 0.005, n), 0.1 * k)
                for k in range(10)
            ],
        },
    }
    if kernels.NUMBA_ENABLED:
        kernels.warmup()
        cases["minimax_table 2048x2048"]["numba"] = (
            lambda: kernels.theta_max_table(rho, sigma, fa, fb))
        cases["fidelity_grid 8x65536"]["numba"] = (
            lambda: kernels.fidelity_grid(p, energies, 0.0, 0.005, n))
        cases["grid + scan 10 levels"]["numba"] = lambda: [
            kernels.first_crossing(
                kernels.fidelity_grid(p, energies, 0.0, 0.005, n), 0.1 * k)
            for k in range(10)
        ]
    else:
        print("numba backend unavailable or disabled; timing numpy only\n")

    width = max(len(name) for name in cases)
    header = f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, impls in cases.items():
        t_np = timeit(impls["numpy"], args.repeat)
        if "numba" in impls:
            t_nb = timeit(impls["numba"], args.repeat)
            print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {t_nb * 1e3:>8.2f}ms  {t_np / t_nb:>7.1f}x")
        else:
            print(f"{name:<{width}}  {t_np * 1e3:>8.2f}ms  {'-':>10}  {'-':>8}")


if __name__ == "__main__":
    main()
