"""Bounded one-dimensional minimization: golden section with a coarse-grid stage."""

from __future__ import annotations

import math
from typing import Callable

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_min(f: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-10, max_iter: int = 200) -> tuple[float, float]:
    """Minimize ``f`` on [lo, hi]; returns (argmin, min value).

    Assumes ``f`` is unimodal on the interval; endpoints are compared against
    the interior result so an endpoint minimum is never missed.
    """
    a, b = lo, hi
    x1 = b - _INV_PHI * (b - a)
    x2 = a + _INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_PHI * (b - a)
            f2 = f(x2)
    xm = 0.5 * (a + b)
    candidates = [(f(xm), xm), (f(lo), lo), (f(hi), hi), (f1, x1), (f2, x2)]
    fv, xv = min(candidates, key=lambda c: c[0])
    return xv, fv


def grid_golden_min(f: Callable[[float], float], lo: float, hi: float,
                    n: int = 512, tol: float = 1e-10) -> tuple[float, float]:
    """Coarse scan on ``n`` points, then golden section inside the best cell.

    The grid stage guards against non-unimodal objectives and endpoint minima;
    the golden stage refines the winning cell.
    """
    if hi <= lo:
        return lo, f(lo)
    n = max(n, 3)
    step = (hi - lo) / (n - 1)
    xs = [lo + i * step for i in range(n)]
    xs[-1] = hi
    fs = [f(x) for x in xs]
    i = min(range(n), key=fs.__getitem__)
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, n - 1)]
    x_ref, f_ref = golden_min(f, a, b, tol=tol)
    if fs[i] < f_ref:
        return xs[i], fs[i]
    return x_ref, f_ref
