"""Independent reference computations the tests check the library against.

Nothing in here calls back into the closed-form code paths under test:
roots come from dense sign scans plus bisection, derivatives from centered
finite differences.
"""

from __future__ import annotations

import numpy as np


def scan_roots(f, lo: float, hi: float, n: int = 8001,
               xtol: float = 1e-12) -> list[float]:
    """All simple real roots of f on [lo, hi] by sign scan + bisection."""
    xs = np.linspace(lo, hi, n)
    vals = np.asarray(f(xs), dtype=float)
    roots = [float(xs[i]) for i in np.flatnonzero(vals == 0.0)]
    sign = np.sign(vals)
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
        a, b = float(xs[i]), float(xs[i + 1])
        fa = float(f(a))
        for _ in range(200):
            if b - a <= xtol:
                break
            m = 0.5 * (a + b)
            fm = float(f(m))
            if fm == 0.0:
                a = b = m
                break
            if (fa > 0.0) == (fm > 0.0):
                a, fa = m, fm
            else:
                b = m
        roots.append(0.5 * (a + b))
    return sorted(roots)


def cubic_root_bound(a: float, b: float) -> float:
    """Cauchy bound: every root of s^3 + a*s + b lies in [-B, B]."""
    return 1.0 + max(abs(a), abs(b))


def centered_diff(f, x, h: float):
    return (f(x + h) - f(x - h)) / (2.0 * h)
