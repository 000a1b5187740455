#!/usr/bin/env python3
"""Benchmark the compiled stepping kernels against the pure-Python path.

Times three representative workloads:

* settle: one quasi-static ramp leg (200 holds x settle time 50)
* stiff: the full two-variable system at timescale ratio 1e4
* dense: a finely sampled reduced-model trajectory

With numba importable the compiled dispatcher exposes the original Python
function as ``.py_func``, so both paths run in one process. Under
``THC_NO_NUMBA=1`` only the pure path is available and this script reports
it alone.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import time

import numpy as np

from thcbox import _kernels
from thcbox.dynamics import reduced_cubic_coeffs
from thcbox.params import default_model_params


def settle_leg(cubic_dense, mp, n_holds: int) -> float:
    state = 4.4583
    t_eval = np.array([0.0, 50.0])
    for theta in np.linspace(17.0, 24.0, n_holds):
        c0, c1, c2, c3 = reduced_cubic_coeffs(mp.with_(theta=float(theta)))
        _, status, state = cubic_dense(c0, c1, c2, c3, state, 0.0, t_eval,
                                       1e-8, 1e-10, 5_000_000, 0.0)
        assert status == 0
    return state


def stiff_full(twobox_dense, mp, t_end: float) -> float:
    t_eval = np.linspace(0.0, t_end, 101)
    out, status, u, v = twobox_dense(1e4, mp.theta, mp.beta, mp.lam, mp.P,
                                     mp.theta, 2.0, 0.0, t_eval,
                                     1e-8, 1e-10, 5_000_000, 0.0)
    assert status == 0
    return v


def dense_trajectory(cubic_dense, mp, n_samples: int) -> float:
    c0, c1, c2, c3 = reduced_cubic_coeffs(mp)
    t_eval = np.linspace(0.0, 200.0, n_samples)
    out, status, y = cubic_dense(c0, c1, c2, c3, 0.2, 0.0, t_eval,
                                 1e-10, 1e-12, 5_000_000, 0.0)
    assert status == 0
    return y


def timed(fn, *args, repeats: int = 3) -> float:
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="smaller workloads, single repeat")
    args = parser.parse_args()
    repeats = 1 if args.quick else 3
    n_holds = 50 if args.quick else 200
    t_end = 2.0 if args.quick else 10.0
    n_samples = 2001 if args.quick else 20001

    mp = default_model_params()
    workloads = [
        ("settle", settle_leg, (mp, n_holds), _kernels.cubic_dense),
        ("stiff", stiff_full, (mp, t_end), _kernels.twobox_dense),
        ("dense", dense_trajectory, (mp, n_samples), _kernels.cubic_dense),
    ]

    print(f"numba compiled path available: {_kernels.NUMBA_ENABLED}")
    header = f"{'workload':<10}{'compiled [s]':>14}{'pure [s]':>12}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, fn, extra, kernel in workloads:
        if _kernels.NUMBA_ENABLED:
            fn(kernel, *extra)  # trigger JIT outside the timer
            fast = timed(fn, kernel, *extra, repeats=repeats)
            slow = timed(fn, kernel.py_func, *extra, repeats=repeats)
            print(f"{name:<10}{fast:>14.4f}{slow:>12.4f}{slow / fast:>9.1f}x")
        else:
            slow = timed(fn, kernel, *extra, repeats=repeats)
            print(f"{name:<10}{'-':>14}{slow:>12.4f}{'-':>10}")


if __name__ == "__main__":
    main()
