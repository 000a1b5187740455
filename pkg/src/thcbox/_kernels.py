"""Adaptive Runge-Kutta stepping kernels (the hot loops).

Dormand-Prince 4(5) embedded pair with proportional step control and cubic
Hermite dense output. Two kernels cover every model level:

* ``cubic_dense``  -- scalar ODE dy/dt = c0 + c1*y + c2*y^2 + c3*y^3
* ``twobox_dense`` -- the two-variable system in dimensional form (the
  nondimensional system is the special case theta = lam = 1)

Both are compiled with numba's ``@njit`` when numba is importable; set
``THC_NO_NUMBA=1`` to force the pure-Python path (identical source, same
numerics, roughly two orders of magnitude slower). ``benchmarks/`` compares
the two paths.

Status codes returned alongside results: 0 ok, 1 step underflow (stiffness
guard), 2 step budget exhausted, 3 non-finite state.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = [
    "NUMBA_ENABLED",
    "cubic_dense",
    "twobox_dense",
    "OK",
    "UNDERFLOW",
    "MAXSTEPS",
    "NONFINITE",
]

OK = 0
UNDERFLOW = 1
MAXSTEPS = 2
NONFINITE = 3

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0

disable = os.environ.get("THC_NO_NUMBA", "").strip().lower()
if disable in {"1", "true", "yes", "on"}:
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401
        NUMBA_ENABLED = True
    except ImportError:
        NUMBA_ENABLED = False

if NUMBA_ENABLED:
    from numba import njit as _njit
else:
    def _njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def deco(func):
            return func

        return deco


@_njit(cache=True)
def cubic_dense(c0, c1, c2, c3, y0, t0, t_eval, rtol, atol, max_steps, h0):
    """Integrate dy/dt = c0 + c1*y + c2*y^2 + c3*y^3 from (t0, y0).

    Fills y at the strictly increasing times ``t_eval`` (all >= t0) by cubic
    Hermite interpolation inside accepted steps. Returns (values, status,
    y_final).
    """
    n = t_eval.shape[0]
    out = np.empty(n)
    t_end = t_eval[n - 1]
    t = t0
    y = y0
    i = 0
    while i < n and t_eval[i] <= t:
        out[i] = y
        i += 1
    f0 = c0 + y * (c1 + y * (c2 + y * c3))
    span = t_end - t0
    h = h0 if h0 > 0.0 else span * 1e-3
    if h > span:
        h = span
    steps = 0
    while t < t_end:
        if t_end - t <= 1e-14 * (abs(t_end) + 1.0):
            break
        steps += 1
        if steps > max_steps:
            return out, MAXSTEPS, y
        if h < 1e-14 * (abs(t) + 1.0):
            return out, UNDERFLOW, y
        if t + h > t_end:
            h = t_end - t

        k1 = f0
        ya = y + h * 0.2 * k1
        k2 = c0 + ya * (c1 + ya * (c2 + ya * c3))
        ya = y + h * (0.075 * k1 + 0.225 * k2)
        k3 = c0 + ya * (c1 + ya * (c2 + ya * c3))
        ya = y + h * ((44.0 / 45.0) * k1 - (56.0 / 15.0) * k2 + (32.0 / 9.0) * k3)
        k4 = c0 + ya * (c1 + ya * (c2 + ya * c3))
        ya = y + h * ((19372.0 / 6561.0) * k1 - (25360.0 / 2187.0) * k2
                      + (64448.0 / 6561.0) * k3 - (212.0 / 729.0) * k4)
        k5 = c0 + ya * (c1 + ya * (c2 + ya * c3))
        ya = y + h * ((9017.0 / 3168.0) * k1 - (355.0 / 33.0) * k2
                      + (46732.0 / 5247.0) * k3 + (49.0 / 176.0) * k4
                      - (5103.0 / 18656.0) * k5)
        k6 = c0 + ya * (c1 + ya * (c2 + ya * c3))
        y5 = y + h * ((35.0 / 384.0) * k1 + (500.0 / 1113.0) * k3
                      + (125.0 / 192.0) * k4 - (2187.0 / 6784.0) * k5
                      + (11.0 / 84.0) * k6)
        k7 = c0 + y5 * (c1 + y5 * (c2 + y5 * c3))

        err_raw = h * ((71.0 / 57600.0) * k1 - (71.0 / 16695.0) * k3
                       + (71.0 / 1920.0) * k4 - (17253.0 / 339200.0) * k5
                       + (22.0 / 525.0) * k6 - (1.0 / 40.0) * k7)
        if not (np.isfinite(y5) and np.isfinite(err_raw)):
            h *= 0.25
            continue
        ay = abs(y)
        ay5 = abs(y5)
        sc = atol + rtol * (ay if ay > ay5 else ay5)
        err = abs(err_raw) / sc

        if err <= 1.0:
            while i < n and t_eval[i] <= t + h:
                u = (t_eval[i] - t) / h
                omu = 1.0 - u
                h00 = (1.0 + 2.0 * u) * omu * omu
                h10 = u * omu * omu
                h01 = u * u * (3.0 - 2.0 * u)
                h11 = u * u * (u - 1.0)
                out[i] = h00 * y + h10 * h * f0 + h01 * y5 + h11 * h * k7
                i += 1
            t += h
            y = y5
            f0 = k7
            if err < 1e-10:
                err = 1e-10
            fac = _SAFETY * err ** -0.2
            if fac > _MAX_FACTOR:
                fac = _MAX_FACTOR
            h *= fac
        else:
            fac = _SAFETY * err ** -0.2
            if fac < _MIN_FACTOR:
                fac = _MIN_FACTOR
            h *= fac
    while i < n:
        out[i] = y
        i += 1
    return out, OK, y


@_njit(cache=True)
def twobox_dense(alpha, theta, beta, lam, P, u0, v0, t0, t_eval, rtol, atol,
                 max_steps, h0):
    """Integrate the two-variable system from (u0, v0) at t0.

    du/dt = -alpha*(u - theta) - u*E, dv/dt = P - v*E with
    E = 1 + beta*(u - lam*v)^2. Returns (values (n, 2), status, u, v).
    """
    n = t_eval.shape[0]
    out = np.empty((n, 2))
    t_end = t_eval[n - 1]
    t = t0
    u = u0
    v = v0
    i = 0
    while i < n and t_eval[i] <= t:
        out[i, 0] = u
        out[i, 1] = v
        i += 1
    E = 1.0 + beta * (u - lam * v) ** 2
    fu0 = -alpha * (u - theta) - u * E
    fv0 = P - v * E
    span = t_end - t0
    h = h0 if h0 > 0.0 else span * 1e-3
    if h > span:
        h = span
    steps = 0
    while t < t_end:
        if t_end - t <= 1e-14 * (abs(t_end) + 1.0):
            break
        steps += 1
        if steps > max_steps:
            return out, MAXSTEPS, u, v
        if h < 1e-14 * (abs(t) + 1.0):
            return out, UNDERFLOW, u, v
        if t + h > t_end:
            h = t_end - t

        ku1 = fu0
        kv1 = fv0
        ua = u + h * 0.2 * ku1
        va = v + h * 0.2 * kv1
        E = 1.0 + beta * (ua - lam * va) ** 2
        ku2 = -alpha * (ua - theta) - ua * E
        kv2 = P - va * E
        ua = u + h * (0.075 * ku1 + 0.225 * ku2)
        va = v + h * (0.075 * kv1 + 0.225 * kv2)
        E = 1.0 + beta * (ua - lam * va) ** 2
        ku3 = -alpha * (ua - theta) - ua * E
        kv3 = P - va * E
        ua = u + h * ((44.0 / 45.0) * ku1 - (56.0 / 15.0) * ku2 + (32.0 / 9.0) * ku3)
        va = v + h * ((44.0 / 45.0) * kv1 - (56.0 / 15.0) * kv2 + (32.0 / 9.0) * kv3)
        E = 1.0 + beta * (ua - lam * va) ** 2
        ku4 = -alpha * (ua - theta) - ua * E
        kv4 = P - va * E
        ua = u + h * ((19372.0 / 6561.0) * ku1 - (25360.0 / 2187.0) * ku2
                      + (64448.0 / 6561.0) * ku3 - (212.0 / 729.0) * ku4)
        va = v + h * ((19372.0 / 6561.0) * kv1 - (25360.0 / 2187.0) * kv2
                      + (64448.0 / 6561.0) * kv3 - (212.0 / 729.0) * kv4)
        E = 1.0 + beta * (ua - lam * va) ** 2
        ku5 = -alpha * (ua - theta) - ua * E
        kv5 = P - va * E
        ua = u + h * ((9017.0 / 3168.0) * ku1 - (355.0 / 33.0) * ku2
                      + (46732.0 / 5247.0) * ku3 + (49.0 / 176.0) * ku4
                      - (5103.0 / 18656.0) * ku5)
        va = v + h * ((9017.0 / 3168.0) * kv1 - (355.0 / 33.0) * kv2
                      + (46732.0 / 5247.0) * kv3 + (49.0 / 176.0) * kv4
                      - (5103.0 / 18656.0) * kv5)
        E = 1.0 + beta * (ua - lam * va) ** 2
        ku6 = -alpha * (ua - theta) - ua * E
        kv6 = P - va * E
        u5 = u + h * ((35.0 / 384.0) * ku1 + (500.0 / 1113.0) * ku3
                      + (125.0 / 192.0) * ku4 - (2187.0 / 6784.0) * ku5
                      + (11.0 / 84.0) * ku6)
        v5 = v + h * ((35.0 / 384.0) * kv1 + (500.0 / 1113.0) * kv3
                      + (125.0 / 192.0) * kv4 - (2187.0 / 6784.0) * kv5
                      + (11.0 / 84.0) * kv6)
        E = 1.0 + beta * (u5 - lam * v5) ** 2
        ku7 = -alpha * (u5 - theta) - u5 * E
        kv7 = P - v5 * E

        eu = h * ((71.0 / 57600.0) * ku1 - (71.0 / 16695.0) * ku3
                  + (71.0 / 1920.0) * ku4 - (17253.0 / 339200.0) * ku5
                  + (22.0 / 525.0) * ku6 - (1.0 / 40.0) * ku7)
        ev = h * ((71.0 / 57600.0) * kv1 - (71.0 / 16695.0) * kv3
                  + (71.0 / 1920.0) * kv4 - (17253.0 / 339200.0) * kv5
                  + (22.0 / 525.0) * kv6 - (1.0 / 40.0) * kv7)
        if not (np.isfinite(u5) and np.isfinite(v5)
                and np.isfinite(eu) and np.isfinite(ev)):
            h *= 0.25
            continue
        au = abs(u)
        au5 = abs(u5)
        scu = atol + rtol * (au if au > au5 else au5)
        av = abs(v)
        av5 = abs(v5)
        scv = atol + rtol * (av if av > av5 else av5)
        err = np.sqrt(0.5 * ((eu / scu) ** 2 + (ev / scv) ** 2))

        if err <= 1.0:
            while i < n and t_eval[i] <= t + h:
                w = (t_eval[i] - t) / h
                omw = 1.0 - w
                h00 = (1.0 + 2.0 * w) * omw * omw
                h10 = w * omw * omw
                h01 = w * w * (3.0 - 2.0 * w)
                h11 = w * w * (w - 1.0)
                out[i, 0] = h00 * u + h10 * h * fu0 + h01 * u5 + h11 * h * ku7
                out[i, 1] = h00 * v + h10 * h * fv0 + h01 * v5 + h11 * h * kv7
                i += 1
            t += h
            u = u5
            v = v5
            fu0 = ku7
            fv0 = kv7
            if err < 1e-10:
                err = 1e-10
            fac = _SAFETY * err ** -0.2
            if fac > _MAX_FACTOR:
                fac = _MAX_FACTOR
            h *= fac
        else:
            fac = _SAFETY * err ** -0.2
            if fac < _MIN_FACTOR:
                fac = _MIN_FACTOR
            h *= fac
    while i < n:
        out[i, 0] = u
        out[i, 1] = v
        i += 1
    return out, OK, u, v
