"""Equilibria, discriminant surface, fold curves, cusp point, and windows.

Everything here works on the depressed cubic ds/dt' = h + r*s - c3*s^3 or
its unshifted equivalent f(S) = P - S*(1 + beta*(theta - lam*S)^2). The
two are related by S = s + k with k the quadratic-killing shift, so root
sets, stability and fold conditions transfer exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple

import numpy as np

from .dynamics import DepressedCubic, depressed_coeffs, tschirnhaus_shift
from .errors import InternalConsistencyError, InvalidParameterError
from .params import ModelParams

__all__ = [
    "Root",
    "EquilibriumSet",
    "FoldPoint",
    "FoldCurves",
    "CuspPoint",
    "DiscriminantGrid",
    "BranchPoint",
    "solve_cubic",
    "equilibria_at",
    "discriminant",
    "discriminant_grid",
    "fold_thetas_at_state",
    "trace_fold_curves",
    "cusp_point",
    "bistability_window_theta",
    "bistability_window_P",
    "equilibrium_branch",
]

Stability = Literal["stable", "unstable", "degenerate"]


class Root(NamedTuple):
    s: float
    multiplicity: int
    stability: Stability


@dataclass(frozen=True)
class EquilibriumSet:
    """Real roots of the depressed cubic, sorted ascending.

    Total real multiplicity is 1 (single root, complex pair elsewhere) or 3
    (three simple, one simple + one double, or one triple). For three
    distinct roots the stability pattern is (stable, unstable, stable).
    ``theta``/``P`` record the parameter point when known, else nan.
    """

    roots: tuple[Root, ...]
    theta: float = math.nan
    P: float = math.nan

    @property
    def n_distinct(self) -> int:
        return len(self.roots)

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def stable_roots(self) -> list[float]:
        return [r.s for r in self.roots if r.stability == "stable"]

    def unstable_roots(self) -> list[float]:
        return [r.s for r in self.roots if r.stability == "unstable"]


@dataclass(frozen=True)
class FoldPoint:
    """A saddle-node point: f and f_S vanish at (s_star + k, theta_c, P_c).

    ``s_star`` is the fold state in the shifted variable (psu).
    """

    s_star: float
    theta_c: float
    P_c: float


@dataclass(frozen=True)
class FoldCurves:
    """The two fold branches bounding the bistable wedge, each a list of
    FoldPoints sorted by theta_c. ``lower`` has s_star > 0 (smaller P at a
    given theta), ``upper`` has s_star < 0. Both start at the cusp when the
    traced range covers it."""

    lower: tuple[FoldPoint, ...]
    upper: tuple[FoldPoint, ...]


@dataclass(frozen=True)
class CuspPoint:
    """The codimension-two point where the fold curves meet tangentially."""

    theta_cusp: float
    P_cusp: float
    S_c: float


def _f_and_derivs(S: float, theta: float, P: float, beta: float,
                  lam: float) -> tuple[float, float, float, float]:
    """f, f_S, f_SS, f_SSS of f(S) = P - S*(1 + beta*(theta - lam*S)^2)."""
    d = theta - lam * S
    f = P - S * (1.0 + beta * d * d)
    f_S = -1.0 - beta * d * d + 2.0 * beta * lam * S * d
    f_SS = 2.0 * beta * lam * (2.0 * d - lam * S)
    f_SSS = -6.0 * beta * lam * lam
    return f, f_S, f_SS, f_SSS


def _degenerate_scale(dc: DepressedCubic) -> float:
    a = dc.r / dc.c3
    b = dc.h / dc.c3
    return max(1.0, abs(a) ** 3, b * b)


def solve_cubic(dc: DepressedCubic, theta: float = math.nan,
                P: float = math.nan) -> EquilibriumSet:
    """All real roots of h + r*s - c3*s^3 = 0 with stability labels.

    Closed-form trigonometric (three real roots) or hyperbolic (one real
    root) solution of the monic form s^3 + a*s + b = 0 with a = -r/c3,
    b = -h/c3, each root then polished by up to three Newton steps.
    Stability is the sign of the right-hand side slope r - 3*c3*s^2.
    """
    a = -dc.r / dc.c3
    b = -dc.h / dc.c3
    disc = -4.0 * a**3 - 27.0 * b * b
    tol = 1e-12 * _degenerate_scale(dc)

    if abs(disc) <= tol:
        if abs(a) ** 1.5 <= tol and abs(b) <= tol:
            raw = [(0.0, 3)]
        else:
            # one simple root and one double root
            raw = sorted([(3.0 * b / a, 1), (-1.5 * b / a, 2)])
    elif disc > 0.0:
        # three distinct real roots, trigonometric form (a < 0 here)
        m = 2.0 * math.sqrt(-a / 3.0)
        arg = 3.0 * b / (a * m)
        arg = min(1.0, max(-1.0, arg))
        phi = math.acos(arg)
        raw = sorted(
            (m * math.cos((phi - 2.0 * math.pi * k) / 3.0), 1) for k in range(3))
    else:
        # single real root
        if a > 0.0:
            m = 2.0 * math.sqrt(a / 3.0)
            root = -m * math.sinh(math.asinh(3.0 * b / (a * m)) / 3.0)
        elif a < 0.0:
            m = 2.0 * math.sqrt(-a / 3.0)
            arg = -3.0 * abs(b) / (a * m)
            if not math.isfinite(arg) or arg > 1e10:
                # |a| negligible against |b|; cube-root seed, Newton finishes
                root = -math.copysign(abs(b) ** (1.0 / 3.0), b)
            else:
                arg = max(arg, 1.0)
                root = -math.copysign(m * math.cosh(math.acosh(arg) / 3.0), b)
        else:
            root = -math.copysign(abs(b) ** (1.0 / 3.0), b)
        raw = [(root, 1)]

    roots: list[Root] = []
    for s, mult in raw:
        if mult == 1:
            for _ in range(3):
                fval = dc.h + s * (dc.r - dc.c3 * s * s)
                fp = dc.r - 3.0 * dc.c3 * s * s
                if fp == 0.0:
                    break
                step = fval / fp
                s -= step
                if abs(step) <= 1e-16 * (1.0 + abs(s)):
                    break
        slope = dc.r - 3.0 * dc.c3 * s * s
        slope_tol = 1e-9 * (abs(dc.r) + 3.0 * dc.c3 * s * s + 1e-300)
        if mult > 1 or abs(slope) <= slope_tol:
            stability: Stability = "degenerate"
        elif slope < 0.0:
            stability = "stable"
        else:
            stability = "unstable"
        roots.append(Root(s=float(s), multiplicity=mult, stability=stability))
    roots.sort(key=lambda rt: rt.s)
    return EquilibriumSet(roots=tuple(roots), theta=theta, P=P)


def equilibria_at(mp: ModelParams) -> EquilibriumSet:
    """Equilibria of the reduced model at mp, in the shifted variable."""
    return solve_cubic(depressed_coeffs(mp), theta=mp.theta, P=mp.P)


def discriminant(theta, P, mp: ModelParams):
    """Cubic discriminant D(theta, P) = 4*(r/c3)^3 - 27*(h/c3)^2.

    Positive inside the bistable wedge (three real roots), negative outside
    (one real root), zero on the fold curves. Accepts arrays.
    """
    c3 = mp.beta * mp.lam**2
    r = mp.beta * np.asarray(theta, dtype=float) ** 2 / 3.0 - 1.0
    h = (np.asarray(P, dtype=float) - 2.0 * np.asarray(theta, dtype=float) / (3.0 * mp.lam)
         - 2.0 * mp.beta * np.asarray(theta, dtype=float) ** 3 / (27.0 * mp.lam))
    out = 4.0 * (r / c3) ** 3 - 27.0 * (h / c3) ** 2
    if np.ndim(out) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class DiscriminantGrid:
    """Row-major discriminant samples (theta outer, P inner) plus the
    zero-level contour chained into polylines."""

    thetas: np.ndarray
    Ps: np.ndarray
    delta: np.ndarray  # shape (n_theta, n_P)
    contour: tuple[np.ndarray, ...] = field(default_factory=tuple)

    def contour_points(self) -> np.ndarray:
        if not self.contour:
            return np.empty((0, 2))
        return np.vstack(self.contour)


def _newton_on_edge(mp: ModelParams, theta: float, P: float, axis: int,
                    iters: int = 3) -> tuple[float, float]:
    """Newton-polish D = 0 along a grid-cell edge (axis 0: theta)."""
    eps = 1e-7
    for _ in range(iters):
        d0 = discriminant(theta, P, mp)
        if axis == 0:
            slope = (discriminant(theta + eps, P, mp) - d0) / eps
            if slope == 0.0 or not math.isfinite(slope):
                break
            theta = theta - d0 / slope
        else:
            slope = (discriminant(theta, P + eps, mp) - d0) / eps
            if slope == 0.0 or not math.isfinite(slope):
                break
            P = P - d0 / slope
    return theta, P


_MS_SEGMENTS = {
    1: ((3, 0),), 2: ((0, 1),), 3: ((3, 1),), 4: ((1, 2),),
    6: ((0, 2),), 7: ((3, 2),), 8: ((2, 3),), 9: ((2, 0),),
    11: ((2, 1),), 12: ((1, 3),), 13: ((1, 0),), 14: ((0, 3),),
    5: ((3, 0), (1, 2)), 10: ((0, 1), (2, 3)),
}


def discriminant_grid(theta_range: tuple[float, float],
                      P_range: tuple[float, float], n_theta: int, n_P: int,
                      mp: ModelParams) -> DiscriminantGrid:
    """Evaluate D on a regular grid and extract its zero-level contour.

    Contour segments come from marching squares with linear interpolation
    along cell edges; each crossing gets one Newton correction so contour
    points satisfy |D| <= 1e-6 * max|D| over the grid. Segments sharing
    endpoints are chained into polylines.
    """
    if not (theta_range[0] < theta_range[1] and P_range[0] < P_range[1]):
        raise InvalidParameterError("ranges must be ordered and nonempty")
    if n_theta < 2 or n_P < 2:
        raise InvalidParameterError("need at least a 2x2 grid")
    thetas = np.linspace(theta_range[0], theta_range[1], n_theta)
    Ps = np.linspace(P_range[0], P_range[1], n_P)
    TT, PP = np.meshgrid(thetas, Ps, indexing="ij")
    delta = discriminant(TT, PP, mp)

    # Marching squares. Cell corners counterclockwise from lower-left in
    # (theta, P) index space; edges 0..3 = bottom, right, top, left.
    segments: list[tuple[tuple[float, float], tuple[float, float]]] = []

    def edge_point(i0, j0, i1, j1):
        v0, v1 = delta[i0, j0], delta[i1, j1]
        # linear-interpolation seed, then bracketed bisection along the edge
        # (the corners straddle zero by construction) and one Newton polish
        axis = 0 if i0 != i1 else 1
        if axis == 0:
            a, b, fixed = thetas[i0], thetas[i1], Ps[j0]
            dval = lambda t: discriminant(t, fixed, mp)  # noqa: E731
        else:
            a, b, fixed = Ps[j0], Ps[j1], thetas[i0]
            dval = lambda p: discriminant(fixed, p, mp)  # noqa: E731
        fa = v0
        for _ in range(60):
            m = 0.5 * (a + b)
            fm = dval(m)
            if fm == 0.0:
                a = b = m
                break
            if (fa > 0.0) == (fm > 0.0):
                a, fa = m, fm
            else:
                b = m
        x = 0.5 * (a + b)
        if axis == 0:
            return _newton_on_edge(mp, x, fixed, 0, iters=1)
        return _newton_on_edge(mp, fixed, x, 1, iters=1)

    for i in range(n_theta - 1):
        for j in range(n_P - 1):
            corners = ((i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1))
            code = 0
            for bit, (ci, cj) in enumerate(corners):
                if delta[ci, cj] > 0.0:
                    code |= 1 << bit
            if code in (0, 15):
                continue
            edges = {
                0: (corners[0], corners[1]),
                1: (corners[1], corners[2]),
                2: (corners[3], corners[2]),
                3: (corners[0], corners[3]),
            }
            for e0, e1 in _MS_SEGMENTS[code]:
                (a0, a1), (b0, b1) = edges[e0]
                (c0, c1), (d0, d1) = edges[e1]
                p0 = edge_point(a0, a1, b0, b1)
                p1 = edge_point(c0, c1, d0, d1)
                segments.append((p0, p1))

    polylines = _chain_segments(segments)
    return DiscriminantGrid(thetas=thetas, Ps=Ps, delta=delta,
                            contour=tuple(np.array(pl) for pl in polylines))


def _chain_segments(segments) -> list[list[tuple[float, float]]]:
    """Greedy chaining of marching-squares segments into polylines."""
    if not segments:
        return []

    def key(p):
        return (round(p[0], 9), round(p[1], 9))

    unused = list(range(len(segments)))
    by_end: dict[tuple[float, float], list[int]] = {}
    for idx, (p0, p1) in enumerate(segments):
        by_end.setdefault(key(p0), []).append(idx)
        by_end.setdefault(key(p1), []).append(idx)
    used = [False] * len(segments)
    polylines = []
    for start in unused:
        if used[start]:
            continue
        used[start] = True
        p0, p1 = segments[start]
        line = [p0, p1]
        # extend forward from p1, then backward from p0
        for endpoint, append in ((p1, True), (p0, False)):
            cur = endpoint
            while True:
                nxt = None
                for idx in by_end.get(key(cur), ()):  # noqa: B007
                    if not used[idx]:
                        nxt = idx
                        break
                if nxt is None:
                    break
                used[nxt] = True
                a, b = segments[nxt]
                cur = b if key(a) == key(cur) else a
                if append:
                    line.append(cur)
                else:
                    line.insert(0, cur)
        polylines.append(line)
    polylines.sort(key=lambda pl: (pl[0][0], pl[0][1]))
    return polylines


def fold_thetas_at_state(S: float, mp: ModelParams) -> tuple[float, ...]:
    """Temperatures at which the state S sits on a fold.

    Real solutions of -beta*theta^2 + 4*beta*lam*S*theta - (1 + 3*beta*
    lam^2*S^2) = 0, i.e. theta_c = 2*lam*S -/+ sqrt((lam*S)^2 - 1/beta).
    Empty when (lam*S)^2 < 1/beta.
    """
    u = mp.lam * S
    inner = u * u - 1.0 / mp.beta
    if inner < 0.0:
        return ()
    if inner == 0.0:
        return (2.0 * u,)
    root = math.sqrt(inner)
    return (2.0 * u - root, 2.0 * u + root)


def _fold_point_at(S: float, theta_c: float, mp: ModelParams) -> FoldPoint:
    P_c = S * (1.0 + mp.beta * (theta_c - mp.lam * S) ** 2)
    f, f_S, _, _ = _f_and_derivs(S, theta_c, P_c, mp.beta, mp.lam)
    if abs(f) > 1e-9 or abs(f_S) > 1e-9:
        raise InternalConsistencyError(
            f"fold residuals too large: f={f:.2e}, f_S={f_S:.2e}")
    s_star = S - 2.0 * theta_c / (3.0 * mp.lam)
    return FoldPoint(s_star=s_star, theta_c=theta_c, P_c=P_c)


def trace_fold_curves(mp: ModelParams, s_range: tuple[float, float],
                      n: int) -> FoldCurves:
    """Trace both fold branches over states S in ``s_range``.

    For each admissible S (meaning (lam*S)^2 >= 1/beta) there are two fold
    temperatures; each yields a FoldPoint. Points are split into the two
    wedge boundaries by the sign of the shifted fold state s_star (negative:
    upper branch in P, positive: lower branch) and sorted by theta_c. When
    the range covers the cusp state both branches are anchored there.
    """
    if n < 2:
        raise InvalidParameterError("n must be >= 2")
    S_min = 1.0 / (mp.lam * math.sqrt(mp.beta))
    lo = max(s_range[0], S_min)
    hi = s_range[1]
    lower: list[FoldPoint] = []
    upper: list[FoldPoint] = []
    if hi > lo:
        S_values = np.linspace(lo, hi, n)
        if s_range[0] <= S_min:
            # the two fold temperatures merge at S_min with square-root
            # spacing in theta; add quadratically clustered samples so the
            # curve stays uniformly sampled in theta through the turn
            m = max(64, n // 4)
            extra = S_min + np.linspace(0.0, 1.0, m) ** 2 * (hi - S_min)
            S_values = np.unique(np.concatenate((S_values, extra)))
        for S in S_values:
            for theta_c in fold_thetas_at_state(float(S), mp):
                if theta_c <= 0.0:
                    continue
                fp = _fold_point_at(float(S), theta_c, mp)
                if fp.s_star > 0.0:
                    lower.append(fp)
                elif fp.s_star < 0.0:
                    upper.append(fp)
                else:
                    lower.append(fp)
                    upper.append(fp)
    cp = cusp_point(mp)
    if lo <= cp.S_c <= hi:
        anchor = FoldPoint(s_star=0.0, theta_c=cp.theta_cusp, P_c=cp.P_cusp)
        lower.append(anchor)
        upper.append(anchor)
    lower.sort(key=lambda fp: fp.theta_c)
    upper.sort(key=lambda fp: fp.theta_c)
    return FoldCurves(lower=tuple(lower), upper=tuple(upper))


def cusp_point(mp: ModelParams) -> CuspPoint:
    """Closed-form cusp: theta = sqrt(3/beta), P = 8/(3*lam*sqrt(3*beta)),
    S = 2/(lam*sqrt(3*beta)).

    Verifies the defining residuals f = f_S = f_SS = 0 and the
    non-degeneracy f_SSS = -6*beta*lam^2 != 0 before returning.
    """
    sqrt3b = math.sqrt(3.0 * mp.beta)
    theta_c = math.sqrt(3.0 / mp.beta)
    P_c = 8.0 / (3.0 * mp.lam * sqrt3b)
    S_c = 2.0 / (mp.lam * sqrt3b)
    f, f_S, f_SS, f_SSS = _f_and_derivs(S_c, theta_c, P_c, mp.beta, mp.lam)
    scale = max(1.0, abs(P_c))
    if max(abs(f), abs(f_S), abs(f_SS)) > 1e-10 * scale:
        raise InternalConsistencyError(
            f"cusp residuals too large: f={f:.2e}, f_S={f_S:.2e}, f_SS={f_SS:.2e}")
    if f_SSS == 0.0:
        raise InternalConsistencyError("cusp non-degeneracy violated (f_SSS = 0)")
    return CuspPoint(theta_cusp=theta_c, P_cusp=P_c, S_c=S_c)


def _window_from_scan(values: np.ndarray, delta: np.ndarray, refine,
                      tol: float) -> tuple[float, float] | None:
    """Widest interval with delta > 0, endpoints bisected to ``tol``."""
    pos = delta > 0.0
    if not np.any(pos):
        return None
    flips = np.flatnonzero(pos[:-1] != pos[1:])

    def bisect(a: float, b: float) -> float:
        fa = refine(a)
        for _ in range(200):
            if b - a <= tol:
                break
            m = 0.5 * (a + b)
            fm = refine(m)
            if (fa > 0.0) == (fm > 0.0):
                a, fa = m, fm
            else:
                b = m
        return 0.5 * (a + b)

    edges = [bisect(values[i], values[i + 1]) for i in flips]
    # build candidate positive intervals from the crossing list
    intervals: list[tuple[float, float]] = []
    if pos[0]:
        intervals.append((values[0], edges[0] if edges else values[-1]))
        edges = edges[1:] if edges else edges
    for i in range(0, len(edges) - 1, 2):
        intervals.append((edges[i], edges[i + 1]))
    if pos[-1] and edges and len(edges) % 2 == 1:
        intervals.append((edges[-1], values[-1]))
    if not intervals:
        return None
    lo, hi = max(intervals, key=lambda iv: iv[1] - iv[0])
    return float(lo), float(hi)


def bistability_window_theta(P: float, mp: ModelParams,
                             search_hi: float | None = None,
                             n_scan: int = 4096,
                             tol: float = 1e-8) -> tuple[float, float] | None:
    """Maximal theta-interval with three equilibria at fixed forcing P.

    Scans D(theta, P) over [0, search_hi] (default 4x the cusp temperature),
    brackets sign changes and bisects them to ``tol`` degC. Returns None if
    D <= 0 throughout.
    """
    hi = 4.0 * cusp_point(mp).theta_cusp if search_hi is None else search_hi
    thetas = np.linspace(0.0, hi, n_scan)
    delta = discriminant(thetas, P, mp)
    return _window_from_scan(thetas, delta,
                             lambda th: discriminant(th, P, mp), tol)


def bistability_window_P(theta: float, mp: ModelParams,
                         search_hi: float | None = None,
                         n_scan: int = 4096,
                         tol: float = 1e-8) -> tuple[float, float] | None:
    """Maximal P-interval with three equilibria at fixed theta."""
    hi = 4.0 * cusp_point(mp).P_cusp if search_hi is None else search_hi
    Ps = np.linspace(0.0, hi, n_scan)
    delta = discriminant(theta, Ps, mp)
    return _window_from_scan(Ps, delta,
                             lambda P: discriminant(theta, P, mp), tol)


@dataclass(frozen=True)
class BranchPoint:
    """One continuation sample: equilibrium state (unshifted, psu) at a
    parameter value, with its stability, branch id, and a fold marker set
    on the refined fold location where the branch is created/destroyed."""

    param: float
    state: float
    stability: Stability
    branch_id: int
    fold: bool = False


def equilibrium_branch(sweep_param: Literal["theta", "P"],
                       sweep_range: tuple[float, float], fixed_other: float,
                       mp: ModelParams, n: int) -> list[BranchPoint]:
    """Natural-parameter continuation of all equilibrium branches.

    Solves the cubic on a uniform parameter grid, pairs roots between
    consecutive grid values by nearest state (ties broken toward keeping the
    stability label), and refines each root-count change to a fold point by
    bisection on the discriminant. Fold points are appended to the two
    branches that collide there, marked with ``fold=True``.
    """
    if sweep_param not in ("theta", "P"):
        raise InvalidParameterError(f"unknown sweep parameter {sweep_param!r}")
    if n < 2:
        raise InvalidParameterError("n must be >= 2")

    def mp_at(value: float) -> ModelParams:
        if sweep_param == "theta":
            return mp.with_(theta=value, P=fixed_other)
        return mp.with_(P=value, theta=fixed_other)

    def states_at(value: float) -> list[tuple[float, Stability]]:
        m = mp_at(value)
        k = tschirnhaus_shift(m)
        eq = equilibria_at(m)
        return [(rt.s + k, rt.stability) for rt in eq.roots]

    values = np.linspace(sweep_range[0], sweep_range[1], n)
    points: list[BranchPoint] = []
    next_id = 0
    prev: list[tuple[float, Stability, int]] = []
    prev_value = None
    for value in values:
        cur = states_at(float(value))
        assigned: list[tuple[float, Stability, int]] = []
        taken: set[int] = set()
        for state, stab in cur:
            best_j, best_cost = None, math.inf
            for j, (pstate, pstab, _pid) in enumerate(prev):
                if j in taken:
                    continue
                cost = abs(state - pstate)
                if pstab != stab:
                    cost += 1e-9 + 0.5 * cost
                if cost < best_cost:
                    best_j, best_cost = j, cost
            if best_j is None:
                bid = next_id
                next_id += 1
            else:
                taken.add(best_j)
                bid = prev[best_j][2]
            assigned.append((state, stab, bid))
        if prev_value is not None and len(cur) != len(prev):
            fold_pts = _refine_fold(mp_at, float(prev_value), float(value))
            for fstate, fparam in fold_pts:
                near = sorted(prev if len(prev) > len(cur) else assigned,
                              key=lambda t: abs(t[0] - fstate))[:2]
                for _, _, bid in near:
                    points.append(BranchPoint(param=fparam, state=fstate,
                                              stability="degenerate",
                                              branch_id=bid, fold=True))
        for state, stab, bid in assigned:
            points.append(BranchPoint(param=float(value), state=state,
                                      stability=stab, branch_id=bid))
        prev = assigned
        prev_value = value
    points.sort(key=lambda bp: (bp.branch_id, bp.param))
    return points


def _refine_fold(mp_at, v0: float, v1: float) -> list[tuple[float, float]]:
    """Bisect the discriminant sign change in (v0, v1); return the double
    root state(s) and the fold parameter value."""
    def disc_of(v: float) -> float:
        m = mp_at(v)
        return discriminant(m.theta, m.P, m)

    d0 = disc_of(v0)
    d1 = disc_of(v1)
    if (d0 > 0.0) == (d1 > 0.0):
        return []
    a, b, da = v0, v1, d0
    for _ in range(200):
        if abs(b - a) <= 1e-10 * (1.0 + abs(a)):
            break
        mid = 0.5 * (a + b)
        dm = disc_of(mid)
        if (da > 0.0) == (dm > 0.0):
            a, da = mid, dm
        else:
            b = mid
    v_fold = 0.5 * (a + b)
    m = mp_at(v_fold)
    k = tschirnhaus_shift(m)
    eq = equilibria_at(m)
    degenerate = [rt for rt in eq.roots if rt.multiplicity > 1
                  or rt.stability == "degenerate"]
    if degenerate:
        return [(degenerate[0].s + k, v_fold)]
    # fell on the three-root side of the tolerance band: take the closest pair
    ss = sorted(rt.s for rt in eq.roots)
    if len(ss) >= 2:
        gaps = [(ss[i + 1] - ss[i], i) for i in range(len(ss) - 1)]
        _, i = min(gaps)
        return [(0.5 * (ss[i] + ss[i + 1]) + k, v_fold)]
    return [(ss[0] + k, v_fold)]
