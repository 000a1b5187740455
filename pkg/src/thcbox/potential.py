"""Scalar potential of the reduced dynamics and its landscape grids.

The reduced equation is a gradient flow: ds/dt' = -V'(s). Stable equilibria
are local minima of V, the repelling state is the barrier between them, and
the well depths measure resilience. A note on the forcing term: writing the
nondimensional potential so that -V' reproduces the reduced right-hand side
requires the forcing to enter as -p*y (the variant with +p*y differentiates
to the wrong sign).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import bifurcation
from .dynamics import tschirnhaus_shift
from .errors import InvalidParameterError
from .params import ModelParams, NondimParams

__all__ = [
    "Barrier",
    "ExtremaReport",
    "LandscapeGrid",
    "potential_nondim",
    "potential_dim",
    "extrema",
    "landscape_grid",
]


def potential_nondim(y, nd: NondimParams):
    """V(y) = y^2/2 + mu2*(y^2/2 - (2/3)*y^3 + y^4/4) - p*y."""
    y = np.asarray(y, dtype=float) if np.ndim(y) else y
    return (y**2 / 2.0
            + nd.mu2 * (y**2 / 2.0 - (2.0 / 3.0) * y**3 + y**4 / 4.0)
            - nd.p * y)


def potential_dim(dS, mp: ModelParams):
    """Antiderivative of the negated reduced right-hand side.

    V(S) = -P*S + S^2/2 + beta*(theta^2*S^2/2 - (2*lam*theta/3)*S^3
    + (lam^2/4)*S^4), so that -dV/dS equals the reduced dynamics.
    """
    S = np.asarray(dS, dtype=float) if np.ndim(dS) else dS
    return (-mp.P * S + S**2 / 2.0
            + mp.beta * (mp.theta**2 * S**2 / 2.0
                         - (2.0 * mp.lam * mp.theta / 3.0) * S**3
                         + (mp.lam**2 / 4.0) * S**4))


class Barrier(NamedTuple):
    """Escape barrier from a minimum over the adjacent maximum."""
    from_min: float
    over_max: float
    height: float


@dataclass(frozen=True)
class ExtremaReport:
    """Extrema of the potential: (location, value) pairs plus barriers.

    Minima correspond to stable equilibria, maxima to unstable ones; in the
    bistable regime the single maximum is the basin boundary.
    """

    minima: tuple[tuple[float, float], ...]
    maxima: tuple[tuple[float, float], ...]
    barriers: tuple[Barrier, ...]


def _as_model(params: ModelParams | NondimParams) -> tuple[ModelParams, bool]:
    """The nondimensional reduced equation is the dimensional one with
    theta = lam = 1, beta = mu2, P = p."""
    if isinstance(params, ModelParams):
        return params, False
    return ModelParams(beta=params.mu2, lam=1.0, P=params.p, theta=1.0), True


def extrema(params: ModelParams | NondimParams) -> ExtremaReport:
    """Classify the potential's extrema via the equilibrium cubic.

    V' = 0 is exactly the equilibrium condition, so locations come from the
    closed-form root solve (shifted back to the unshifted coordinate), and
    minima/maxima follow the stable/unstable labels.
    """
    if isinstance(params, NondimParams) and params.mu2 == 0.0:
        # linear relaxation: single quadratic well at y = p
        loc = params.p
        return ExtremaReport(
            minima=((loc, float(potential_nondim(loc, params))),),
            maxima=(), barriers=())
    mp, is_nondim = _as_model(params)
    k = tschirnhaus_shift(mp)
    eq = bifurcation.equilibria_at(mp)
    V = (lambda x: float(potential_nondim(x, params))) if is_nondim \
        else (lambda x: float(potential_dim(x, mp)))
    minima = []
    maxima = []
    for rt in eq.roots:
        loc = rt.s + k
        if rt.stability == "stable":
            minima.append((loc, V(loc)))
        elif rt.stability == "unstable":
            maxima.append((loc, V(loc)))
        # degenerate (fold) points are neither well nor barrier
    barriers = []
    for mloc, mval in minima:
        # adjacent maximum: the nearest one in state space
        if maxima:
            xloc, xval = min(maxima, key=lambda mx: abs(mx[0] - mloc))
            barriers.append(Barrier(from_min=mloc, over_max=xloc,
                                    height=xval - mval))
    return ExtremaReport(minima=tuple(minima), maxima=tuple(maxima),
                         barriers=tuple(barriers))


@dataclass(frozen=True)
class LandscapeGrid:
    """Potential surface over (state, parameter) with branch overlay.

    ``V`` has shape (n_coord, n_param) and is gauged per parameter column so
    the global minimum of each column sits at 0. ``branch_flag`` marks grid
    nodes nearest an equilibrium branch ('stable'/'unstable'), else 'none'.
    """

    coords: np.ndarray
    params: np.ndarray
    axis: str
    V: np.ndarray
    branch_flag: np.ndarray


def landscape_grid(axis: str, coord_range: tuple[float, float],
                   param_range: tuple[float, float], n_coord: int,
                   n_param: int, mp: ModelParams) -> LandscapeGrid:
    """Potential landscape over the state and one control parameter.

    ``axis`` selects the swept parameter, 'theta' or 'P'; the other one is
    held at its value in ``mp``. Gauge: each column is shifted so its global
    minimum (from the extrema of that column's potential, not the grid) is
    zero.
    """
    if axis not in ("theta", "P"):
        raise InvalidParameterError(f"axis must be 'theta' or 'P', got {axis!r}")
    if not (coord_range[0] < coord_range[1] and param_range[0] < param_range[1]):
        raise InvalidParameterError("ranges must be ordered and nonempty")
    if n_coord < 2 or n_param < 2:
        raise InvalidParameterError("need at least 2 points per axis")

    coords = np.linspace(coord_range[0], coord_range[1], n_coord)
    values = np.linspace(param_range[0], param_range[1], n_param)
    V = np.empty((n_coord, n_param))
    flags = np.full((n_coord, n_param), "none", dtype=object)

    fixed_other = mp.P if axis == "theta" else mp.theta
    for j, val in enumerate(values):
        col_mp = mp.with_(theta=val) if axis == "theta" else mp.with_(P=val)
        col = potential_dim(coords, col_mp)
        rep = extrema(col_mp)
        if rep.minima:
            gauge = min(v for _, v in rep.minima)
        else:
            gauge = float(np.min(col))
        V[:, j] = col - gauge

    branch = bifurcation.equilibrium_branch(
        axis, param_range, fixed_other, mp, n_param)
    dcoord = coords[1] - coords[0]
    dparam = values[1] - values[0]
    for bp in branch:
        if bp.fold or not (coord_range[0] <= bp.state <= coord_range[1]):
            continue
        j = int(round((bp.param - values[0]) / dparam))
        i = int(round((bp.state - coords[0]) / dcoord))
        if 0 <= i < n_coord and 0 <= j < n_param:
            flags[i, j] = "stable" if bp.stability == "stable" else "unstable"
    return LandscapeGrid(coords=coords, params=values, axis=axis, V=V,
                         branch_flag=flags)
