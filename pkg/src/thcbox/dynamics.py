"""Right-hand sides of the box model at every reduction level.

Four levels, all on diffusive time t':

* full nondimensional: (x, y) with relaxation-rate ratio alpha
* full dimensional: (dT, dS) in (degC, psu)
* reduced: scalar dS with temperature slaved to theta
* depressed: the reduced equation in the shifted variable s = dS - k that
  removes the quadratic term, giving ds/dt' = h + r*s - c3*s^3

All functions are numpy-polymorphic: scalars in, scalars out; arrays in,
arrays out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidParameterError
from .params import ModelParams, NondimParams

__all__ = [
    "StateND",
    "StateDim",
    "DepressedCubic",
    "rhs_full_nondim",
    "rhs_full_dim",
    "rhs_reduced",
    "rhs_reduced_nondim",
    "rhs_depressed",
    "tschirnhaus_shift",
    "depressed_coeffs",
    "reduced_cubic_coeffs",
    "reduced_nondim_cubic_coeffs",
]


class StateND(NamedTuple):
    """Nondimensional state: x = temperature mode, y = salinity mode."""
    x: float
    y: float


class StateDim(NamedTuple):
    """Dimensional state: dT [degC], dS [psu]."""
    dT: float
    dS: float


@dataclass(frozen=True)
class DepressedCubic:
    """Coefficients of ds/dt' = h + r*s - c3*s^3 (no quadratic term).

    r : linear coefficient, r = beta*theta^2/3 - 1
    h : constant coefficient, h = P - 2*theta/(3*lam) - 2*beta*theta^3/(27*lam)
    c3 : cubic coefficient, c3 = beta*lam^2 > 0
    """

    r: float
    h: float
    c3: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and math.isfinite(self.h)):
            raise InvalidParameterError("r and h must be finite")
        if not (math.isfinite(self.c3) and self.c3 > 0):
            raise InvalidParameterError(f"c3 must be > 0, got {self.c3!r}")


def rhs_full_nondim(state, nd: NondimParams):
    """dx/dt' = -alpha*(x-1) - x*(1 + mu2*(x-y)^2), dy/dt' = p - y*(...)."""
    x, y = state
    exchange = 1.0 + nd.mu2 * (x - y) ** 2
    return (-nd.alpha * (x - 1.0) - x * exchange, nd.p - y * exchange)


def rhs_full_dim(state, mp: ModelParams, alpha: float):
    """Dimensional two-variable system; alpha is the timescale ratio."""
    dT, dS = state
    exchange = 1.0 + mp.beta * (dT - mp.lam * dS) ** 2
    return (-alpha * (dT - mp.theta) - dT * exchange, mp.P - dS * exchange)


def rhs_reduced(dS, mp: ModelParams):
    """Salinity equation with temperature slaved: P - S*(1+beta*(theta-lam*S)^2)."""
    return mp.P - dS * (1.0 + mp.beta * (mp.theta - mp.lam * dS) ** 2)


def rhs_reduced_nondim(y, nd: NondimParams):
    """Nondimensional reduced equation: p - y*(1 + mu2*(1-y)^2)."""
    return nd.p - y * (1.0 + nd.mu2 * (1.0 - y) ** 2)


def rhs_depressed(s, dc: DepressedCubic):
    """h + r*s - c3*s^3."""
    return dc.h + dc.r * s - dc.c3 * s**3


def tschirnhaus_shift(mp: ModelParams) -> float:
    """Shift k = 2*theta/(3*lam); substituting dS = s + k kills the s^2 term."""
    if mp.lam == 0:
        raise InvalidParameterError("lam must be nonzero")
    return 2.0 * mp.theta / (3.0 * mp.lam)


def depressed_coeffs(mp: ModelParams) -> DepressedCubic:
    """Coefficients of the reduced equation in the shifted variable."""
    r = mp.beta * mp.theta**2 / 3.0 - 1.0
    h = mp.P - 2.0 * mp.theta / (3.0 * mp.lam) \
        - 2.0 * mp.beta * mp.theta**3 / (27.0 * mp.lam)
    return DepressedCubic(r=r, h=h, c3=mp.beta * mp.lam**2)


def reduced_cubic_coeffs(mp: ModelParams) -> tuple[float, float, float, float]:
    """Expand the reduced right-hand side as c0 + c1*S + c2*S^2 + c3*S^3."""
    return (mp.P,
            -(1.0 + mp.beta * mp.theta**2),
            2.0 * mp.beta * mp.lam * mp.theta,
            -mp.beta * mp.lam**2)


def reduced_nondim_cubic_coeffs(nd: NondimParams) -> tuple[float, float, float, float]:
    """Expand the nondimensional reduced right-hand side in powers of y."""
    return (nd.p, -(1.0 + nd.mu2), 2.0 * nd.mu2, -nd.mu2)
