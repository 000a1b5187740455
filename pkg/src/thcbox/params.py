"""Physical and reduced-model parameters, unit bridges, and calibration.

Internal unit canon: temperatures in degC, salinities in psu, and time in
units of the salinity diffusion timescale t_d ("diffusive time"). The only
place raw SI-ish units appear is `PhysicalParams`, whose fields carry the
units noted on each attribute; the derive_* functions collapse them onto the
canon.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import CalibrationError, InvalidParameterError

__all__ = [
    "PhysicalParams",
    "NondimParams",
    "ModelParams",
    "DEFAULT_PHYSICAL",
    "FORCING_PRESETS",
    "derive_nondimensional",
    "derive_dimensional",
    "model_to_nondim",
    "calibrate",
    "default_config_path",
    "load_config",
    "default_model_params",
]

DAYS_PER_YEAR = 365.25


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name} must be finite, got {value!r}")


def _require_positive(name: str, value: float) -> None:
    _require_finite(name, value)
    if value <= 0:
        raise InvalidParameterError(f"{name} must be > 0, got {value!r}")


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional constants of the two-box circulation model.

    Attributes
    ----------
    alpha_T : thermal expansion coefficient [degC^-1]
    alpha_S : haline contraction coefficient [psu^-1]
    q : transport proportionality constant [m^3 yr^-1 per squared
        fractional density anomaly]
    volume : box volume [m^3]
    t_d : salinity diffusion timescale [yr]
    t_r : temperature relaxation timescale [days]
    H : box depth [m]
    S0 : reference salinity [psu]
    Fbar : mean freshwater flux [m yr^-1]
    theta : equilibrium temperature difference [degC]

    All fields must be finite and strictly positive, except ``q`` which may
    be zero (diffusion-only exchange).
    """

    alpha_T: float
    alpha_S: float
    q: float
    volume: float
    t_d: float
    t_r: float
    H: float
    S0: float
    Fbar: float
    theta: float

    def __post_init__(self) -> None:
        for name in ("alpha_T", "alpha_S", "volume", "t_d", "t_r", "H", "S0",
                     "Fbar", "theta"):
            _require_positive(name, getattr(self, name))
        _require_finite("q", self.q)
        if self.q < 0:
            raise InvalidParameterError(f"q must be >= 0, got {self.q!r}")


@dataclass(frozen=True)
class NondimParams:
    """Dimensionless parameters of the nondimensional two-box system.

    alpha : ratio of diffusion to relaxation timescales (large; the
        fast-slow separation)
    mu2 : ratio of diffusive to advective timescales
    p : nondimensional freshwater forcing
    """

    alpha: float
    mu2: float
    p: float

    def __post_init__(self) -> None:
        _require_positive("alpha", self.alpha)
        _require_finite("mu2", self.mu2)
        if self.mu2 < 0:
            raise InvalidParameterError(f"mu2 must be >= 0, got {self.mu2!r}")
        _require_finite("p", self.p)


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the reduced salinity equation in dimensional units.

    beta : exchange nonlinearity strength [degC^-2]
    lam : ratio of haline contraction to thermal expansion [degC psu^-1]
    P : freshwater forcing [psu]
    theta : equilibrium temperature difference [degC]

    The reduced dynamics are dS/dt' = P - S * (1 + beta * (theta - lam*S)^2)
    with t' in diffusive time units.
    """

    beta: float
    lam: float
    P: float
    theta: float

    def __post_init__(self) -> None:
        _require_positive("beta", self.beta)
        _require_positive("lam", self.lam)
        _require_finite("P", self.P)
        _require_finite("theta", self.theta)

    def with_(self, **kwargs) -> "ModelParams":
        """Copy with selected fields replaced (e.g. ``mp.with_(theta=17)``)."""
        return replace(self, **kwargs)


#: Reference dimensional constants. Chosen so that the derived dimensionless
#: numbers land on the classic two-box values: alpha ~ 3.2e3, mu2 = 6.2 and
#: p ~ 1 at theta = 20 degC with Fbar = 2.3 m/yr.
DEFAULT_PHYSICAL = PhysicalParams(
    alpha_T=1.7e-4,
    alpha_S=7.5e-4,
    q=2.449e19,
    volume=1.0e16,
    t_d=219.0,
    t_r=25.0,
    H=4000.0,
    S0=35.0,
    Fbar=2.3,
    theta=20.0,
)

#: Named freshwater-forcing values [psu] used throughout the analyses.
#: ``bistable``/``monostable`` are the classic double-well vs single-well
#: slice at theta = 20; ``surface`` is the alternative value quoted for the
#: landscape-surface figure.
FORCING_PRESETS = {
    "bistable": 4.98,
    "monostable": 5.89,
    "surface": 4.89,
}


def derive_nondimensional(phys: PhysicalParams) -> NondimParams:
    """Collapse dimensional constants onto the dimensionless triple.

    alpha = t_d/t_r, mu2 = q*t_d*(alpha_T*theta)^2/volume and
    p = alpha_S*S0*t_d*Fbar/(alpha_T*theta*H).
    """
    alpha = phys.t_d * DAYS_PER_YEAR / phys.t_r
    mu2 = phys.q * phys.t_d * (phys.alpha_T * phys.theta) ** 2 / phys.volume
    p = (phys.alpha_S * phys.S0 * phys.t_d * phys.Fbar
         / (phys.alpha_T * phys.theta * phys.H))
    return NondimParams(alpha=alpha, mu2=mu2, p=p)


def derive_dimensional(phys: PhysicalParams) -> ModelParams:
    """Collapse dimensional constants onto the reduced-model parameters.

    beta = q*t_d*alpha_T^2/volume, lam = alpha_S/alpha_T and
    P = S0*t_d*Fbar/H; theta is copied through.
    """
    beta = phys.q * phys.t_d * phys.alpha_T**2 / phys.volume
    lam = phys.alpha_S / phys.alpha_T
    P = phys.S0 * phys.t_d * phys.Fbar / phys.H
    return ModelParams(beta=beta, lam=lam, P=P, theta=phys.theta)


def model_to_nondim(mp: ModelParams, alpha: float) -> NondimParams:
    """Bridge identities mu2 = beta*theta^2 and p = lam*P/theta.

    ``alpha`` cannot be recovered from ``ModelParams`` and must be supplied
    (it only matters for the full two-variable system).
    """
    return NondimParams(alpha=alpha, mu2=mp.beta * mp.theta**2,
                        p=mp.lam * mp.P / mp.theta)


# --- calibration -----------------------------------------------------------
#
# beta and lam are pinned by requiring that the bistable range of theta at a
# fixed forcing equals a prescribed interval. The boundary of bistability at
# fixed P is where P crosses one of the two fold curves
#
#     P_pm(theta) = m(theta) +/- w(theta),
#     m = 2*theta/(3*lam) + 2*beta*theta^3/(27*lam),
#     w = 2*(r/3)^(3/2) / (lam*sqrt(beta)),   r = beta*theta^2/3 - 1,
#
# (the same zero set as the cubic discriminant, in units of P instead of the
# badly scaled discriminant itself). Entering the wedge at theta_lo means
# P = P_plus(theta_lo); leaving at theta_hi means P = P_minus(theta_hi).


def _fold_P_residual(window_lo: float, window_hi: float, P_fixed: float,
                     beta: float, lam: float) -> np.ndarray:
    out = np.empty(2)
    for i, (th, sgn) in enumerate(((window_lo, +1.0), (window_hi, -1.0))):
        r = beta * th * th / 3.0 - 1.0
        if r <= 0:
            # window endpoint below the cusp temperature: no fold there
            out[i] = np.nan
            continue
        mid = 2.0 * th / (3.0 * lam) + 2.0 * beta * th**3 / (27.0 * lam)
        half = 2.0 * (r / 3.0) ** 1.5 / (lam * math.sqrt(beta))
        out[i] = mid + sgn * half - P_fixed
    return out


def calibrate(window_lo: float, window_hi: float, P_fixed: float,
              tol: float = 1e-6, max_iter: int = 60) -> tuple[float, float]:
    """Pin (beta, lam) so the bistable theta-window at ``P_fixed`` equals
    ``(window_lo, window_hi)``.

    Damped two-dimensional Newton on the fold-crossing residual, seeded from
    a coarse grid scan. Convergence means both window endpoints are
    reproduced to ``tol`` degC.

    Raises
    ------
    InvalidParameterError
        If the requested window is empty or non-positive.
    CalibrationError
        If Newton does not converge within ``max_iter`` iterations.
    """
    if not (0 < window_lo < window_hi):
        raise InvalidParameterError(
            f"need 0 < window_lo < window_hi, got ({window_lo!r}, {window_hi!r})")
    _require_finite("P_fixed", P_fixed)

    def resid(v: np.ndarray) -> np.ndarray:
        return _fold_P_residual(window_lo, window_hi, P_fixed, v[0], v[1])

    # Coarse scan. beta must exceed 3/window_lo^2 so that the cusp
    # temperature sqrt(3/beta) sits below the window.
    beta_min = 3.0 / window_lo**2
    betas = np.linspace(beta_min * 1.001, beta_min * 8.0, 80)
    lams = np.linspace(0.2, 15.0, 120)
    best_v, best_x = math.inf, None
    for b in betas:
        for l in lams:
            rv = resid(np.array([b, l]))
            if np.any(np.isnan(rv)):
                continue
            v = float(np.sum(np.abs(rv)))
            if v < best_v:
                best_v, best_x = v, np.array([b, l])
    if best_x is None:
        raise CalibrationError("no admissible seed in grid scan", math.inf)

    # Damped Newton with finite-difference Jacobian. The residual is in psu;
    # convert the convergence check to degC through dP/dtheta along the fold.
    x = best_x
    r_now = resid(x)
    for _ in range(max_iter):
        theta_scale = max(abs(_fold_slope(window_lo, x[0], x[1])),
                          abs(_fold_slope(window_hi, x[0], x[1])), 1e-3)
        if np.max(np.abs(r_now)) < tol * theta_scale:
            return float(x[0]), float(x[1])
        J = np.empty((2, 2))
        for j in range(2):
            dx = np.zeros(2)
            dx[j] = 1e-7 * max(1.0, abs(x[j]))
            J[:, j] = (resid(x + dx) - resid(x - dx)) / (2 * dx[j])
        try:
            step = np.linalg.solve(J, -r_now)
        except np.linalg.LinAlgError:
            raise CalibrationError("singular Jacobian",
                                   float(np.max(np.abs(r_now))))
        # Backtracking damping: keep beta above the cusp bound and shrink
        # until the residual improves.
        t = 1.0
        while t > 1e-8:
            xn = x + t * step
            if xn[0] > beta_min and xn[1] > 0:
                rn = resid(xn)
                if (not np.any(np.isnan(rn))
                        and np.sum(np.abs(rn)) < np.sum(np.abs(r_now))):
                    x, r_now = xn, rn
                    break
            t /= 2
        else:
            break
    raise CalibrationError("Newton did not converge",
                           float(np.max(np.abs(r_now))))


def _fold_slope(theta: float, beta: float, lam: float,
                eps: float = 1e-6) -> float:
    """d(mid +/- half)/dtheta, used only to convert psu residuals to degC."""
    def mid(th: float) -> float:
        return 2.0 * th / (3.0 * lam) + 2.0 * beta * th**3 / (27.0 * lam)
    return (mid(theta + eps) - mid(theta - eps)) / (2 * eps)


# --- configuration ---------------------------------------------------------

def default_config_path() -> Path:
    """Path of the packaged configuration (physical block plus the model
    block produced by ``calibrate((18.6, 22.8), 4.98)``)."""
    return Path(str(resources.files("thcbox").joinpath("data/default_config.json")))


def load_config(path: str | Path) -> tuple[PhysicalParams | None, ModelParams | None]:
    """Parse a JSON config with optional ``physical`` and ``model`` blocks."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    phys = None
    model = None
    if "physical" in raw:
        phys = PhysicalParams(**raw["physical"])
    if "model" in raw:
        blk = dict(raw["model"])
        if "lambda" in blk:
            blk["lam"] = blk.pop("lambda")
        model = ModelParams(**blk)
    if phys is None and model is None:
        raise InvalidParameterError(
            f"config {path} has neither a 'physical' nor a 'model' block")
    return phys, model


def default_model_params() -> ModelParams:
    """The packaged calibrated model parameters."""
    _, model = load_config(default_config_path())
    assert model is not None
    return model
