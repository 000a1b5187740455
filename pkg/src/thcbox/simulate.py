"""Time integration, quasi-static hysteresis sweeps, and pulse experiments.

The quasi-static protocol is step-and-settle: hold the parameter, integrate
the reduced model for a fixed settle time from the previous settled state,
record, step the parameter, repeat. This makes the adiabatic limit explicit
and keeps detected jump locations attributable to fold crossings rather than
ramp-rate delay.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .dynamics import (DepressedCubic, reduced_cubic_coeffs,
                       reduced_nondim_cubic_coeffs, tschirnhaus_shift)
from .errors import IntegrationError, InvalidParameterError
from .params import ModelParams, NondimParams
from . import bifurcation

__all__ = [
    "StepControl",
    "Trajectory",
    "SweepRecord",
    "PulseForcing",
    "PulseResult",
    "TimescaleReport",
    "integrate",
    "timescale_check",
    "sweep_quasistatic",
    "simulate_pulse",
]

MODEL_TAGS = ("full_nondim", "full_dim", "reduced", "depressed")


@dataclass(frozen=True)
class StepControl:
    """Tolerances and budget for the embedded pair integrator."""

    rtol: float = 1e-8
    atol: float = 1e-10
    max_steps: int = 5_000_000
    h0: float = 0.0  # <= 0 means automatic

    def __post_init__(self) -> None:
        if not (self.rtol > 0 and self.atol > 0):
            raise InvalidParameterError("rtol and atol must be > 0")


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: times strictly increasing, states finite.

    ``states`` has shape (n,) for the scalar models and (n, 2) for the full
    two-variable models.
    """

    times: np.ndarray
    states: np.ndarray
    model_tag: str

    def __post_init__(self) -> None:
        t = np.asarray(self.times)
        if t.ndim != 1 or np.any(np.diff(t) <= 0):
            raise InvalidParameterError("times must be strictly increasing")
        if not np.all(np.isfinite(self.states)):
            raise InvalidParameterError("states must be finite")

    def final_state(self):
        return self.states[-1]


def _raise_for_status(status: int, model_tag: str) -> None:
    if status == _kernels.OK:
        return
    if status == _kernels.UNDERFLOW:
        raise IntegrationError(
            f"step size underflow integrating '{model_tag}'; the timescale "
            "ratio may be too stiff for an explicit method - use the "
            "reduced model")
    if status == _kernels.MAXSTEPS:
        raise IntegrationError(
            f"step budget exhausted integrating '{model_tag}'")
    raise IntegrationError(f"non-finite state integrating '{model_tag}'")


def _cubic_path(coeffs, y0: float, t_eval: np.ndarray, ctrl: StepControl,
                tag: str) -> np.ndarray:
    c0, c1, c2, c3 = coeffs
    out, status, _ = _kernels.cubic_dense(
        c0, c1, c2, c3, float(y0), float(t_eval[0]), t_eval,
        ctrl.rtol, ctrl.atol, ctrl.max_steps, ctrl.h0)
    _raise_for_status(status, tag)
    return out


def _cubic_final(coeffs, y0: float, t0: float, t_end: float,
                 ctrl: StepControl, tag: str) -> float:
    c0, c1, c2, c3 = coeffs
    t_eval = np.array([t0, t_end]) if t_end > t0 else np.array([t_end])
    _, status, y = _kernels.cubic_dense(
        c0, c1, c2, c3, float(y0), float(t0), t_eval,
        ctrl.rtol, ctrl.atol, ctrl.max_steps, ctrl.h0)
    _raise_for_status(status, tag)
    return float(y)


def integrate(model_tag: str, initial_state, params, t_end: float,
              step_control: StepControl | None = None, n_samples: int = 501,
              alpha: float | None = None) -> Trajectory:
    """Integrate one of the four model levels over [0, t_end].

    ``params`` is a ModelParams (tags 'reduced' and 'full_dim'), a
    NondimParams ('full_nondim'), or a DepressedCubic ('depressed'). The
    full dimensional system additionally needs the timescale ratio
    ``alpha``. Dense output at ``n_samples`` uniformly spaced times.
    """
    if model_tag not in MODEL_TAGS:
        raise InvalidParameterError(
            f"unknown model tag {model_tag!r}; expected one of {MODEL_TAGS}")
    if not (t_end > 0 and math.isfinite(t_end)):
        raise InvalidParameterError(f"t_end must be positive, got {t_end!r}")
    if n_samples < 2:
        raise InvalidParameterError("n_samples must be >= 2")
    ctrl = step_control or StepControl()
    t_eval = np.linspace(0.0, t_end, n_samples)

    if model_tag in ("reduced", "depressed"):
        y0 = float(np.asarray(initial_state).reshape(()))
        if not math.isfinite(y0):
            raise InvalidParameterError("initial state must be finite")
        if model_tag == "reduced":
            if not isinstance(params, ModelParams):
                raise InvalidParameterError("'reduced' expects ModelParams")
            coeffs = reduced_cubic_coeffs(params)
        else:
            if not isinstance(params, DepressedCubic):
                raise InvalidParameterError("'depressed' expects DepressedCubic")
            coeffs = (params.h, params.r, 0.0, -params.c3)
        states = _cubic_path(coeffs, y0, t_eval, ctrl, model_tag)
        return Trajectory(times=t_eval, states=states, model_tag=model_tag)

    u0, v0 = (float(initial_state[0]), float(initial_state[1]))
    if not (math.isfinite(u0) and math.isfinite(v0)):
        raise InvalidParameterError("initial state must be finite")
    if model_tag == "full_nondim":
        if not isinstance(params, NondimParams):
            raise InvalidParameterError("'full_nondim' expects NondimParams")
        a, theta, beta, lam, P = params.alpha, 1.0, params.mu2, 1.0, params.p
    else:
        if not isinstance(params, ModelParams):
            raise InvalidParameterError("'full_dim' expects ModelParams")
        if alpha is None:
            raise InvalidParameterError("'full_dim' needs the alpha ratio")
        a, theta, beta, lam, P = alpha, params.theta, params.beta, params.lam, params.P
    out, status, _, _ = _kernels.twobox_dense(
        a, theta, beta, lam, P, u0, v0, 0.0, t_eval,
        ctrl.rtol, ctrl.atol, ctrl.max_steps, ctrl.h0)
    _raise_for_status(status, model_tag)
    return Trajectory(times=t_eval, states=out, model_tag=model_tag)


@dataclass(frozen=True)
class TimescaleReport:
    """Fast-slow diagnostics: how well the fast variable tracks its slaved
    value, and how far the full model's slow variable strays from the
    reduced model's."""

    x_deviation: float
    y_discrepancy: float


def timescale_check(alpha: float, nd: NondimParams, initial_state,
                    t_end: float, n_samples: int = 2001,
                    step_control: StepControl | None = None) -> TimescaleReport:
    """Integrate the full nondimensional system at the given alpha, drop the
    transient t' < 10/alpha, and report sup|x - 1| plus the sup-difference
    between full and reduced y from the same initial y."""
    if alpha <= 0:
        raise InvalidParameterError("alpha must be > 0")
    if t_end <= 10.0 / alpha:
        raise InvalidParameterError(
            "t_end must exceed the transient cutoff 10/alpha")
    nd_a = NondimParams(alpha=alpha, mu2=nd.mu2, p=nd.p)
    full = integrate("full_nondim", initial_state, nd_a, t_end,
                     step_control=step_control, n_samples=n_samples)
    ctrl = step_control or StepControl()
    y_red = _cubic_path(reduced_nondim_cubic_coeffs(nd_a),
                        float(initial_state[1]), full.times, ctrl, "reduced")
    keep = full.times >= 10.0 / alpha
    x_dev = float(np.max(np.abs(full.states[keep, 0] - 1.0)))
    y_dis = float(np.max(np.abs(full.states[keep, 1] - y_red[keep])))
    return TimescaleReport(x_deviation=x_dev, y_discrepancy=y_dis)


@dataclass(frozen=True)
class SweepRecord:
    """Step-and-settle ramp record.

    ``jump_events`` holds (param_value, from_state, to_state) for every
    settled-state change exceeding the jump threshold.
    """

    param_values: np.ndarray
    attractor_states: np.ndarray
    jump_events: tuple[tuple[float, float, float], ...] = field(default_factory=tuple)


def sweep_quasistatic(sweep_param: str, start: float, stop: float,
                      n_steps: int, settle_time: float, mp: ModelParams,
                      initial_state: float, jump_factor: float = 10.0,
                      jump_floor: float = 1e-6,
                      step_control: StepControl | None = None) -> SweepRecord:
    """Quasi-static ramp of theta or P with jump detection.

    At each of ``n_steps`` ramp values the reduced model is integrated for
    ``settle_time`` from the previous settled state. A jump is a settled
    state change larger than ``jump_factor`` times the median step-to-step
    drift (with an absolute floor so a perfectly flat sweep stays quiet).
    """
    if sweep_param not in ("theta", "P"):
        raise InvalidParameterError(f"unknown sweep parameter {sweep_param!r}")
    if n_steps < 2:
        raise InvalidParameterError("n_steps must be >= 2")
    if not settle_time > 0:
        raise InvalidParameterError("settle_time must be > 0")
    ctrl = step_control or StepControl()
    values = np.linspace(start, stop, n_steps)
    settled = np.empty(n_steps)
    state = float(initial_state)
    for i, v in enumerate(values):
        m = mp.with_(theta=float(v)) if sweep_param == "theta" \
            else mp.with_(P=float(v))
        state = _cubic_final(reduced_cubic_coeffs(m), state, 0.0,
                             settle_time, ctrl, "reduced")
        settled[i] = state
    drifts = np.abs(np.diff(settled))
    threshold = max(jump_factor * statistics.median(drifts), jump_floor) \
        if drifts.size else math.inf
    # Branch motion steepens as a fold is approached, so several consecutive
    # steps can exceed the threshold for a single transition; each maximal
    # run collapses to one event at its largest drift.
    above = drifts > threshold
    events = []
    i = 0
    while i < drifts.size:
        if above[i]:
            j = i
            while j + 1 < drifts.size and above[j + 1]:
                j += 1
            kmax = i + int(np.argmax(drifts[i:j + 1]))
            events.append((float(values[kmax + 1]), float(settled[kmax]),
                           float(settled[kmax + 1])))
            i = j + 1
        else:
            i += 1
    return SweepRecord(param_values=values, attractor_states=settled,
                       jump_events=tuple(events))


@dataclass(frozen=True)
class PulseForcing:
    """Piecewise-constant forcing: base_P plus ``amplitude`` on [t_on, t_off)."""

    base_P: float
    amplitude: float
    t_on: float
    t_off: float

    def __post_init__(self) -> None:
        for name in ("base_P", "amplitude", "t_on", "t_off"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if not self.t_on < self.t_off:
            raise InvalidParameterError("need t_on < t_off")


@dataclass(frozen=True)
class PulseResult:
    trajectory: Trajectory
    tipped: bool
    monostable_warning: bool = False


def simulate_pulse(pulse: PulseForcing, mp: ModelParams, initial_state: float,
                   t_end: float, n_samples: int = 1001,
                   step_control: StepControl | None = None) -> PulseResult:
    """Integrate the reduced model under a forcing pulse and report tipping.

    Basins are defined at the base parameters by the repelling equilibrium;
    ``tipped`` is true when the final settled state lies on the other side
    of it than the initial state. If the base parameters are monostable
    there is no second basin: tipped is forced false and flagged.
    """
    if not (0.0 <= pulse.t_on and pulse.t_off <= t_end):
        raise InvalidParameterError("pulse must lie within [0, t_end]")
    ctrl = step_control or StepControl()
    base_mp = mp.with_(P=pulse.base_P)
    t_eval = np.linspace(0.0, t_end, n_samples)
    states = np.empty(n_samples)
    legs = ((0.0, pulse.t_on, pulse.base_P),
            (pulse.t_on, pulse.t_off, pulse.base_P + pulse.amplitude),
            (pulse.t_off, t_end, pulse.base_P))
    state = float(initial_state)
    for t0, t1, P in legs:
        if t1 <= t0:
            continue
        mask = (t_eval >= t0) & (t_eval <= t1)
        coeffs = reduced_cubic_coeffs(base_mp.with_(P=P))
        seg_times = np.concatenate(([t0], t_eval[mask], [t1]))
        seg_times = np.unique(seg_times)
        seg = _cubic_path(coeffs, state, seg_times, ctrl, "reduced")
        states[mask] = np.interp(t_eval[mask], seg_times, seg)
        state = float(seg[-1])

    k = tschirnhaus_shift(base_mp)
    eq = bifurcation.equilibria_at(base_mp)
    unstable = eq.unstable_roots()
    if not unstable:
        return PulseResult(
            trajectory=Trajectory(times=t_eval, states=states,
                                  model_tag="reduced"),
            tipped=False, monostable_warning=True)
    boundary = unstable[0] + k
    tipped = (float(initial_state) - boundary) * (state - boundary) < 0
    return PulseResult(
        trajectory=Trajectory(times=t_eval, states=states, model_tag="reduced"),
        tipped=bool(tipped))
