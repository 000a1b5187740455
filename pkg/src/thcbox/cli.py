"""Command-line interface: every analysis as a subcommand with CSV/JSON output.

Output contract: identical inputs and tool version produce byte-identical
files. Floats are written with Python's shortest round-trip representation;
CSV files use a single header row, comma delimiter, LF line endings and no
quoting. Every invocation writes a manifest JSON next to its primary output
recording the fully resolved parameters.

Exit codes: 0 success, 2 usage error, 3 numerical failure, 4 empty result.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, bifurcation, potential, simulate
from .dynamics import depressed_coeffs, tschirnhaus_shift
from .errors import (CalibrationError, IntegrationError,
                     InvalidParameterError, ThcboxError)
from .params import (ModelParams, NondimParams, calibrate,
                     default_config_path, derive_dimensional,
                     derive_nondimensional, load_config, model_to_nondim)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_EMPTY = 4

ENV_CONFIG = "THC_CONFIG"


def _fmt(x) -> str:
    """Shortest round-trip decimal for floats; plain str otherwise."""
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8",
                    newline="\n")


class _Resolved:
    """Parameters after config file and flag overrides.

    ``alpha`` is None when neither a physical config block nor --alpha
    provided it (it cannot be recovered from the model block alone).
    """

    def __init__(self, mp: ModelParams, alpha: float | None, config_path: str):
        self.mp = mp
        self.alpha = alpha
        self.config_path = config_path
        self.mu2 = mp.beta * mp.theta**2
        self.p = mp.lam * mp.P / mp.theta if mp.theta != 0 else None

    def nd(self) -> NondimParams:
        if self.alpha is None:
            raise InvalidParameterError(
                "the timescale ratio is unresolved; give --alpha or a "
                "config with a physical block")
        return model_to_nondim(self.mp, self.alpha)


def _resolve(args) -> _Resolved:
    cfg = args.config or os.environ.get(ENV_CONFIG) or str(default_config_path())
    phys, model = load_config(cfg)
    if model is None:
        model = derive_dimensional(phys)
    overrides = {}
    if args.beta is not None:
        overrides["beta"] = args.beta
    if args.lam is not None:
        overrides["lam"] = args.lam
    if args.p is not None:
        overrides["P"] = args.p
    if args.theta is not None:
        overrides["theta"] = args.theta
    if overrides:
        model = model.with_(**overrides)
    if args.alpha is not None:
        alpha = args.alpha
    elif phys is not None:
        alpha = derive_nondimensional(phys).alpha
    else:
        alpha = None
    return _Resolved(model, alpha, cfg)


def _manifest(res: _Resolved, command: str, outputs: list[Path]) -> None:
    primary = outputs[0]
    manifest_path = primary.with_name(primary.stem + ".manifest.json")
    obj = {
        "command": command,
        "config_path": str(res.config_path),
        "resolved_params": {
            "model": {
                "beta": res.mp.beta,
                "lambda": res.mp.lam,
                "P": res.mp.P,
                "theta": res.mp.theta,
            },
            "nondim": {
                "alpha": res.alpha,
                "mu2": res.mu2,
                "p": res.p,
            },
        },
        "output_paths": [str(p) for p in outputs],
        "tool_version": __version__,
    }
    _write_json(manifest_path, obj)


def _parse_range(text: str) -> tuple[float, float]:
    try:
        a, b = text.split(":")
        return float(a), float(b)
    except ValueError:
        raise InvalidParameterError(f"expected a range 'a:b', got {text!r}")


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise InvalidParameterError(f"expected a grid 'NxM', got {text!r}")


# --- subcommands -------------------------------------------------------------

def _cmd_equilibria(args) -> int:
    res = _resolve(args)
    eq = bifurcation.equilibria_at(res.mp)
    k = tschirnhaus_shift(res.mp)
    out = Path(args.out or "equilibria.json")
    obj = {
        "theta": eq.theta,
        "P": eq.P,
        "shift": k,
        "roots": [
            {"s": rt.s, "delta_S": rt.s + k, "multiplicity": rt.multiplicity,
             "stability": rt.stability}
            for rt in eq.roots
        ],
    }
    _write_json(out, obj)
    _manifest(res, "equilibria", [out])
    return EXIT_OK


def _cmd_discriminant(args) -> int:
    res = _resolve(args)
    t_range = _parse_range(args.theta_range)
    p_range = _parse_range(args.p_range)
    n_t, n_p = _parse_grid(args.grid)
    grid = bifurcation.discriminant_grid(t_range, p_range, n_t, n_p, res.mp)
    out = Path(args.out or "discriminant.csv")
    rows = ((grid.thetas[i], grid.Ps[j], grid.delta[i, j])
            for i in range(n_t) for j in range(n_p))
    _write_csv(out, ["theta", "P", "delta"], rows)
    contour_out = out.with_name(out.stem + "_contour.csv")
    _write_csv(contour_out, ["theta", "P"],
               ((pt[0], pt[1]) for line in grid.contour for pt in line))
    _manifest(res, "discriminant", [out, contour_out])
    return EXIT_OK


def _cmd_folds(args) -> int:
    res = _resolve(args)
    s_range = _parse_range(args.s_range)
    curves = bifurcation.trace_fold_curves(res.mp, s_range, args.n)
    out = Path(args.out or "folds.csv")
    rows = [("lower", fp.s_star, fp.theta_c, fp.P_c) for fp in curves.lower]
    rows += [("upper", fp.s_star, fp.theta_c, fp.P_c) for fp in curves.upper]
    _write_csv(out, ["branch", "s_star", "theta_c", "P_c"], rows)
    _manifest(res, "folds", [out])
    return EXIT_OK


def _cmd_cusp(args) -> int:
    res = _resolve(args)
    cp = bifurcation.cusp_point(res.mp)
    out = Path(args.out or "cusp.json")
    _write_json(out, {"theta_cusp": cp.theta_cusp, "P_cusp": cp.P_cusp,
                      "S_c": cp.S_c})
    _manifest(res, "cusp", [out])
    return EXIT_OK


def _cmd_window(args) -> int:
    res = _resolve(args)
    try:
        name, _, value_text = args.fix.partition("=")
        value = float(value_text)
    except ValueError:
        raise InvalidParameterError(
            f"--fix expects 'theta=V' or 'p=V', got {args.fix!r}")
    name = name.strip().lower()
    if name == "p":
        window = bifurcation.bistability_window_theta(value, res.mp)
    elif name == "theta":
        window = bifurcation.bistability_window_P(value, res.mp)
    else:
        raise InvalidParameterError(
            f"--fix expects 'theta' or 'p', got {name!r}")
    out = Path(args.out or "window.json")
    _write_json(out, {"window": list(window) if window else None})
    _manifest(res, "window", [out])
    return EXIT_OK if window else EXIT_EMPTY


def _cmd_potential(args) -> int:
    res = _resolve(args)
    lo, hi = _parse_range(args.y_range)
    coords = np.linspace(lo, hi, args.n)
    V = potential.potential_dim(coords, res.mp)
    rep = potential.extrema(res.mp)
    gauge = min((v for _, v in rep.minima), default=float(np.min(V)))
    out = Path(args.out or "potential.csv")
    _write_csv(out, ["coord", "V"], zip(coords, V - gauge))
    _manifest(res, "potential", [out])
    return EXIT_OK


def _cmd_landscape(args) -> int:
    res = _resolve(args)
    axis = "P" if args.axis.lower() == "p" else args.axis
    coord_range = _parse_range(args.coord_range)
    param_range = _parse_range(args.param_range)
    grid = potential.landscape_grid(axis, coord_range, param_range,
                                    args.n_coord, args.n_param, res.mp)
    out = Path(args.out or "landscape.csv")
    rows = ((grid.coords[i], grid.params[j], grid.V[i, j],
             grid.branch_flag[i, j])
            for j in range(len(grid.params)) for i in range(len(grid.coords)))
    _write_csv(out, ["coord", "param", "V", "branch_flag"], rows)
    _manifest(res, "landscape", [out])
    return EXIT_OK


def _cmd_simulate(args) -> int:
    res = _resolve(args)
    ic = [float(v) for v in args.ic.split(",")]
    tag = args.model
    extra_stdout = None
    if args.pulse is not None:
        if tag != "reduced":
            raise InvalidParameterError("--pulse runs on the reduced model")
        amp, t_on, t_off = (float(v) for v in args.pulse.split(","))
        pulse = simulate.PulseForcing(base_P=res.mp.P, amplitude=amp,
                                      t_on=t_on, t_off=t_off)
        result = simulate.simulate_pulse(pulse, res.mp, ic[0], args.t_end,
                                         n_samples=args.n_samples)
        traj = result.trajectory
        extra_stdout = json.dumps({"tipped": result.tipped,
                                   "monostable_warning": result.monostable_warning})
    elif tag in ("reduced", "depressed"):
        params = res.mp if tag == "reduced" else depressed_coeffs(res.mp)
        traj = simulate.integrate(tag, ic[0], params, args.t_end,
                                  n_samples=args.n_samples)
    else:
        if len(ic) != 2:
            raise InvalidParameterError("full models need '--ic a,b'")
        if tag == "full_nondim":
            traj = simulate.integrate(tag, ic, res.nd(), args.t_end,
                                      n_samples=args.n_samples)
        else:
            nd = res.nd()  # raises with a usable message if alpha is missing
            traj = simulate.integrate(tag, ic, res.mp, args.t_end,
                                      n_samples=args.n_samples, alpha=nd.alpha)
    out = Path(args.out or "trajectory.csv")
    if traj.states.ndim == 1:
        _write_csv(out, ["t", "state1"], zip(traj.times, traj.states))
    else:
        _write_csv(out, ["t", "state1", "state2"],
                   zip(traj.times, traj.states[:, 0], traj.states[:, 1]))
    _manifest(res, "simulate", [out])
    if extra_stdout is not None:
        print(extra_stdout)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    res = _resolve(args)
    param = "P" if args.param.lower() == "p" else args.param
    if args.ic is not None:
        state0 = args.ic
    else:
        # default to a settled state at the ramp start
        m0 = res.mp.with_(**{param: args.start})
        eq = bifurcation.equilibria_at(m0)
        k = tschirnhaus_shift(m0)
        stables = [s + k for s in eq.stable_roots()]
        state0 = stables[0] if stables else 0.0
    rec = simulate.sweep_quasistatic(param, args.start, args.stop, args.steps,
                                     args.settle, res.mp, state0)
    jump_params = {ev[0] for ev in rec.jump_events}
    out = Path(args.out or "sweep.csv")
    rows = ((v, rec.attractor_states[i], 1 if float(v) in jump_params else 0)
            for i, v in enumerate(rec.param_values))
    _write_csv(out, ["param", "settled_state", "jump"], rows)
    _manifest(res, "sweep", [out])
    return EXIT_OK


def _cmd_calibrate(args) -> int:
    res = _resolve(args)
    if args.p is None:
        raise InvalidParameterError("calibrate needs --p (the fixed forcing)")
    try:
        lo, hi = (float(v) for v in args.window.split(","))
    except ValueError:
        raise InvalidParameterError(
            f"--window expects 'lo,hi', got {args.window!r}")
    beta, lam = calibrate(lo, hi, args.p)
    out = Path(args.out or "calibration.json")
    _write_json(out, {"beta": beta, "lambda": lam})
    _manifest(res, "calibrate", [out])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="thcbox",
        description="Bifurcation analyses of a two-box thermohaline "
                    "circulation model with the temperature gradient and "
                    "freshwater forcing as joint controls.")
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config path (default: "
                        f"${ENV_CONFIG} or the packaged calibration)")
    common.add_argument("--beta", type=float, help="override model beta")
    common.add_argument("--lambda", dest="lam", type=float,
                        help="override model lambda")
    common.add_argument("--p", type=float, help="override forcing P")
    common.add_argument("--theta", type=float, help="override theta")
    common.add_argument("--alpha", type=float,
                        help="override the timescale ratio")
    common.add_argument("--out", help="output path (default per command)")

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("equilibria", parents=[common],
                        help="equilibrium set at (theta, P)")
    sp.set_defaults(func=_cmd_equilibria)

    sp = sub.add_parser("discriminant", parents=[common],
                        help="discriminant grid and zero contour")
    sp.add_argument("--theta-range", required=True, metavar="a:b")
    sp.add_argument("--p-range", required=True, metavar="a:b")
    sp.add_argument("--grid", default="200x200", metavar="NxM")
    sp.set_defaults(func=_cmd_discriminant)

    sp = sub.add_parser("folds", parents=[common], help="fold curves")
    sp.add_argument("--s-range", required=True, metavar="a:b")
    sp.add_argument("--n", type=int, default=400)
    sp.set_defaults(func=_cmd_folds)

    sp = sub.add_parser("cusp", parents=[common], help="cusp point")
    sp.set_defaults(func=_cmd_cusp)

    sp = sub.add_parser("window", parents=[common],
                        help="bistability window with one parameter fixed")
    sp.add_argument("--fix", required=True, metavar="theta=V|p=V")
    sp.set_defaults(func=_cmd_window)

    sp = sub.add_parser("potential", parents=[common],
                        help="potential cross-section")
    sp.add_argument("--y-range", required=True, metavar="a:b")
    sp.add_argument("--n", type=int, default=501)
    sp.set_defaults(func=_cmd_potential)

    sp = sub.add_parser("landscape", parents=[common],
                        help="potential surface over (state, parameter)")
    sp.add_argument("--axis", required=True, choices=["theta", "p", "P"])
    sp.add_argument("--coord-range", required=True, metavar="a:b")
    sp.add_argument("--param-range", required=True, metavar="a:b")
    sp.add_argument("--n-coord", type=int, default=201)
    sp.add_argument("--n-param", type=int, default=201)
    sp.set_defaults(func=_cmd_landscape)

    sp = sub.add_parser("simulate", parents=[common], help="time integration")
    sp.add_argument("--model", default="reduced",
                    choices=list(simulate.MODEL_TAGS))
    sp.add_argument("--ic", required=True, metavar="a[,b]")
    sp.add_argument("--t-end", type=float, required=True)
    sp.add_argument("--n-samples", type=int, default=501)
    sp.add_argument("--pulse", metavar="amp,on,off",
                    help="piecewise-constant forcing pulse (reduced model)")
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("sweep", parents=[common],
                        help="quasi-static ramp with jump detection")
    sp.add_argument("--param", required=True, choices=["theta", "p", "P"])
    sp.add_argument("--from", dest="start", type=float, required=True)
    sp.add_argument("--to", dest="stop", type=float, required=True)
    sp.add_argument("--steps", type=int, default=500)
    sp.add_argument("--settle", type=float, default=50.0)
    sp.add_argument("--ic", type=float,
                    help="initial state (default: a settled state at the start)")
    sp.set_defaults(func=_cmd_sweep)

    sp = sub.add_parser("calibrate", parents=[common],
                        help="pin (beta, lambda) from a theta window at the "
                             "forcing given by --p")
    sp.add_argument("--window", required=True, metavar="lo,hi")
    sp.set_defaults(func=_cmd_calibrate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CalibrationError, IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ThcboxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
