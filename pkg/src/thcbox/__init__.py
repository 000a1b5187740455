"""Bifurcation toolkit for a two-box model of the thermohaline circulation.

The freshwater forcing P and the equilibrium temperature difference theta
are treated as joint control parameters of the reduced salinity dynamics.
The package computes equilibria and their stability, the discriminant
surface and its zero contour, fold (saddle-node) curves, the organizing
cusp point, bistability windows, potential landscapes, and quasi-static
hysteresis sweeps, and exports everything as deterministic CSV/JSON through
the ``thcbox`` command line.
"""

__version__ = "0.1.0"

from .params import (  # noqa: F401
    DEFAULT_PHYSICAL,
    FORCING_PRESETS,
    ModelParams,
    NondimParams,
    PhysicalParams,
    calibrate,
    default_model_params,
    derive_dimensional,
    derive_nondimensional,
    model_to_nondim,
)
from .dynamics import (  # noqa: F401
    DepressedCubic,
    StateDim,
    StateND,
    depressed_coeffs,
    rhs_depressed,
    rhs_full_dim,
    rhs_full_nondim,
    rhs_reduced,
    rhs_reduced_nondim,
    tschirnhaus_shift,
)
from .bifurcation import (  # noqa: F401
    CuspPoint,
    EquilibriumSet,
    FoldCurves,
    FoldPoint,
    bistability_window_P,
    bistability_window_theta,
    cusp_point,
    discriminant,
    discriminant_grid,
    equilibria_at,
    equilibrium_branch,
    fold_thetas_at_state,
    solve_cubic,
    trace_fold_curves,
)
from .potential import (  # noqa: F401
    ExtremaReport,
    extrema,
    landscape_grid,
    potential_dim,
    potential_nondim,
)
from .simulate import (  # noqa: F401
    PulseForcing,
    PulseResult,
    StepControl,
    SweepRecord,
    Trajectory,
    integrate,
    simulate_pulse,
    sweep_quasistatic,
    timescale_check,
)
from .errors import (  # noqa: F401
    CalibrationError,
    IntegrationError,
    InternalConsistencyError,
    InvalidParameterError,
    ThcboxError,
)
