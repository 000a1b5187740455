import numpy as np
import pytest

import thcbox as tb
from thcbox.simulate import StepControl


@pytest.fixture(scope="session")
def mp_cal() -> tb.ModelParams:
    """The packaged calibrated model parameters (window (18.6, 22.8) at
    P = 4.98); a dedicated test checks they match a fresh calibration."""
    return tb.default_model_params()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260809)


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile the stepping kernels once so timed tests measure math, not JIT
    mp = tb.ModelParams(beta=1.0, lam=1.0, P=0.5, theta=1.0)
    tb.integrate("reduced", 0.1, mp, 1.0, StepControl(), n_samples=3)
    tb.integrate("full_nondim", (1.0, 0.1),
                 tb.NondimParams(alpha=10.0, mu2=1.0, p=0.5), 1.0,
                 StepControl(), n_samples=3)
