import json
from dataclasses import replace

import numpy as np
import pytest

import thcbox as tb
from thcbox.params import DAYS_PER_YEAR, DEFAULT_PHYSICAL, load_config
from oracles import scan_roots


def test_alpha_is_timescale_ratio_in_consistent_units():
    nd = tb.derive_nondimensional(DEFAULT_PHYSICAL)
    assert nd.alpha == pytest.approx(219.0 * DAYS_PER_YEAR / 25.0, rel=1e-15)
    # strong separation of timescales: order 10^3
    assert 1e3 < nd.alpha < 1e4


def test_nondim_forcing_near_unity():
    # theta = 20, Fbar = 2.3 m/yr with the reference constants
    nd = tb.derive_nondimensional(DEFAULT_PHYSICAL)
    assert 0.9 < nd.p < 1.1


def test_zero_transport_gives_zero_mu2():
    nd = tb.derive_nondimensional(replace(DEFAULT_PHYSICAL, q=0.0))
    assert nd.mu2 == 0.0


def test_equal_expansion_coefficients_give_unit_lambda():
    phys = replace(DEFAULT_PHYSICAL, alpha_S=DEFAULT_PHYSICAL.alpha_T)
    assert tb.derive_dimensional(phys).lam == 1.0


def test_bridge_identities(rng):
    for _ in range(200):
        phys = tb.PhysicalParams(
            alpha_T=rng.uniform(1e-5, 1e-3),
            alpha_S=rng.uniform(1e-5, 1e-3),
            q=rng.uniform(1e17, 1e21),
            volume=rng.uniform(1e14, 1e18),
            t_d=rng.uniform(10, 1000),
            t_r=rng.uniform(1, 100),
            H=rng.uniform(100, 10000),
            S0=rng.uniform(5, 50),
            Fbar=rng.uniform(0.1, 10),
            theta=rng.uniform(1, 40),
        )
        nd = tb.derive_nondimensional(phys)
        mp = tb.derive_dimensional(phys)
        assert abs(nd.mu2 - mp.beta * mp.theta**2) <= 1e-12 * abs(nd.mu2)
        assert abs(nd.p - mp.lam * mp.P / mp.theta) <= 1e-12 * abs(nd.p)


def test_volume_doubling_halves_beta_only():
    mp = tb.derive_dimensional(DEFAULT_PHYSICAL)
    mp2 = tb.derive_dimensional(
        replace(DEFAULT_PHYSICAL, volume=2 * DEFAULT_PHYSICAL.volume))
    assert mp2.beta == pytest.approx(mp.beta / 2, rel=1e-15)
    assert mp2.lam == mp.lam
    assert mp2.P == mp.P


def test_transport_volume_scale_consistency():
    mp = tb.derive_dimensional(DEFAULT_PHYSICAL)
    scaled = replace(DEFAULT_PHYSICAL, q=3.7 * DEFAULT_PHYSICAL.q,
                     volume=3.7 * DEFAULT_PHYSICAL.volume)
    assert tb.derive_dimensional(scaled).beta == pytest.approx(mp.beta, rel=1e-14)


def test_nonpositive_inputs_rejected():
    with pytest.raises(tb.InvalidParameterError):
        replace(DEFAULT_PHYSICAL, t_d=-1.0)
    with pytest.raises(tb.InvalidParameterError):
        replace(DEFAULT_PHYSICAL, H=0.0)
    with pytest.raises(tb.InvalidParameterError):
        replace(DEFAULT_PHYSICAL, q=-1.0)
    with pytest.raises(tb.InvalidParameterError):
        tb.ModelParams(beta=0.0, lam=1.0, P=1.0, theta=1.0)
    with pytest.raises(tb.InvalidParameterError):
        tb.NondimParams(alpha=1.0, mu2=-0.5, p=1.0)


def test_calibrate_round_trips_through_the_window():
    beta, lam = tb.calibrate(18.6, 22.8, 4.98)
    mp = tb.ModelParams(beta=beta, lam=lam, P=4.98, theta=20.0)
    window = tb.bistability_window_theta(4.98, mp)
    assert window is not None
    assert window[0] == pytest.approx(18.6, abs=1e-5)
    assert window[1] == pytest.approx(22.8, abs=1e-5)


def test_calibrate_matches_packaged_config(mp_cal):
    beta, lam = tb.calibrate(18.6, 22.8, 4.98)
    assert beta == pytest.approx(mp_cal.beta, rel=1e-9)
    assert lam == pytest.approx(mp_cal.lam, rel=1e-9)


def test_calibrated_window_verified_by_independent_root_count_scan(mp_cal):
    # count equilibria of the reduced equation on a dense state scan and
    # locate the 1 <-> 3 transitions in theta by bisection on the count
    def n_roots(theta: float) -> int:
        m = mp_cal.with_(theta=theta)
        return len(scan_roots(lambda S: tb.rhs_reduced(S, m), -2.0, 12.0,
                              n=20001))

    assert n_roots(18.5) == 1
    assert n_roots(18.7) == 3
    assert n_roots(22.7) == 3
    assert n_roots(22.9) == 1

    def count_boundary(lo: float, hi: float) -> float:
        n_lo = n_roots(lo)
        for _ in range(40):
            mid = 0.5 * (lo + hi)
            if n_roots(mid) == n_lo:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    assert count_boundary(18.5, 18.7) == pytest.approx(18.6, abs=1e-3)
    assert count_boundary(22.7, 22.9) == pytest.approx(22.8, abs=1e-3)


def test_calibrated_cusp_sits_below_the_window(mp_cal):
    # three roots at the window floor require a positive linear coefficient
    assert np.sqrt(3.0 / mp_cal.beta) < 18.6
    assert mp_cal.beta * 18.6**2 / 3.0 - 1.0 > 0.0


def test_calibrate_rejects_degenerate_window():
    with pytest.raises(tb.InvalidParameterError):
        tb.calibrate(20.0, 20.0, 4.98)
    with pytest.raises(tb.InvalidParameterError):
        tb.calibrate(22.8, 18.6, 4.98)


def test_forcing_presets_expose_both_quoted_values():
    assert tb.FORCING_PRESETS["bistable"] == 4.98
    assert tb.FORCING_PRESETS["surface"] == 4.89
    assert tb.FORCING_PRESETS["monostable"] == 5.89


def test_config_model_block_overrides_physical(tmp_path):
    cfg = {
        "physical": {
            "alpha_T": 1.7e-4, "alpha_S": 7.5e-4, "q": 2.449e19,
            "volume": 1e16, "t_d": 219.0, "t_r": 25.0, "H": 4000.0,
            "S0": 35.0, "Fbar": 2.3, "theta": 20.0,
        },
        "model": {"beta": 0.02, "lambda": 4.0, "P": 5.0, "theta": 19.0},
    }
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    phys, model = load_config(path)
    assert phys is not None and model is not None
    assert model.beta == 0.02
    assert model.lam == 4.0
    # physical block still resolves independently
    assert tb.derive_dimensional(phys).P == pytest.approx(35 * 219 * 2.3 / 4000)


def test_config_requires_some_block(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}")
    with pytest.raises(tb.InvalidParameterError):
        load_config(path)
