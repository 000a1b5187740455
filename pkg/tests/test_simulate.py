import numpy as np
import pytest

import thcbox as tb
from thcbox.simulate import StepControl


def stable_states(mp):
    k = tb.tschirnhaus_shift(mp)
    eq = tb.equilibria_at(mp)
    return [s + k for s in eq.stable_roots()], \
        [s + k for s in eq.unstable_roots()]


def test_equilibrium_persistence(mp_cal):
    stables, _ = stable_states(mp_cal)
    for root in stables:
        traj = tb.integrate("reduced", root, mp_cal, 50.0)
        assert np.max(np.abs(traj.states - root)) <= 1e-6


def test_initial_conditions_split_by_the_repelling_state(mp_cal):
    stables, unstables = stable_states(mp_cal)
    assert len(stables) == 2 and len(unstables) == 1
    b = unstables[0]
    low = tb.integrate("reduced", b - 0.1, mp_cal, 200.0).final_state()
    high = tb.integrate("reduced", b + 0.1, mp_cal, 200.0).final_state()
    assert low == pytest.approx(min(stables), abs=1e-6)
    assert high == pytest.approx(max(stables), abs=1e-6)


def test_basin_dichotomy_sampled(mp_cal, rng):
    stables, unstables = stable_states(mp_cal)
    b = unstables[0]
    for S0 in rng.uniform(-1.0, 9.0, size=100):
        if abs(S0 - b) < 1e-3:
            continue
        final = tb.integrate("reduced", float(S0), mp_cal, 300.0).final_state()
        target = min(stables) if S0 < b else max(stables)
        assert final == pytest.approx(target, abs=1e-6)


def test_tightened_tolerance_tightens_the_answer(mp_cal):
    # state still in motion at t_end = 2 from S = 4
    ref = tb.integrate("reduced", 4.0, mp_cal, 2.0,
                       StepControl(rtol=1e-13, atol=1e-15)).final_state()
    loose = tb.integrate("reduced", 4.0, mp_cal, 2.0,
                         StepControl(rtol=1e-5, atol=1e-7)).final_state()
    tight = tb.integrate("reduced", 4.0, mp_cal, 2.0,
                         StepControl(rtol=1e-5 / 16, atol=1e-7 / 16)).final_state()
    assert abs(tight - ref) * 4.0 <= abs(loose - ref)


def test_step_budget_exhaustion_raises(mp_cal):
    with pytest.raises(tb.IntegrationError):
        tb.integrate("reduced", 4.0, mp_cal, 50.0,
                     StepControl(rtol=1e-12, atol=1e-14, max_steps=5))


def test_unknown_model_tag_rejected(mp_cal):
    with pytest.raises(tb.InvalidParameterError):
        tb.integrate("bogus", 1.0, mp_cal, 1.0)


def test_trajectory_invariants_enforced():
    with pytest.raises(tb.InvalidParameterError):
        tb.Trajectory(times=np.array([0.0, 0.0, 1.0]),
                      states=np.zeros(3), model_tag="reduced")
    with pytest.raises(tb.InvalidParameterError):
        tb.Trajectory(times=np.array([0.0, 1.0]),
                      states=np.array([0.0, np.inf]), model_tag="reduced")


# --- fast-slow diagnostics ----------------------------------------------------

def test_fast_variable_tracks_slaved_value():
    nd = tb.NondimParams(alpha=3.2e3, mu2=6.2, p=1.1)
    rep = tb.timescale_check(3.2e3, nd, (1.0, 0.2), 20.0)
    assert rep.x_deviation <= 10.0 / 3.2e3
    rep2 = tb.timescale_check(6.4e3, nd, (1.0, 0.2), 20.0)
    assert rep.x_deviation / rep2.x_deviation == pytest.approx(2.0, rel=0.5)


def test_two_dim_equilibrium_is_stationary():
    nd = tb.NondimParams(alpha=3.2e3, mu2=6.2, p=1.1)

    # Newton on the full system for the genuine 2-d equilibrium
    x, y = 1.0, 0.3
    for _ in range(60):
        fx, fy = tb.rhs_full_nondim((x, y), nd)
        eps = 1e-7
        j00 = (tb.rhs_full_nondim((x + eps, y), nd)[0] - fx) / eps
        j01 = (tb.rhs_full_nondim((x, y + eps), nd)[0] - fx) / eps
        j10 = (tb.rhs_full_nondim((x + eps, y), nd)[1] - fy) / eps
        j11 = (tb.rhs_full_nondim((x, y + eps), nd)[1] - fy) / eps
        det = j00 * j11 - j01 * j10
        x -= (j11 * fx - j01 * fy) / det
        y -= (-j10 * fx + j00 * fy) / det
    assert np.hypot(*tb.rhs_full_nondim((x, y), nd)) < 1e-12

    traj = tb.integrate("full_nondim", (x, y), nd, 10.0)
    assert np.max(np.abs(traj.states - traj.states[0])) < 1e-7


def test_reduction_error_shrinks_with_alpha():
    nd = tb.NondimParams(alpha=1.0, mu2=6.2, p=1.1)
    reports = [tb.timescale_check(a, nd, (1.0, 0.2), 20.0)
               for a in (1e2, 1e3, 1e4)]
    devs = [r.x_deviation for r in reports]
    diss = [r.y_discrepancy for r in reports]
    assert devs[0] > devs[1] > devs[2]
    assert diss[0] > diss[1] > diss[2]


# --- quasi-static sweeps ------------------------------------------------------

def test_sweep_without_fold_crossing_is_reversible(mp_cal):
    stables, _ = stable_states(mp_cal.with_(theta=19.5))
    start = max(stables)
    up = tb.sweep_quasistatic("theta", 19.5, 21.5, 100, 50.0, mp_cal, start)
    down = tb.sweep_quasistatic("theta", 21.5, 19.5, 100, 50.0, mp_cal,
                                float(up.attractor_states[-1]))
    assert up.jump_events == ()
    assert down.jump_events == ()
    assert down.attractor_states[-1] == pytest.approx(
        up.attractor_states[0], abs=1e-6)


def test_monostable_ramp_has_no_jumps(mp_cal):
    rec = tb.sweep_quasistatic("P", 1.0, 2.5, 100, 30.0,
                               mp_cal.with_(theta=10.0), 1.0)
    assert rec.jump_events == ()


def test_jump_location_converges_to_the_fold(mp_cal):
    window = tb.bistability_window_theta(4.98, mp_cal)
    fold = window[1]
    errs = []
    for n_steps, settle in ((60, 20.0), (400, 60.0)):
        rec = tb.sweep_quasistatic("theta", 20.0, 24.0, n_steps, settle,
                                   mp_cal, 4.8)
        assert len(rec.jump_events) == 1
        errs.append(abs(rec.jump_events[0][0] - fold))
    assert errs[1] < errs[0]


def test_depressed_trajectory_is_shifted_reduced_trajectory(mp_cal):
    k = tb.tschirnhaus_shift(mp_cal)
    dc = tb.depressed_coeffs(mp_cal)
    red = tb.integrate("reduced", 4.0, mp_cal, 20.0)
    dep = tb.integrate("depressed", 4.0 - k, dc, 20.0)
    assert np.max(np.abs((dep.states + k) - red.states)) <= 1e-5


# --- pulse experiments --------------------------------------------------------

def test_zero_amplitude_pulse_never_tips(mp_cal):
    stables, _ = stable_states(mp_cal)
    pulse = tb.PulseForcing(base_P=mp_cal.P, amplitude=0.0, t_on=5.0,
                            t_off=15.0)
    result = tb.simulate_pulse(pulse, mp_cal, stables[1], 100.0)
    assert not result.tipped
    assert not result.monostable_warning


def test_pulse_amplitude_threshold_by_bisection(mp_cal):
    # sitting on the low-salinity attractor, a strong enough freshening
    # pulse removes that basin and the state crosses the repelling boundary
    stables, _ = stable_states(mp_cal)
    start = min(stables)
    duration = 10.0

    def tips(amplitude: float) -> bool:
        pulse = tb.PulseForcing(base_P=mp_cal.P, amplitude=amplitude,
                                t_on=1.0, t_off=1.0 + duration)
        return tb.simulate_pulse(pulse, mp_cal, start, 200.0).tipped

    lo, hi = 0.0, 12.0
    assert not tips(lo) and tips(hi)
    for _ in range(14):
        mid = 0.5 * (lo + hi)
        if tips(mid):
            hi = mid
        else:
            lo = mid
    assert not tips(max(lo - 0.3, 0.0))
    assert tips(hi + 0.3)


def test_short_pulse_does_not_tip(mp_cal):
    stables, _ = stable_states(mp_cal)
    pulse = tb.PulseForcing(base_P=mp_cal.P, amplitude=3.0, t_on=1.0,
                            t_off=1.02)
    result = tb.simulate_pulse(pulse, mp_cal, min(stables), 100.0)
    assert not result.tipped


def test_monostable_pulse_flagged(mp_cal):
    mp = mp_cal.with_(theta=17.0)
    pulse = tb.PulseForcing(base_P=mp.P, amplitude=1.0, t_on=1.0, t_off=5.0)
    result = tb.simulate_pulse(pulse, mp, 4.4, 50.0)
    assert not result.tipped
    assert result.monostable_warning


def test_pulse_validation():
    with pytest.raises(tb.InvalidParameterError):
        tb.PulseForcing(base_P=4.98, amplitude=1.0, t_on=5.0, t_off=5.0)
