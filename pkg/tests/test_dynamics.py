import numpy as np
import pytest

import thcbox as tb
from thcbox.dynamics import reduced_nondim_cubic_coeffs
from thcbox.simulate import StepControl
from oracles import scan_roots


def rand_model(rng) -> tb.ModelParams:
    return tb.ModelParams(beta=rng.uniform(0.01, 10),
                          lam=rng.uniform(0.01, 10),
                          P=rng.uniform(0, 8),
                          theta=rng.uniform(0, 30))


# --- full nondimensional system ---------------------------------------------

def test_equilibrium_on_critical_manifold():
    nd = tb.NondimParams(alpha=100.0, mu2=6.2, p=1.1)
    ys = scan_roots(lambda y: nd.p - y * (1 + nd.mu2 * (1 - y) ** 2), -2, 4)
    assert ys
    for y in ys:
        dx, dy = tb.rhs_full_nondim((1.0, y), nd)
        # x = 1 kills the relaxation term but not the exchange term, so only
        # the y-equation balances exactly there
        assert abs(dy) < 1e-9


def test_pure_linear_decay_without_exchange():
    nd = tb.NondimParams(alpha=50.0, mu2=0.0, p=0.0)
    for y in (-1.0, 0.3, 2.0):
        dx, dy = tb.rhs_full_nondim((1.0, y), nd)
        assert dy == pytest.approx(-y, rel=1e-15)


def test_rhs_matches_finite_difference_of_flow_map():
    # integrator self-consistency: the tight-tolerance flow map's centered
    # difference reproduces the vector field at a generic point
    nd = tb.NondimParams(alpha=30.0, mu2=6.2, p=1.1)
    state = (0.9, 0.4)
    dt = 1e-4
    ctrl = StepControl(rtol=1e-12, atol=1e-14)
    fwd = tb.integrate("full_nondim", state, nd, dt, ctrl, n_samples=2).final_state()
    # backward flow via time reversal is not available; use two forward steps
    mid = tb.integrate("full_nondim", state, nd, 2 * dt, ctrl, n_samples=3)
    fd = (mid.states[2] - np.asarray(state)) / (2 * dt)
    exact = np.asarray(tb.rhs_full_nondim(mid.states[1], nd))
    assert np.allclose(fd, exact, rtol=1e-6, atol=1e-6)
    assert np.allclose((np.asarray(fwd) - state) / dt,
                       tb.rhs_full_nondim(state, nd), rtol=1e-3, atol=1e-3)


# --- dimensional system and pullback ----------------------------------------

def test_pullback_consistency_between_forms(rng):
    for _ in range(50):
        mp = rand_model(rng)
        if mp.theta <= 0:
            mp = mp.with_(theta=mp.theta + 1.0)
        alpha = rng.uniform(10, 5000)
        nd = tb.model_to_nondim(mp, alpha)
        x, y = rng.uniform(-2, 2), rng.uniform(-2, 2)
        dT, dS = mp.theta * x, mp.theta * y / mp.lam
        dx, dy = tb.rhs_full_nondim((x, y), nd)
        dT_dot, dS_dot = tb.rhs_full_dim((dT, dS), mp, alpha)
        assert dT_dot == pytest.approx(mp.theta * dx, rel=1e-12, abs=1e-12)
        assert dS_dot == pytest.approx(mp.theta / mp.lam * dy, rel=1e-12,
                                       abs=1e-12)


def test_slaved_temperature_reduces_to_scalar_equation(rng, mp_cal):
    for _ in range(50):
        dS = rng.uniform(-5, 10)
        _, dS_dot = tb.rhs_full_dim((mp_cal.theta, dS), mp_cal, alpha=3200.0)
        assert dS_dot == tb.rhs_reduced(dS, mp_cal)


def test_slaved_state_is_quasi_equilibrium_at_large_alpha(mp_cal):
    # at the slaved point (theta, S*) the salinity equation balances exactly
    # and the temperature pull is O(1/alpha) in the settled state
    k = tb.tschirnhaus_shift(mp_cal)
    S_star = tb.equilibria_at(mp_cal).stable_roots()[0] + k
    assert tb.rhs_reduced(S_star, mp_cal) == pytest.approx(0.0, abs=1e-9)
    alpha = 1e6
    traj = tb.integrate("full_dim", (mp_cal.theta, S_star), mp_cal, 1.0,
                        alpha=alpha, n_samples=51)
    drift = np.max(np.abs(traj.states - traj.states[0]), axis=0)
    assert drift[0] < 1e-4
    assert drift[1] < 1e-4


# --- reduced equations -------------------------------------------------------

def test_reduced_at_origin_returns_forcing(rng):
    for _ in range(20):
        mp = rand_model(rng)
        assert tb.rhs_reduced(0.0, mp) == mp.P


def test_reduced_vanishes_at_solver_roots(mp_cal, rng):
    for _ in range(100):
        mp = rand_model(rng)
        k = tb.tschirnhaus_shift(mp)
        eq = tb.equilibria_at(mp)
        for rt in eq.roots:
            val = tb.rhs_reduced(rt.s + k, mp)
            assert abs(val) <= 1e-10 * (1 + abs(mp.P))


def test_three_zeros_in_the_bistable_slice(mp_cal):
    mp = mp_cal.with_(theta=20.0, P=4.98)
    roots = scan_roots(lambda S: tb.rhs_reduced(S, mp), -2.0, 12.0, n=20001)
    assert len(roots) == 3


def test_reduced_nondim_unit_equilibrium():
    nd = tb.NondimParams(alpha=1.0, mu2=6.2, p=1.0)
    assert tb.rhs_reduced_nondim(1.0, nd) == 0.0
    nd0 = tb.NondimParams(alpha=1.0, mu2=6.2, p=0.0)
    assert tb.rhs_reduced_nondim(0.0, nd0) == 0.0


def test_reduced_nondim_zero_counts_inside_and_outside_window():
    # mu2 = 6.2 is a convenient classic value; get its bistable p-interval
    # from the equivalent unit-parameter model, then scan zero counts
    mp_equiv = tb.ModelParams(beta=6.2, lam=1.0, P=1.0, theta=1.0)
    window = tb.bistability_window_P(1.0, mp_equiv)
    assert window is not None
    p_in = 0.5 * (window[0] + window[1])
    p_out = window[1] + 0.5
    for p, expected in ((p_in, 3), (p_out, 1)):
        nd = tb.NondimParams(alpha=1.0, mu2=6.2, p=p)
        zeros = scan_roots(lambda y: tb.rhs_reduced_nondim(y, nd), 0.0, 2.0,
                           n=20001)
        assert len(zeros) == expected


# --- shift and depressed form -----------------------------------------------

def test_shift_examples():
    assert tb.tschirnhaus_shift(
        tb.ModelParams(beta=1.0, lam=2.0, P=0.0, theta=3.0)) == 1.0
    assert tb.tschirnhaus_shift(
        tb.ModelParams(beta=1.0, lam=2.0, P=0.0, theta=0.0)) == 0.0


def test_shift_kills_quadratic_coefficient(rng):
    # polynomial-coefficient extraction at Chebyshev-spaced sample points
    for _ in range(30):
        mp = rand_model(rng)
        k = tb.tschirnhaus_shift(mp)
        nodes = np.cos(np.pi * (2 * np.arange(1, 8) - 1) / 14) * 3.0
        vals = tb.rhs_reduced(nodes + k, mp)
        coeffs = np.polynomial.polynomial.polyfit(nodes, vals, 3)
        scale = np.max(np.abs(coeffs)) + 1.0
        assert abs(coeffs[2]) <= 1e-9 * scale


def test_depressed_coeff_examples(mp_cal):
    dc = tb.depressed_coeffs(tb.ModelParams(beta=3.0, lam=1.0, P=0.0, theta=0.0))
    assert (dc.r, dc.h, dc.c3) == (-1.0, 0.0, 3.0)

    theta_cusp = np.sqrt(3.0 / mp_cal.beta)
    dc = tb.depressed_coeffs(mp_cal.with_(theta=theta_cusp))
    assert abs(dc.r) <= 1e-12

    P_cusp = 8.0 / (3.0 * mp_cal.lam * np.sqrt(3.0 * mp_cal.beta))
    dc = tb.depressed_coeffs(mp_cal.with_(theta=theta_cusp, P=P_cusp))
    assert abs(dc.h) <= 1e-12


def test_depressed_rhs_examples():
    dc = tb.DepressedCubic(r=1.0, h=0.0, c3=1.0)
    assert tb.rhs_depressed(1.0, dc) == 0.0
    dc = tb.DepressedCubic(r=0.3, h=0.7, c3=2.0)
    assert tb.rhs_depressed(0.0, dc) == 0.7


def test_shift_equivalence_on_grid(rng):
    s = np.linspace(-5.0, 5.0, 1000)
    for _ in range(100):
        mp = rand_model(rng)
        k = tb.tschirnhaus_shift(mp)
        dc = tb.depressed_coeffs(mp)
        lhs = tb.rhs_depressed(s, dc)
        rhs = tb.rhs_reduced(s + k, mp)
        assert np.all(np.abs(lhs - rhs) <= 1e-12 * (1.0 + np.abs(rhs)))


def test_depressed_root_sum_is_zero(mp_cal):
    eq = tb.equilibria_at(mp_cal)
    assert eq.n_distinct == 3
    assert abs(sum(rt.s for rt in eq.roots)) <= 1e-9
