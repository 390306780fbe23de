import numpy as np
import pytest

from dmkp_lab import (
    ModelParams,
    SimState,
    SimulationUnstable,
    SpectralField,
    apply_semigroup,
    apply_unitary,
    build_grid,
    dealias,
    forward,
    inverse,
    l2_norm,
    nonlinear_rhs,
    project_zero_x_mode,
    simulate,
    step_ifrk4,
)
from dmkp_lab.initial_data import gaussian_field
from dmkp_lab.probes import random_band_field
from dmkp_lab.propagator import energy_dissipation_rate, x_derivative_norms
from dmkp_lab.io import five_point_derivative


def _unit_mode(grid, j, k):
    coef = np.zeros(grid.shape, dtype=np.complex128)
    coef[k % grid.ny, j % grid.nx] = 1.0
    return SpectralField(grid, coef, zero_x_mean=True)


def test_semigroup_identity_at_zero(grid8, dmkp_params):
    f = random_band_field(grid8, 2, seed=0)
    assert np.array_equal(apply_semigroup(f, 0.0, dmkp_params).coef, f.coef)


def test_semigroup_single_mode(grid8, dmkp_params):
    # mode (2, 0): rho = 12, P = 8
    f = _unit_mode(grid8, 2, 0)
    g = apply_semigroup(f, 0.1, dmkp_params)
    assert g.coef[0, 2] == pytest.approx(np.exp(-1.2) * np.exp(0.8j), rel=1e-13)


def test_semigroup_composition(grid16, dmkp_params):
    f = random_band_field(grid16, 4, seed=1)
    a = apply_semigroup(apply_semigroup(f, 0.07, dmkp_params), 0.05, dmkp_params)
    b = apply_semigroup(f, 0.12, dmkp_params)
    assert np.max(np.abs(a.coef - b.coef)) < 1e-12 * np.max(np.abs(b.coef))


def test_unitary_properties(grid16, dmkp_params):
    f = random_band_field(grid16, 4, seed=2)
    u = apply_unitary(f, 0.3, dmkp_params)
    assert l2_norm(u) == pytest.approx(l2_norm(f), rel=1e-12)
    back = apply_unitary(u, -0.3, dmkp_params)
    assert np.max(np.abs(back.coef - f.coef)) < 1e-12 * np.max(np.abs(f.coef))
    p_none = ModelParams.kp()
    w = apply_semigroup(f, 0.3, p_none)
    u2 = apply_unitary(f, 0.3, p_none)
    assert np.max(np.abs(w.coef - u2.coef)) == 0.0


def test_nonlinear_rhs_zero_and_cosine(grid8):
    p0 = ModelParams.dmkp(beta=0.0)
    zero = SpectralField(grid8, np.zeros(grid8.shape, complex), True)
    assert np.all(nonlinear_rhs(zero, p0).coef == 0)
    X, _ = grid8.meshgrid()
    f = project_zero_x_mode(forward(grid8, np.cos(X)))
    out = inverse(nonlinear_rhs(f, p0))
    assert np.max(np.abs(out + 0.5 * np.sin(2 * X))) < 1e-13


def test_nonlinear_rhs_finite_difference_oracle(grid32):
    # band-3 data so the 8th-order FD oracle on the 4x finer grid resolves it
    p = ModelParams.dmkp(beta=1.0)
    f = random_band_field(grid32, 3, seed=3)
    fine = build_grid(128, 128, 2 * np.pi, 2 * np.pi)
    # coefficients are grid-independent under the integral convention
    coef = np.zeros(fine.shape, dtype=np.complex128)
    for k in range(grid32.ny):
        for j in range(grid32.nx):
            coef[grid32.jy[k] % fine.ny, grid32.jx[j] % fine.nx] = f.coef[k, j]
    w = inverse(SpectralField(fine, coef)) ** 2
    h = fine.lx / fine.nx
    c1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
    c2 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])
    dx = sum(c1[i] * np.roll(w, 4 - i, axis=1) for i in range(9)) / h
    dxx = sum(c2[i] * np.roll(w, 4 - i, axis=1) for i in range(9)) / h**2
    oracle = 0.5 * dx + p.beta * dxx
    got = inverse(nonlinear_rhs(f, p))
    scale = np.max(np.abs(oracle))
    assert np.max(np.abs(got - oracle[::4, ::4])) < 1e-6 * scale


def test_step_zero_field(grid8, dmkp_params):
    zero = SpectralField(grid8, np.zeros(grid8.shape, complex), True)
    out = step_ifrk4(SimState(0.0, zero, dmkp_params, 0.01))
    assert np.all(out.field.coef == 0)
    assert out.time == pytest.approx(0.01)


def test_linear_only_step_is_exact_semigroup(grid16, dmkp_params):
    f = random_band_field(grid16, 4, seed=4)
    n, dt = 40, 0.01
    state = SimState(0.0, f, dmkp_params, dt)
    for _ in range(n):
        state = step_ifrk4(state, include_nonlinearity=False)
    exact = apply_semigroup(f, n * dt, dmkp_params)
    assert np.max(np.abs(state.field.coef - exact.coef)) < 1e-12 * np.max(np.abs(exact.coef))


def test_temporal_order_fourth(grid32):
    p = ModelParams.dmkp(beta=1.0)
    phi = project_zero_x_mode(dealias(gaussian_field(grid32, 0.5, 0.8)))
    T = 0.4
    finals = {}
    for n in (40, 80, 160, 320):
        finals[n] = simulate(phi, T, T / n, p).field.coef
    e1 = np.sqrt(np.sum(np.abs(finals[40] - finals[80]) ** 2))
    e2 = np.sqrt(np.sum(np.abs(finals[80] - finals[160]) ** 2))
    e3 = np.sqrt(np.sum(np.abs(finals[160] - finals[320]) ** 2))
    order = np.log2(e2 / e3)
    assert 3.5 <= order <= 4.5, (np.log2(e1 / e2), order)


def test_energy_balance_small_run(grid32):
    p0 = ModelParams.dmkp(beta=0.0)
    phi = project_zero_x_mode(dealias(gaussian_field(grid32, 0.01, 1.0)))
    dt = 5e-4
    es, rates, l2s = [], [], []

    def obs(st):
        es.append(0.5 * l2_norm(st.field) ** 2)
        rates.append(energy_dissipation_rate(st.field, p0))
        l2s.append(l2_norm(st.field))

    simulate(phi, 0.2, dt, p0, observer=obs)
    lhs = five_point_derivative(np.asarray(es), dt)
    resid = np.abs(lhs - np.asarray(rates)) / np.asarray(l2s) ** 2
    assert resid.max() < 1e-6


def test_energy_rate_matches_derivative_norms(grid16):
    p0 = ModelParams.dmkp(beta=0.0, alpha=0.7)
    f = random_band_field(grid16, 4, seed=5)
    ux2, uxx2 = x_derivative_norms(f)
    assert energy_dissipation_rate(f, p0) == pytest.approx(-0.7 * (uxx2 - ux2), rel=1e-12)


def test_unitary_limit_conserves_l2(grid32):
    p = ModelParams.kp()
    phi = random_band_field(grid32, 3, seed=6, amplitude=0.05)
    st = simulate(phi, 1.0, 1e-3, p)
    phi0 = project_zero_x_mode(dealias(phi))
    assert abs(l2_norm(st.field) - l2_norm(phi0)) < 1e-10 * l2_norm(phi0)


def test_kdv_ks_stays_bounded():
    # regression baseline for the 1D preset
    p = ModelParams.kdv_ks(alpha=1.0)
    g = build_grid(64, 1, 2 * np.pi, 2 * np.pi)
    phi = random_band_field(g, 4, seed=13, amplitude=0.1)
    st = simulate(phi, 10.0, 2e-3, p)
    assert l2_norm(st.field) < 1.0  # recorded: 0.0477 at first implementation


def test_simulate_validates_dt(grid8, dmkp_params):
    phi = random_band_field(grid8, 2, seed=7)
    with pytest.raises(ValueError):
        simulate(phi, 1.0, 0.3, dmkp_params)


def test_instability_detected():
    g = build_grid(32, 32, 2 * np.pi, 2 * np.pi)
    p = ModelParams.dmkp(beta=1.0)
    phi = random_band_field(g, 8, seed=8, amplitude=50.0)
    with pytest.raises(SimulationUnstable):
        simulate(phi, 5.0, 0.05, p)


def test_observer_cadence(grid8, dmkp_params):
    phi = random_band_field(grid8, 2, seed=9, amplitude=0.01)
    seen = []
    simulate(phi, 0.1, 0.01, dmkp_params, observer=lambda s: seen.append(s.time), observe_every=3)
    assert seen[0] == 0.0 and seen[-1] == pytest.approx(0.1)
    assert len(seen) == 2 + 3  # t=0, steps 3,6,9, final 10


def test_zero_x_mean_preserved(grid16, dmkp_params):
    phi = random_band_field(grid16, 4, seed=10, amplitude=0.1)
    st = simulate(phi, 0.05, 1e-3, dmkp_params)
    assert np.max(np.abs(st.field.coef[:, 0])) == 0.0
