import numpy as np
import pytest

from dmkp_lab import (
    NormSpec,
    build_grid,
    probe_bilinear_estimate,
    probe_linear_estimate,
    probe_retarded_estimate,
)
from dmkp_lab.probes import (
    free_window_field,
    phi_window_field,
    random_band_field,
    retarded_integral_field,
)


def test_linear_probe_excludes_zero_and_is_finite(grid16, dmkp_params):
    from dmkp_lab import SpectralField

    zero = SpectralField(grid16, np.zeros(grid16.shape, complex), True)
    single = random_band_field(grid16, 2, seed=1)
    stats = probe_linear_estimate([zero, single], NormSpec(0.5, 0.0, 0.0), dmkp_params, dt=0.05)
    assert len(stats.ratios) == 1
    assert np.isfinite(stats.maximum) and stats.maximum > 0


def test_linear_probe_requires_half_b(grid16, dmkp_params):
    with pytest.raises(ValueError):
        probe_linear_estimate([], NormSpec(0.4, 0.0, 0.0), dmkp_params)


def test_linear_probe_resolution_stable(dmkp_params):
    def stats(nx, dt):
        g = build_grid(nx, nx, 2 * np.pi, 2 * np.pi)
        phis = [random_band_field(g, 5, seed=100 + i) for i in range(12)]
        return probe_linear_estimate(phis, NormSpec(0.5, 0.0, 0.0), dmkp_params, dt=dt)

    base = stats(16, 0.01)
    fine = stats(32, 0.005)
    drift = fine.maximum / base.maximum
    assert 0.5 < drift < 2.0


def test_retarded_probe_smoke_and_stability(dmkp_params):
    def stats(nx, dt, count=6):
        g = build_grid(nx, nx, 2 * np.pi, 2 * np.pi)
        ws = [
            free_window_field(random_band_field(g, 2, seed=200 + i), dmkp_params, 2.2, dt)
            for i in range(count)
        ]
        return probe_retarded_estimate(ws, 0.0, 0.0, 0.1, dmkp_params)

    base = stats(16, 0.02)
    assert np.all(np.isfinite(base.ratios)) and base.minimum > 0
    fine = stats(32, 0.01)
    drift = fine.maximum / base.maximum
    assert 0.5 < drift < 2.0


def test_retarded_probe_validates_delta(grid16, dmkp_params):
    with pytest.raises(ValueError):
        probe_retarded_estimate([], 0.0, 0.0, 0.7, dmkp_params)


def test_retarded_probe_excludes_zero_integrand(grid16, dmkp_params):
    from dmkp_lab.norms import SpaceTimeField
    from dmkp_lab.trajectory import Trajectory

    zero = SpaceTimeField(
        Trajectory(grid16, -1.0, 0.1, np.zeros((21,) + grid16.shape, complex)),
        4,
        window_applied=True,
    )
    live = free_window_field(random_band_field(grid16, 2, seed=9), dmkp_params, 2.2, 0.05)
    stats = probe_retarded_estimate([zero, live], 0.0, 0.0, 0.1, dmkp_params)
    assert len(stats.ratios) == 1


def test_retarded_integral_vanishes_for_negative_time(grid16, dmkp_params):
    w = free_window_field(random_band_field(grid16, 2, seed=3), dmkp_params, 2.2, 0.05)
    g = retarded_integral_field(w, dmkp_params)
    times = g.times()
    assert np.all(g.traj.coef[times < 0] == 0)
    i0 = int(np.argmin(np.abs(times)))
    assert np.all(g.traj.coef[i0] == 0)  # integral over [0, 0]


def test_bilinear_probe_stability(dmkp_params):
    def stats(nx, dt, count=6):
        g = build_grid(nx, nx, 2 * np.pi, 2 * np.pi)
        us = [
            free_window_field(random_band_field(g, 2, seed=300 + i), dmkp_params, 2.2, dt)
            for i in range(count)
        ]
        vs = [
            free_window_field(random_band_field(g, 2, seed=400 + i), dmkp_params, 2.2, dt)
            for i in range(count)
        ]
        return probe_bilinear_estimate(us, vs, 0.0, 0.0, 0.1, dmkp_params)

    base = stats(16, 0.02)
    fine = stats(32, 0.01)
    drift = fine.maximum / base.maximum
    assert 0.5 < drift < 2.0


def test_bilinear_phi_family_ratio_grows(dmkp_params):
    ratios = []
    for n in (8.0, 16.0, 32.0):
        u = phi_window_field(n, -0.75, dmkp_params)
        st = probe_bilinear_estimate([u], [u], -0.75, 0.0, 0.1, dmkp_params)
        ratios.append(st.maximum)
    assert ratios[0] < ratios[1] < ratios[2]
