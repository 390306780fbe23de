"""Empirical ratio probes for the linear, retarded and bilinear estimates.

Each probe evaluates norm ratios LHS/RHS over an ensemble. The estimates
assert boundedness with non-explicit constants, so the testable statement
is resolution stability of the ratio statistics (and, in the out-of-range
regime, growth of the ratio along the data family), never absolute values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cutoff import theta, theta_scaled
from .grid import SpectralField, SpectralGrid, build_grid, hermitian_part
from .illposed import RectangleData, phi_field
from .norms import NormSpec, SpaceTimeField, bourgain_norm
from .picard import duhamel
from .symbols import ModelParams, dispersion, dissipation, lambda_symbol
from .trajectory import Trajectory


@dataclass
class RatioStats:
    ratios: np.ndarray

    @property
    def minimum(self) -> float:
        return float(np.min(self.ratios))

    @property
    def median(self) -> float:
        return float(np.median(self.ratios))

    @property
    def maximum(self) -> float:
        return float(np.max(self.ratios))


def random_band_field(
    grid: SpectralGrid, band: int, seed: int, amplitude: float = 1.0
) -> SpectralField:
    """Random real field supported on modes |j|, |k| <= band, x-mean zero."""
    rng = np.random.default_rng(seed)
    coef = np.zeros(grid.shape, dtype=np.complex128)
    sel = (np.abs(grid.jx[None, :]) <= band) & (np.abs(grid.jy[:, None]) <= band)
    coef[sel] = rng.standard_normal(int(sel.sum())) + 1j * rng.standard_normal(int(sel.sum()))
    coef = hermitian_part(grid, coef) * amplitude
    coef[:, 0] = 0.0
    coef[grid.nyquist_mask] = 0.0
    return SpectralField(grid, coef, zero_x_mean=True)


def symmetric_times(t_w: float, dt: float) -> np.ndarray:
    n_half = int(np.ceil(t_w / dt))
    return dt * np.arange(-n_half, n_half + 1)


def free_window_field(
    phi: SpectralField,
    params: ModelParams,
    t_w: float,
    dt: float,
    pad_factor: int = 4,
    cutoff_scale: float = 1.0,
) -> SpaceTimeField:
    """theta(t/scale) W(t) phi sampled on the symmetric window [-t_w, t_w]."""
    g = phi.grid
    times = symmetric_times(t_w, dt)
    p = dispersion(g.xi2d, g.eta2d, params)
    r = dissipation(g.xi2d, params)
    mult = np.exp(
        1j * times[:, None, None] * p[None, :, :] - np.abs(times)[:, None, None] * r[None, :, :]
    )
    window = np.asarray(theta_scaled(times, cutoff_scale))
    coef = window[:, None, None] * mult * phi.coef[None, :, :]
    traj = Trajectory(g, float(times[0]), dt, coef)
    return SpaceTimeField(traj, pad_factor, window_applied=True)


def probe_linear_estimate(
    phis: list[SpectralField],
    spec: NormSpec,
    params: ModelParams,
    t_w: float = 2.2,
    dt: float = 0.02,
    pad_factor: int = 4,
) -> RatioStats:
    """||theta W phi||_{X^{1/2,s1,s2}} / ||phi||_{H^{s1,s2}} over an ensemble."""
    if abs(spec.b - 0.5) > 1e-12:
        raise ValueError("the free-evolution estimate probe requires b = 1/2")
    from .norms import sobolev_norm

    ratios = []
    for phi in phis:
        f = free_window_field(phi, params, t_w, dt, pad_factor)
        rhs = sobolev_norm(phi, spec.s1, spec.s2)
        if rhs == 0:
            continue  # zero data is excluded from the statistic
        ratios.append(bourgain_norm(f, spec, params) / rhs)
    return RatioStats(np.asarray(ratios))


def retarded_integral_field(w: SpaceTimeField, params: ModelParams) -> SpaceTimeField:
    """theta(t) chi_{t>=0} int_0^t W(t-t') w(t') dt' on w's window."""
    tr = w.traj
    times = tr.times()
    i0 = int(np.argmin(np.abs(times)))
    if abs(times[i0]) > 1e-9 * tr.dt + 1e-300:
        raise ValueError("retarded probe needs a window containing t = 0 as a node")
    w_pos = Trajectory(tr.grid, 0.0, tr.dt, tr.coef[i0:])
    y = duhamel(w_pos, params)
    coef = np.zeros_like(tr.coef)
    window = np.asarray(theta(times[i0:]))
    coef[i0:] = window[:, None, None] * y.coef
    return SpaceTimeField(Trajectory(tr.grid, tr.t0, tr.dt, coef), w.pad_factor, window_applied=True)


def probe_retarded_estimate(
    ws: list[SpaceTimeField],
    s1: float,
    s2: float,
    delta: float,
    params: ModelParams,
) -> RatioStats:
    """Retarded Duhamel smoothing ratio: X^{1/2,s1,s2} of the cut integral
    against X^{-1/2+delta, s1-4delta, s2} of the integrand."""
    if not 0 < delta <= 0.5:
        raise ValueError("delta must lie in (0, 1/2]")
    lhs_spec = NormSpec(0.5, s1, s2)
    rhs_spec = NormSpec(-0.5 + delta, s1 - 4 * delta, s2)
    ratios = []
    for w in ws:
        rhs = bourgain_norm(w, rhs_spec, params)
        if rhs == 0:
            continue
        g = retarded_integral_field(w, params)
        ratios.append(bourgain_norm(g, lhs_spec, params) / rhs)
    return RatioStats(np.asarray(ratios))


def product_lambda_field(u: SpaceTimeField, v: SpaceTimeField, params: ModelParams) -> SpaceTimeField:
    """Node-wise Lambda(u*v): dealiased physical product times the lambda
    multiplier, x-mean projected."""
    g = u.grid
    scale = g.nx * g.ny / (g.lx * g.ly)
    pu = np.fft.ifft2(u.traj.coef, axes=(1, 2)).real * scale
    pv = np.fft.ifft2(v.traj.coef, axes=(1, 2)).real * scale
    prod = np.fft.fft2(pu * pv, axes=(1, 2)) * g.cell_area
    prod = np.where(g.dealias_mask[None, :, :], prod, 0.0)
    prod *= lambda_symbol(g.xi2d, params)[None, :, :]
    prod[:, :, 0] = 0.0
    traj = Trajectory(g, u.traj.t0, u.traj.dt, prod)
    return SpaceTimeField(traj, u.pad_factor, window_applied=u.window_applied and v.window_applied)


def probe_bilinear_estimate(
    us: list[SpaceTimeField],
    vs: list[SpaceTimeField],
    s1: float,
    s2: float,
    delta: float,
    params: ModelParams,
) -> RatioStats:
    """||Lambda(uv)||_{X^{-1/2+delta, s1-4delta, s2}} / (||u|| ||v||), both
    factors in X^{1/2,s1,s2}; u, v must be time-windowed."""
    lhs_spec = NormSpec(-0.5 + delta, s1 - 4 * delta, s2)
    rhs_spec = NormSpec(0.5, s1, s2)
    ratios = []
    for u, v in zip(us, vs):
        ru = bourgain_norm(u, rhs_spec, params)
        rv = bourgain_norm(v, rhs_spec, params)
        if ru == 0 or rv == 0:
            continue
        prod = product_lambda_field(u, v, params)
        ratios.append(bourgain_norm(prod, lhs_spec, params) / (ru * rv))
    return RatioStats(np.asarray(ratios))


def phi_window_field(
    n: float,
    s: float,
    params: ModelParams,
    nx: int = 48,
    ny: int = 48,
    pad_factor: int = 4,
    oversample: float = 5.0,
) -> SpaceTimeField:
    """Data-family member windowed at its natural time scale T = N^-4.

    The grid periods are scaled (lx = 8pi/N, ly = 2pi/N^2) so the rectangle
    edges sit on the wavenumber lattice; dt resolves the full populated
    bandwidth, which the T = N^-4 window keeps at O(100) nodes for every N.
    """
    grid = build_grid(nx, ny, 8 * np.pi / n, 2 * np.pi / n**2)
    phi = phi_field(RectangleData(n, s), grid)
    mask = np.abs(phi.coef) > 0
    rate = float(
        np.max(
            np.abs(dispersion(grid.xi2d, grid.eta2d, params))[mask]
            + np.abs(dissipation(grid.xi2d, params))[mask]
        )
    )
    t_scale = float(n**-4.0)
    dt = np.pi / (oversample * 2.0 * rate)
    return free_window_field(phi, params, 2 * t_scale, dt, pad_factor, cutoff_scale=t_scale)
