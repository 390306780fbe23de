"""Discrete anisotropic Sobolev and space-time (Bourgain-type) norms.

Brackets follow <x> = 1 + |x|, applied to the modulus for the complex
weight: <i*sigma + rho> = 1 + sqrt(sigma^2 + rho^2), sigma = tau - P(zeta).

The time transform of a windowed trajectory is the zero-padded DFT with the
integral normalization f_hat(tau) = dt * sum_j f(t_j) exp(-i t_j tau), so
time Parseval sum |f_hat|^2 dtau = 2*pi * sum |f(t_j)|^2 dt holds exactly
and the b = 0 norm collapses onto the time-integrated Sobolev norm up to
the documented 2*pi.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SpectralField
from .symbols import ModelParams, dispersion, dissipation
from .trajectory import Trajectory


@dataclass(frozen=True)
class NormSpec:
    b: float
    s1: float
    s2: float


@dataclass
class SpaceTimeField:
    """Trajectory on a symmetric window plus time-transform metadata.

    window_applied must be set (a compactly supported cutoff was applied)
    before any space-time norm is taken.
    """

    traj: Trajectory
    pad_factor: int = 4
    window_applied: bool = False

    @property
    def grid(self):
        return self.traj.grid

    def times(self) -> np.ndarray:
        return self.traj.times()


def sobolev_weights(grid, s1: float, s2: float) -> np.ndarray:
    return (1.0 + np.abs(grid.xi2d)) ** s1 * (1.0 + np.abs(grid.eta2d)) ** s2


def sobolev_norm(f: SpectralField, s1: float, s2: float) -> float:
    """Weighted l2 of the coefficients with mode-cell quadrature weights.

    At s1 = s2 = 0 this equals 2*pi times the real-space L2 norm (the
    fixed constant of the transform convention).
    """
    g = f.grid
    w = sobolev_weights(g, s1, s2)
    return float(np.sqrt(np.sum(w**2 * np.abs(f.coef) ** 2) * g.dxi * g.deta))


def time_transform(f: SpaceTimeField) -> tuple[np.ndarray, np.ndarray]:
    """(tau grid, f_hat(tau, zeta)) of the zero-padded windowed trajectory.

    f_hat has shape (L, ny, nx) with L = pad_factor * nt.
    """
    if f.pad_factor < 4:
        raise ValueError("pad_factor must be >= 4")
    tr = f.traj
    nt = len(tr)
    length = f.pad_factor * nt
    padded = np.zeros((length,) + tr.grid.shape, dtype=np.complex128)
    padded[:nt] = tr.coef
    fhat = np.fft.fft(padded, axis=0) * tr.dt
    tau = 2.0 * np.pi * np.fft.fftfreq(length, d=tr.dt)
    # phase for the window origin t0 (fft assumes samples start at t = 0)
    fhat *= np.exp(-1j * tr.t0 * tau)[:, None, None]
    return tau, fhat


def _require_windowed(f: SpaceTimeField) -> None:
    if not f.window_applied:
        raise ValueError("space-time norms require a time-windowed field (window_applied)")


def bourgain_norm(f: SpaceTimeField, spec: NormSpec, params: ModelParams) -> float:
    """Dissipative Bourgain norm: l2 of <i*sigma + rho>^b <xi>^s1 <eta>^s2 f_hat
    over the discrete (tau, zeta) lattice with its quadrature weights."""
    _require_windowed(f)
    tau, fhat = time_transform(f)
    g = f.grid
    p = dispersion(g.xi2d, g.eta2d, params)
    r = dissipation(g.xi2d, params)
    sigma = tau[:, None, None] - p[None, :, :]
    wt = (1.0 + np.sqrt(sigma**2 + r[None, :, :] ** 2)) ** spec.b
    ws = sobolev_weights(g, spec.s1, spec.s2)[None, :, :]
    dtau = 2.0 * np.pi / (len(tau) * f.traj.dt)
    total = np.sum((wt * ws) ** 2 * np.abs(fhat) ** 2) * dtau * g.dxi * g.deta
    return float(np.sqrt(total))


def time_sobolev_at_mode(
    f: SpaceTimeField,
    zeta: tuple[float, float],
    b: float,
    params: ModelParams,
    shift_by_dispersion: bool = False,
) -> float:
    """Single-mode time norm ||<i*tau + rho(xi)>^b f_hat(tau, zeta)||_{L2_tau}.

    With shift_by_dispersion the weight uses tau - P(zeta) instead of tau,
    which is the per-mode factor of the Bourgain norm.
    """
    _require_windowed(f)
    g = f.grid
    jx = np.where(np.isclose(g.xi, zeta[0], rtol=0, atol=1e-9 * max(1.0, abs(zeta[0]))))[0]
    jy = np.where(np.isclose(g.eta, zeta[1], rtol=0, atol=1e-9 * max(1.0, abs(zeta[1]))))[0]
    if len(jx) != 1 or len(jy) != 1:
        raise ValueError(f"zeta = {zeta} is not a grid mode")
    tr = f.traj
    nt = len(tr)
    length = f.pad_factor * nt
    series = np.zeros(length, dtype=np.complex128)
    series[:nt] = tr.coef[:, jy[0], jx[0]]
    tau = 2.0 * np.pi * np.fft.fftfreq(length, d=tr.dt)
    fhat = np.fft.fft(series) * tr.dt * np.exp(-1j * tr.t0 * tau)
    freq = tau - dispersion(zeta[0], zeta[1], params) if shift_by_dispersion else tau
    rho = dissipation(np.float64(zeta[0]), params)
    wt = (1.0 + np.sqrt(freq**2 + rho**2)) ** b
    dtau = 2.0 * np.pi / (length * tr.dt)
    return float(np.sqrt(np.sum(wt**2 * np.abs(fhat) ** 2) * dtau))


def time_l2_sobolev(f: SpaceTimeField, s1: float, s2: float) -> float:
    """sqrt(int_t ||f(t)||_{H^{s1,s2}}^2 dt), rectangle rule in t."""
    g = f.grid
    w = sobolev_weights(g, s1, s2)[None, :, :]
    total = np.sum(w**2 * np.abs(f.traj.coef) ** 2) * g.dxi * g.deta * f.traj.dt
    return float(np.sqrt(total))


def unitary_conjugate_time_norm(f: SpaceTimeField, b: float, s1: float, s2: float, params: ModelParams) -> float:
    """||<tau - P(zeta)>^b <xi>^s1 <eta>^s2 f_hat||: the H^b_t norm of the
    dispersion-conjugated field, computed directly on the tau lattice."""
    _require_windowed(f)
    tau, fhat = time_transform(f)
    g = f.grid
    sigma = tau[:, None, None] - dispersion(g.xi2d, g.eta2d, params)[None, :, :]
    wt = (1.0 + np.abs(sigma)) ** b
    ws = sobolev_weights(g, s1, s2)[None, :, :]
    dtau = 2.0 * np.pi / (len(tau) * f.traj.dt)
    total = np.sum((wt * ws) ** 2 * np.abs(fhat) ** 2) * dtau * g.dxi * g.deta
    return float(np.sqrt(total))


def equivalence_sides(
    f: SpaceTimeField, spec: NormSpec, params: ModelParams, dissipation_order: float = 4.0
) -> tuple[float, float]:
    """(Bourgain norm, comparable two-term sum) for the norm-equivalence check.

    The second term carries the spatial exponent s1 + dissipation_order*b;
    order 4 matches rho ~ xi^4 for the fourth-order dissipation (order 2
    would match a pure second-order one).
    """
    lhs = bourgain_norm(f, spec, params)
    a = unitary_conjugate_time_norm(f, spec.b, spec.s1, spec.s2, params)
    # 1/sqrt(2*pi) puts the L2_t term on the same tau-domain footing
    b_term = np.sqrt(2.0 * np.pi) * time_l2_sobolev(f, spec.s1 + dissipation_order * spec.b, spec.s2)
    return lhs, float(a + b_term)
