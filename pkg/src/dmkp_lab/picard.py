"""Duhamel integral operator and the Picard fixed-point solver.

The integral t_n -> int_0^{t_n} W(t_n - t') w(t') dt' is evaluated mode by
mode with the semigroup applied exactly (only decaying multipliers appear)
and composite Simpson in t'. Odd node counts get a 3/8-rule tail; the very
first node uses the trapezoid rule, the only causal positive-weight choice
on two nodes, so every weight vector is nonnegative and sums to t_n.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .grid import SpectralField, dealias, project_zero_x_mode
from .symbols import ModelParams, dispersion, dissipation, lambda_symbol
from .trajectory import Trajectory


class PicardDivergenceError(RuntimeError):
    """Residual ratios reached 1: outside the contraction ball; shrink T or the data."""


@lru_cache(maxsize=4096)
def _unit_weights(n: int) -> tuple:
    # weights for nodes 0..n over [0, n], unit spacing
    if n == 0:
        return (0.0,)
    if n == 1:
        return (0.5, 0.5)
    w = np.zeros(n + 1)
    m = n if n % 2 == 0 else n - 3
    if m >= 2:
        s = np.zeros(m + 1)
        s[0] = s[m] = 1.0
        s[1:m:2] = 4.0
        s[2:m:2] = 2.0
        w[: m + 1] += s / 3.0
    if n % 2 == 1:
        w[m : n + 1] += (3.0 / 8.0) * np.array([1.0, 3.0, 3.0, 1.0])
    return tuple(w)


def quadrature_weights(n: int, dt: float) -> np.ndarray:
    return dt * np.asarray(_unit_weights(n))


def trapezoid_weights(n: int, dt: float) -> np.ndarray:
    # test-only alternative, second order
    if n == 0:
        return np.zeros(1)
    w = np.full(n + 1, dt)
    w[0] = w[-1] = 0.5 * dt
    return w


def semigroup_table(grid, params: ModelParams, dt: float, nt: int) -> np.ndarray:
    """W(k*dt) multipliers for k = 0..nt-1, shape (nt, ny, nx)."""
    s = 1j * dispersion(grid.xi2d, grid.eta2d, params) - dissipation(grid.xi2d, params)
    k = np.arange(nt, dtype=np.float64)
    return np.exp(k[:, None, None] * dt * s[None, :, :])


def duhamel(
    w: Trajectory,
    params: ModelParams,
    apply_lambda: bool = False,
    weight_fn=quadrature_weights,
) -> Trajectory:
    """Trajectory of int_0^{t_n} W(t_n - t') w(t') dt' on w's own grid.

    With apply_lambda the nodes are first multiplied by the lambda symbol
    (dealiased, x-mean projected), for callers passing raw u^2 spectra.
    Requires at least 3 nodes.
    """
    nt = len(w)
    if nt < 3:
        raise ValueError("duhamel needs at least 3 trajectory nodes")
    coef = w.coef
    if apply_lambda:
        coef = coef * lambda_symbol(w.grid.xi2d, params)[None, :, :]
        coef = np.where(w.grid.dealias_mask[None, :, :], coef, 0.0)
        coef[:, :, 0] = 0.0

    e = semigroup_table(w.grid, params, w.dt, nt)
    out = np.zeros_like(coef)
    for n in range(1, nt):
        wn = weight_fn(n, w.dt)
        # E_{n-j} * w_j, j = 0..n
        out[n] = np.tensordot(wn, e[n::-1] * coef[: n + 1], axes=(0, 0))
    return Trajectory(w.grid, w.t0, w.dt, out)


def nonlinear_trajectory(u: Trajectory, params: ModelParams) -> Trajectory:
    """Node-wise lambda nonlinearity of u, batched over time."""
    g = u.grid
    scale = g.nx * g.ny / (g.lx * g.ly)
    phys = np.fft.ifft2(u.coef, axes=(1, 2)).real * scale
    sq = np.fft.fft2(phys * phys, axes=(1, 2)) * g.cell_area
    sq = np.where(g.dealias_mask[None, :, :], sq, 0.0)
    sq *= lambda_symbol(g.xi2d, params)[None, :, :]
    sq[:, :, 0] = 0.0
    return Trajectory(g, u.t0, u.dt, sq)


def free_trajectory(phi: SpectralField, dt: float, nt: int, params: ModelParams) -> Trajectory:
    """t_n -> W(t_n) phi for n = 0..nt-1."""
    e = semigroup_table(phi.grid, params, dt, nt)
    return Trajectory(phi.grid, 0.0, dt, e * phi.coef[None, :, :])


def picard_solve(
    phi: SpectralField,
    t_final: float,
    n_steps: int,
    max_iter: int,
    tol: float,
    params: ModelParams,
) -> tuple[Trajectory, np.ndarray]:
    """Iterate u <- W(t)phi - Duhamel[Lambda(u^2)] on [0, t_final].

    Returns the trajectory and the residual history (sup-over-nodes L2 of
    successive differences). Raises PicardDivergenceError when max_iter is
    exhausted with residual ratios >= 1.
    """
    if not t_final > 0:
        raise ValueError("t_final must be positive")
    if n_steps < 2:
        raise ValueError("need at least 2 steps")
    f0 = project_zero_x_mode(dealias(phi))
    dt = t_final / n_steps
    nt = n_steps + 1
    base = free_trajectory(f0, dt, nt, params)

    u = base
    residuals: list[float] = []
    norm_w = 1.0 / np.sqrt(phi.grid.lx * phi.grid.ly)
    for _ in range(max_iter):
        integral = duhamel(nonlinear_trajectory(u, params), params)
        new = Trajectory(u.grid, 0.0, dt, base.coef - integral.coef)
        diff = new.coef - u.coef
        res = float(np.max(np.sqrt(np.sum(np.abs(diff) ** 2, axis=(1, 2)))) * norm_w)
        residuals.append(res)
        u = new
        if res < tol:
            return u, np.asarray(residuals)
    if len(residuals) >= 2 and residuals[-1] >= residuals[-2]:
        raise PicardDivergenceError(
            "Picard iteration did not contract: outside the contraction ball; shrink t_final or the data"
        )
    return u, np.asarray(residuals)


def picard_defect(u: Trajectory, phi: SpectralField, params: ModelParams) -> float:
    """Sup-over-nodes L2 defect of u against the integral equation."""
    f0 = project_zero_x_mode(dealias(phi))
    base = free_trajectory(f0, u.dt, len(u), params)
    integral = duhamel(nonlinear_trajectory(u, params), params)
    diff = base.coef - integral.coef - u.coef
    return float(
        np.max(np.sqrt(np.sum(np.abs(diff) ** 2, axis=(1, 2)))) / np.sqrt(u.grid.lx * u.grid.ly)
    )
