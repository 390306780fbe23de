"""Free evolution and nonlinear time stepping.

The semigroup acts mode-wise as exp(i*t*P(zeta) - |t|*rho(xi)); the |t| form
extends it to negative times for norm probes. Forward simulation uses an
integrating-factor RK4: the stiff linear part is integrated exactly by
semigroup multipliers and only the quadratic term is treated explicitly, so
the scheme is stable whenever the nonlinear CFL is.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .grid import SpectralField, dealias, forward, inverse, project_zero_x_mode
from .symbols import ModelParams, dispersion, dissipation, lambda_symbol


class SimulationUnstable(RuntimeError):
    def __init__(self, time: float):
        super().__init__(f"non-finite coefficients at t = {time:.6g}; reduce dt or the data")
        self.time = time


def semigroup_symbol(grid, t: float, params: ModelParams) -> np.ndarray:
    """Mode-wise multiplier exp(i*t*P - |t|*rho), shape (ny, nx)."""
    p = dispersion(grid.xi2d, grid.eta2d, params)
    r = dissipation(grid.xi2d, params)
    return np.exp(1j * t * p - abs(t) * r)


def unitary_symbol(grid, t: float, params: ModelParams) -> np.ndarray:
    return np.exp(1j * t * dispersion(grid.xi2d, grid.eta2d, params))


def apply_semigroup(f: SpectralField, t: float, params: ModelParams) -> SpectralField:
    return replace(f, coef=f.coef * semigroup_symbol(f.grid, t, params))


def apply_unitary(f: SpectralField, t: float, params: ModelParams) -> SpectralField:
    return replace(f, coef=f.coef * unitary_symbol(f.grid, t, params))


def nonlinear_rhs(f: SpectralField, params: ModelParams) -> SpectralField:
    """Pseudo-spectral quadratic term: dealiased transform of u^2 times the
    lambda multiplier, zero x-mode projected."""
    u = inverse(f)
    sq = forward(f.grid, u * u)
    coef = np.where(f.grid.dealias_mask, sq.coef, 0.0)
    coef *= lambda_symbol(f.grid.xi2d, params)
    coef[:, 0] = 0.0
    return SpectralField(f.grid, coef, zero_x_mean=True)


@dataclass
class SimState:
    time: float
    field: SpectralField
    params: ModelParams
    dt: float


def _step_multipliers(grid, dt: float, params: ModelParams):
    return semigroup_symbol(grid, dt, params), semigroup_symbol(grid, 0.5 * dt, params)


def step_ifrk4(
    state: SimState,
    include_nonlinearity: bool = True,
    _multipliers=None,
) -> SimState:
    """One classical RK4 step on v(t) = W(-t)u(t); W itself is exact.

    Written so only decaying multipliers (W over dt and dt/2) appear:

        u+ = E u - dt/6 * (E A1 + 2 Eh A2 + 2 Eh A3 + A4)

    with A1 = N(u), A2 = N(Eh(u - dt/2 A1)), A3 = N(Eh u - dt/2 A2),
    A4 = N(E u - dt Eh A3), N the lambda nonlinearity, E = W(dt),
    Eh = W(dt/2).
    """
    if not state.dt > 0:
        raise ValueError("dt must be positive")
    f, dt, params = state.field, state.dt, state.params
    e_full, e_half = _multipliers if _multipliers is not None else _step_multipliers(f.grid, dt, params)

    # blow-up is detected by the finiteness check below, not by float traps
    with np.errstate(over="ignore", invalid="ignore"):
        if include_nonlinearity:
            n = lambda g: nonlinear_rhs(g, params).coef  # noqa: E731
            c = f.coef
            a1 = n(f)
            a2 = n(SpectralField(f.grid, e_half * (c - 0.5 * dt * a1), True))
            a3 = n(SpectralField(f.grid, e_half * c - 0.5 * dt * a2, True))
            a4 = n(SpectralField(f.grid, e_full * c - dt * (e_half * a3), True))
            new = e_full * c - (dt / 6.0) * (e_full * a1 + 2.0 * e_half * (a2 + a3) + a4)
        else:
            new = e_full * f.coef

    if not np.all(np.isfinite(new)):
        raise SimulationUnstable(state.time + dt)
    return SimState(state.time + dt, SpectralField(f.grid, new, True), params, dt)


def simulate(
    phi: SpectralField,
    t_final: float,
    dt: float,
    params: ModelParams,
    observer: Optional[Callable[[SimState], None]] = None,
    observe_every: int = 1,
    include_nonlinearity: bool = True,
) -> SimState:
    """March the projected, dealiased initial field to t_final.

    The observer receives the initial state, every observe_every-th state,
    and the final state. dt must divide t_final up to one-step rounding.
    """
    if not t_final > 0:
        raise ValueError("t_final must be positive")
    n_steps = int(round(t_final / dt))
    if n_steps < 1 or abs(n_steps * dt - t_final) > 1e-9 * max(1.0, t_final):
        raise ValueError(f"dt = {dt} does not divide t_final = {t_final}")

    f0 = project_zero_x_mode(dealias(phi))
    state = SimState(0.0, f0, params, dt)
    mults = _step_multipliers(phi.grid, dt, params)
    if observer is not None:
        observer(state)
    for k in range(1, n_steps + 1):
        try:
            state = step_ifrk4(state, include_nonlinearity, _multipliers=mults)
        except SimulationUnstable:
            raise
        if observer is not None and (k % observe_every == 0 or k == n_steps):
            observer(state)
    return state


def energy_dissipation_rate(f: SpectralField, params: ModelParams) -> float:
    """Exact d/dt (1/2)||u||_L2^2 of the free+quadratic flow, which the
    quadratic term does not touch: -(1/(lx*ly)) * sum rho(xi) |u_hat|^2."""
    g = f.grid
    r = dissipation(g.xi2d, params)
    return float(-np.sum(r * np.abs(f.coef) ** 2) / (g.lx * g.ly))


def x_derivative_norms(f: SpectralField) -> tuple[float, float]:
    """(||u_x||_L2^2, ||u_xx||_L2^2) from the spectrum."""
    g = f.grid
    a2 = np.abs(f.coef) ** 2
    w = 1.0 / (g.lx * g.ly)
    return (
        float(np.sum(g.xi2d**2 * a2) * w),
        float(np.sum(g.xi2d**4 * a2) * w),
    )
