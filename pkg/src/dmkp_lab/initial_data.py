"""Initial-condition builders.

All builders return conjugate-symmetric spectral fields; callers project
the zero x-mode before evolving (simulate does it again regardless).
"""

from __future__ import annotations

import numpy as np

from .grid import SpectralField, SpectralGrid, hermitian_part
from .illposed import RectangleData, phi_field


def gaussian_field(
    grid: SpectralGrid,
    amplitude: float,
    sigma: float,
    cx: float | None = None,
    cy: float | None = None,
) -> SpectralField:
    """Periodized Gaussian bump, built spectrally (Poisson summation) so the
    coefficients decay like a true Gaussian with no wrap-around kinks."""
    cx = grid.lx / 2 if cx is None else cx
    cy = grid.ly / 2 if cy is None else cy
    if grid.ny == 1:
        coef = amplitude * np.sqrt(2 * np.pi) * sigma * grid.ly * np.exp(
            -(sigma**2) * grid.xi2d**2 / 2
        ).astype(np.complex128)
    else:
        coef = amplitude * 2 * np.pi * sigma**2 * np.exp(
            -(sigma**2) * (grid.xi2d**2 + grid.eta2d**2) / 2
        ).astype(np.complex128)
    coef *= np.exp(-1j * (grid.xi2d * cx + grid.eta2d * cy))
    coef[grid.nyquist_mask] = 0.0
    return SpectralField(grid, coef)


def single_mode_field(grid: SpectralGrid, j: int, k: int, amplitude: float = 1.0) -> SpectralField:
    """amplitude * cos(j x 2pi/lx + k y 2pi/ly)."""
    coef = np.zeros(grid.shape, dtype=np.complex128)
    half = amplitude * grid.lx * grid.ly / 2.0
    coef[k % grid.ny, j % grid.nx] += half
    coef[(-k) % grid.ny, (-j) % grid.nx] += half
    coef[grid.nyquist_mask] = 0.0
    return SpectralField(grid, coef)


def random_field(grid: SpectralGrid, seed: int, spectrum_slope: float, amplitude: float) -> SpectralField:
    """Random-phase field with |coef| ~ (1+|zeta|)^slope, L2-normalized to
    the requested amplitude."""
    rng = np.random.default_rng(seed)
    mag = (1.0 + np.sqrt(grid.xi2d**2 + grid.eta2d**2)) ** spectrum_slope
    phase = np.exp(2j * np.pi * rng.random(grid.shape))
    coef = hermitian_part(grid, mag * phase)
    coef[:, 0] = 0.0
    coef[grid.nyquist_mask] = 0.0
    coef = np.where(grid.dealias_mask, coef, 0.0)
    norm = np.sqrt(np.sum(np.abs(coef) ** 2) / (grid.lx * grid.ly))
    if norm > 0:
        coef *= amplitude / norm
    return SpectralField(grid, coef, zero_x_mean=True)


def phi_n_field(grid: SpectralGrid, n: float, s: float) -> SpectralField:
    return phi_field(RectangleData(n, s), grid)
