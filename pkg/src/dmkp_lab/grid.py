"""Periodic 2D spectral grids, real<->spectral transforms, dealiasing.

Transform convention (all 2*pi factors live here, never in symbol code):

    forward:  u_hat(xi_j, eta_k) = (lx*ly)/(nx*ny) * sum_z u(z) exp(-i z.zeta)
    inverse:  u(z) = 1/(lx*ly) * sum_zeta u_hat(zeta) exp(+i z.zeta)

so that ``forward`` approximates the integral transform and discrete
Parseval reads  ||u||_{L2}^2 = (1/(lx*ly)) * sum |u_hat|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


class GridError(ValueError):
    """Invalid grid construction or mismatched field/grid sizes."""


@dataclass(frozen=True)
class SpectralGrid:
    """Periodic rectangle [0,lx) x [0,ly) with FFT-ordered wavenumbers.

    ny = 1 is the legal 1D degenerate case (eta = {0}).
    """

    nx: int
    ny: int
    lx: float
    ly: float

    def __post_init__(self) -> None:
        if self.nx < 2 or self.nx % 2 != 0:
            raise GridError(f"nx must be even and >= 2, got {self.nx}")
        if self.ny != 1 and (self.ny < 2 or self.ny % 2 != 0):
            raise GridError(f"ny must be 1 or even and >= 2, got {self.ny}")
        if not (np.isfinite(self.lx) and self.lx > 0):
            raise GridError(f"lx must be a positive finite real, got {self.lx}")
        if not (np.isfinite(self.ly) and self.ly > 0):
            raise GridError(f"ly must be a positive finite real, got {self.ly}")

        jx = np.fft.fftfreq(self.nx, d=1.0 / self.nx).astype(np.int64)
        jy = np.fft.fftfreq(self.ny, d=1.0 / self.ny).astype(np.int64)
        object.__setattr__(self, "jx", jx)
        object.__setattr__(self, "jy", jy)
        object.__setattr__(self, "xi", (2.0 * np.pi / self.lx) * jx)
        object.__setattr__(self, "eta", (2.0 * np.pi / self.ly) * jy)

        # 2/3 rule; the unpaired Nyquist mode (|j| = n/2) falls outside it.
        keep_x = np.abs(jx) <= self.nx // 3 if self.nx >= 3 else np.abs(jx) == 0
        keep_y = np.abs(jy) <= self.ny // 3 if self.ny >= 3 else np.abs(jy) == 0
        object.__setattr__(self, "dealias_mask", keep_y[:, None] & keep_x[None, :])

        nyq = (jx == -self.nx // 2)[None, :] | (jy == -self.ny // 2)[:, None]
        object.__setattr__(self, "nyquist_mask", nyq)

        object.__setattr__(self, "xi2d", np.broadcast_to(self.xi[None, :], (self.ny, self.nx)))
        object.__setattr__(self, "eta2d", np.broadcast_to(self.eta[:, None], (self.ny, self.nx)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.ny, self.nx)

    @property
    def n_modes(self) -> int:
        return self.ny * self.nx

    @property
    def dxi(self) -> float:
        return 2.0 * np.pi / self.lx

    @property
    def deta(self) -> float:
        return 2.0 * np.pi / self.ly

    @property
    def cell_area(self) -> float:
        """Quadrature weight of one real-space sample."""
        return (self.lx * self.ly) / (self.nx * self.ny)

    def x(self) -> np.ndarray:
        return np.arange(self.nx) * (self.lx / self.nx)

    def y(self) -> np.ndarray:
        return np.arange(self.ny) * (self.ly / self.ny)

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """Real-space sample points, shape (ny, nx) each, y outer."""
        return np.meshgrid(self.x(), self.y())


def build_grid(nx: int, ny: int, lx: float, ly: float) -> SpectralGrid:
    return SpectralGrid(nx, ny, lx, ly)


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients of a real field on a SpectralGrid.

    coef has shape (ny, nx), row-major with y outer, in FFT mode order.
    Conjugate symmetry coef(-zeta) = conj(coef(zeta)) is the realness
    invariant; zero_x_mean marks that the xi = 0 column has been projected
    out (required before any KP-type multiplier is applied).
    """

    grid: SpectralGrid
    coef: np.ndarray
    zero_x_mean: bool = False

    def __post_init__(self) -> None:
        if self.coef.shape != self.grid.shape:
            raise GridError(f"coefficient shape {self.coef.shape} != grid shape {self.grid.shape}")

    def copy(self) -> "SpectralField":
        return replace(self, coef=self.coef.copy())


def _zero_nyquist(grid: SpectralGrid, coef: np.ndarray) -> np.ndarray:
    # Nyquist modes have no conjugate partner and corrupt odd derivatives.
    coef[grid.nyquist_mask] = 0.0
    return coef


def forward(grid: SpectralGrid, u: np.ndarray) -> SpectralField:
    """Real samples (ny, nx) -> SpectralField under the integral convention."""
    if u.shape != grid.shape:
        raise GridError(f"field shape {u.shape} != grid shape {grid.shape}")
    coef = np.fft.fft2(u) * grid.cell_area
    return SpectralField(grid, _zero_nyquist(grid, coef))


def inverse(f: SpectralField) -> np.ndarray:
    """SpectralField -> real samples (ny, nx)."""
    g = f.grid
    u = np.fft.ifft2(f.coef) * (g.nx * g.ny / (g.lx * g.ly))
    return u.real


def dealias(f: SpectralField) -> SpectralField:
    return replace(f, coef=np.where(f.grid.dealias_mask, f.coef, 0.0))


def project_zero_x_mode(f: SpectralField) -> SpectralField:
    """Zero the xi = 0 column; idempotent, commutes with dealias."""
    coef = f.coef.copy()
    coef[:, 0] = 0.0
    return SpectralField(f.grid, coef, zero_x_mean=True)


def hermitian_part(grid: SpectralGrid, coef: np.ndarray) -> np.ndarray:
    """Project onto conjugate-symmetric coefficients (real fields)."""
    flipped = coef[_reverse_index(grid.ny)][:, _reverse_index(grid.nx)]
    return 0.5 * (coef + np.conj(flipped))


def _reverse_index(n: int) -> np.ndarray:
    # index map j -> -j mod n
    return (-np.arange(n)) % n


def conjugate_flip(f: SpectralField) -> np.ndarray:
    """conj(coef(-zeta)); equals coef for a real field."""
    g = f.grid
    return np.conj(f.coef[_reverse_index(g.ny)][:, _reverse_index(g.nx)])


def l2_norm(f: SpectralField) -> float:
    """Real-space L2 norm computed spectrally via Parseval."""
    g = f.grid
    return float(np.sqrt(np.sum(np.abs(f.coef) ** 2) / (g.lx * g.ly)))


def zeros_like(grid: SpectralGrid) -> SpectralField:
    return SpectralField(grid, np.zeros(grid.shape, dtype=np.complex128), zero_x_mean=True)
