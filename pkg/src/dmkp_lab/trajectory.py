"""Uniform-in-time sequences of spectral fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SpectralField, SpectralGrid


@dataclass
class Trajectory:
    """Spectral coefficients on t_n = t0 + n*dt, n = 0..nt-1.

    coef has shape (nt, ny, nx); all nodes share one grid.
    """

    grid: SpectralGrid
    t0: float
    dt: float
    coef: np.ndarray

    def __post_init__(self) -> None:
        if self.coef.ndim != 3 or self.coef.shape[1:] != self.grid.shape:
            raise ValueError(f"trajectory shape {self.coef.shape} incompatible with grid {self.grid.shape}")
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    def __len__(self) -> int:
        return self.coef.shape[0]

    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))

    def node(self, n: int) -> SpectralField:
        return SpectralField(self.grid, self.coef[n])

    @classmethod
    def from_fields(cls, fields: list[SpectralField], t0: float, dt: float) -> "Trajectory":
        grid = fields[0].grid
        coef = np.stack([f.coef for f in fields])
        return cls(grid, t0, dt, coef)
