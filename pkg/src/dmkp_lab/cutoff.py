"""Smooth compactly supported time cutoffs.

theta is the standard bump partition: identically 1 on [-1, 1], supported in
[-2, 2], glued by psi(r) = exp(-1/r) on the shoulders, so theta(1.5) = 1/2 by
symmetry of the partition. theta_scaled(t, T) = theta(t/T).
"""

from __future__ import annotations

import numpy as np


def _psi(r: np.ndarray) -> np.ndarray:
    out = np.zeros_like(r)
    pos = r > 0
    out[pos] = np.exp(-1.0 / r[pos])
    return out


def theta(t) -> np.ndarray | float:
    t = np.asarray(t, dtype=np.float64)
    a = np.abs(t)
    up = _psi(2.0 - a)
    down = _psi(a - 1.0)
    with np.errstate(invalid="ignore"):
        shoulder = np.where(up + down > 0, up / (up + down), 0.0)
    out = np.where(a <= 1.0, 1.0, np.where(a >= 2.0, 0.0, shoulder))
    return out if out.ndim else float(out)


def theta_scaled(t, scale: float) -> np.ndarray | float:
    if not scale > 0:
        raise ValueError("cutoff scale must be positive")
    return theta(np.asarray(t, dtype=np.float64) / scale)
