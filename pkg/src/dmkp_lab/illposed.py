"""Norm-growth experiment for the second Picard iterate.

The initial-data family lives on two rectangles in frequency space (plus
their reflections, at half amplitude, so the field is real):

    A = [N/2, N] x [-6N^2, 6N^2],   B = [N, 2N] x [2N^2, 3N^2],
    phi_hat = (amplitude/2) * indicator,  amplitude = N^(-3/2-s).

The second iterate of the Duhamel map has the closed mode-wise form

    u2_hat(zeta, t) = -Lam(xi) (2pi)^-2 e^{i t P(zeta)}
                      * int phi_hat(zeta1) phi_hat(zeta-zeta1) K dzeta1,

    K(zeta, zeta1, t) = int_0^t e^{t'(i*Rt - M)} dt' * e^{-t rho(xi)}
                      = (e^{-t(rho1+rho2)} e^{i t Rt} - e^{-t rho(xi)}) / (i*Rt - M),

with Rt = P(zeta1)+P(zeta2)-P(zeta) and M = rho1+rho2-rho. Everything here
is evaluated semi-analytically: the convolution support is a finite union
of rectangle intersections, enumerated exactly, and integrated by tensor
Gauss-Legendre panels. An FFT pipeline on a lattice-aligned grid serves as
an independent cross-check at small N.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .grid import SpectralField, SpectralGrid
from .picard import quadrature_weights
from .propagator import apply_semigroup, nonlinear_rhs, semigroup_symbol
from .symbols import (
    DegenerateFrequencyError,
    ModelParams,
    dispersion,
    dissipation,
    dissipation_gap,
    lambda_symbol,
    resonance,
)


class Rect(NamedTuple):
    """Closed axis-aligned rectangle [x0, x1] x [y0, y1] in (xi, eta)."""

    x0: float
    x1: float
    y0: float
    y1: float

    def reflected(self) -> "Rect":
        return Rect(-self.x1, -self.x0, -self.y1, -self.y0)

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def area(self) -> float:
        return max(self.x1 - self.x0, 0.0) * max(self.y1 - self.y0, 0.0)


@dataclass(frozen=True)
class RectangleData:
    """Frequency-support description of the data family at one (N, s)."""

    n: float
    s: float

    def __post_init__(self) -> None:
        if not self.n >= 4:
            raise ValueError("N must be >= 4")

    @property
    def amplitude(self) -> float:
        return float(self.n ** (-1.5 - self.s))

    @property
    def half_amplitude(self) -> float:
        # each half-plane carries amplitude/2 so the field is real
        return 0.5 * self.amplitude

    def positive_rects(self) -> tuple[Rect, Rect]:
        n = self.n
        return (
            Rect(n / 2, n, -6 * n**2, 6 * n**2),
            Rect(n, 2 * n, 2 * n**2, 3 * n**2),
        )

    def rects(self) -> tuple[Rect, ...]:
        a, b = self.positive_rects()
        return (a, b, a.reflected(), b.reflected())


def hs_norm_exact(rect: RectangleData) -> float:
    """||phi_N||_{H^{s,0}} from the closed-form rectangle integral."""
    s = rect.s
    total = 0.0
    for r in rect.positive_rects():
        total += (r.y1 - r.y0) * _bracket_integral(r.x0, r.x1, 2 * s)
    return float(rect.half_amplitude * np.sqrt(2.0 * total))


def _bracket_integral(a: float, b: float, p: float) -> float:
    # int_a^b (1+xi)^p dxi on 0 <= a < b
    if p == -1.0:
        return float(np.log((1 + b) / (1 + a)))
    return float(((1 + b) ** (p + 1) - (1 + a) ** (p + 1)) / (p + 1))


def kernel(zeta, zeta1, t: float, params: ModelParams, singular_tol: float = 1e-4):
    """Mode-interaction kernel of the second iterate (without e^{i t P}).

    Near-cancellation of the denominator switches to the cubic series
    t e^{-t rho} (1 + tG/2 + (tG)^2/6); the threshold is relative to
    1 + |M| + |R| so it only fires where the denominator is genuinely small.
    """
    xi, eta = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in zeta))
    xi1, eta1 = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in zeta1))
    xi, eta, xi1, eta1 = np.broadcast_arrays(xi, eta, xi1, eta1)
    r_closed = resonance((xi, eta), (xi1, eta1), params)  # rejects zero xi's
    r_tilde = -np.asarray(r_closed)  # P1 + P2 - P
    m = np.asarray(dissipation_gap(xi, xi1, params))
    g = 1j * r_tilde - m
    rho_out = np.asarray(dissipation(xi, params))
    rho_12 = np.asarray(dissipation(xi1, params)) + np.asarray(dissipation(xi - xi1, params))

    tg = t * g
    near = np.abs(g) < singular_tol * (1.0 + np.abs(m) + np.abs(r_tilde))
    series = t * np.exp(-t * rho_out) * (1.0 + tg / 2.0 + tg * tg / 6.0)
    safe_g = np.where(near, 1.0, g)
    direct = (np.exp(-t * rho_12 + 1j * t * r_tilde) - np.exp(-t * rho_out)) / safe_g
    out = np.where(near, series, direct)
    return out if out.ndim else complex(out)


@lru_cache(maxsize=64)
def _gauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def _ordered_pairs(rect: RectangleData):
    rs = rect.rects()
    return [(s, sp) for s in rs for sp in rs]


def _pair_integral_scalar(
    zeta: tuple[float, float],
    s_rect: Rect,
    sp_rect: Rect,
    t: float,
    params: ModelParams,
    orders: tuple[int, int],
    panels: tuple[int, int],
    singular_tol: float,
) -> complex:
    xi, eta = zeta
    lox, hix = max(s_rect.x0, xi - sp_rect.x1), min(s_rect.x1, xi - sp_rect.x0)
    loy, hiy = max(s_rect.y0, eta - sp_rect.y1), min(s_rect.y1, eta - sp_rect.y0)
    if not (hix > lox and hiy > loy):
        return 0.0
    gx, wx = _gauss(orders[0])
    gy, wy = _gauss(orders[1])
    total = 0.0 + 0.0j
    xsplit = np.linspace(lox, hix, panels[0] + 1)
    ysplit = np.linspace(loy, hiy, panels[1] + 1)
    for ia in range(panels[0]):
        cx, hx = 0.5 * (xsplit[ia] + xsplit[ia + 1]), 0.5 * (xsplit[ia + 1] - xsplit[ia])
        xs = cx + hx * gx
        for ib in range(panels[1]):
            cy, hy = 0.5 * (ysplit[ib] + ysplit[ib + 1]), 0.5 * (ysplit[ib + 1] - ysplit[ib])
            ys = cy + hy * gy
            k = kernel(
                (np.float64(xi), np.float64(eta)),
                (xs[:, None], ys[None, :]),
                t,
                params,
                singular_tol,
            )
            total += hx * hy * np.einsum("i,j,ij->", wx, wy, k)
    return complex(total)


def second_iterate_mode(
    zeta: tuple[float, float],
    rect: RectangleData,
    t: float,
    params: ModelParams,
    inner_orders: tuple[int, int] = (16, 10),
    panels: tuple[int, int] = (2, 1),
    singular_tol: float = 1e-4,
) -> complex:
    """u2_hat(zeta, t) by exact rectangle-intersection quadrature."""
    xi, eta = zeta
    if xi == 0:
        raise DegenerateFrequencyError("second iterate is evaluated away from xi = 0")
    total = 0.0 + 0.0j
    for s_rect, sp_rect in _ordered_pairs(rect):
        total += _pair_integral_scalar(zeta, s_rect, sp_rect, t, params, inner_orders, panels, singular_tol)
    pref = (
        -lambda_symbol(np.float64(xi), params)
        * rect.half_amplitude**2
        / (2.0 * np.pi) ** 2
        * np.exp(1j * t * dispersion(xi, eta, params))
    )
    return complex(pref * total)


def _u2_modulus_at(
    pts_xi: np.ndarray,
    pts_eta: np.ndarray,
    rect: RectangleData,
    t: float,
    params: ModelParams,
    inner_orders: tuple[int, int],
    singular_tol: float,
) -> np.ndarray:
    """|u2_hat| at many outer points, vectorized over the pair enumeration."""
    gx, wx = _gauss(inner_orders[0])
    gy, wy = _gauss(inner_orders[1])
    acc = np.zeros(pts_xi.shape, dtype=np.complex128)
    for s_rect, sp_rect in _ordered_pairs(rect):
        lox = np.maximum(s_rect.x0, pts_xi - sp_rect.x1)
        hix = np.minimum(s_rect.x1, pts_xi - sp_rect.x0)
        loy = np.maximum(s_rect.y0, pts_eta - sp_rect.y1)
        hiy = np.minimum(s_rect.y1, pts_eta - sp_rect.y0)
        mask = (hix > lox) & (hiy > loy)
        if not np.any(mask):
            continue
        cx, hx = 0.5 * (lox[mask] + hix[mask]), 0.5 * (hix[mask] - lox[mask])
        cy, hy = 0.5 * (loy[mask] + hiy[mask]), 0.5 * (hiy[mask] - loy[mask])
        xs = cx[:, None] + hx[:, None] * gx[None, :]  # (K, mx)
        ys = cy[:, None] + hy[:, None] * gy[None, :]  # (K, my)
        k = kernel(
            (pts_xi[mask][:, None, None], pts_eta[mask][:, None, None]),
            (xs[:, :, None], ys[:, None, :]),
            t,
            params,
            singular_tol,
        )
        acc[mask] += hx * hy * np.einsum("i,j,kij->k", wx, wy, k)
    lam = np.abs(lambda_symbol(pts_xi, params))
    return lam * rect.half_amplitude**2 / (2.0 * np.pi) ** 2 * np.abs(acc)


def _sum_rect(s: Rect, sp: Rect) -> Rect:
    return Rect(s.x0 + sp.x0, s.x1 + sp.x1, s.y0 + sp.y0, s.y1 + sp.y1)


def _breakpoints(rect: RectangleData) -> tuple[np.ndarray, np.ndarray]:
    # all pairwise edge sums: sumset edges plus the interior kink lines
    # where an intersection bound switches between the two argument edges
    xs, ys = [], []
    for s_rect, sp_rect in _ordered_pairs(rect):
        xs.extend([s_rect.x0 + sp_rect.x0, s_rect.x0 + sp_rect.x1, s_rect.x1 + sp_rect.x0, s_rect.x1 + sp_rect.x1])
        ys.extend([s_rect.y0 + sp_rect.y0, s_rect.y0 + sp_rect.y1, s_rect.y1 + sp_rect.y0, s_rect.y1 + sp_rect.y1])
    scale = max(rect.n**2, 1.0)
    xs = np.unique(np.round(np.asarray(xs) / scale, 12)) * scale
    ys = np.unique(np.round(np.asarray(ys) / scale, 12)) * scale
    return xs, ys


def support_rects(rect: RectangleData) -> list[Rect]:
    """Distinct sumset rectangles carrying the second iterate."""
    seen: dict[tuple, Rect] = {}
    for s_rect, sp_rect in _ordered_pairs(rect):
        r = _sum_rect(s_rect, sp_rect)
        seen[tuple(np.round(np.asarray(r), 9))] = r
    return list(seen.values())


@dataclass(frozen=True)
class ScanConfig:
    """Quadrature and schedule configuration for the norm scan."""

    n_values: tuple[float, ...] = (16.0, 32.0, 64.0, 128.0)
    s_values: tuple[float, ...] = (-0.75, -0.25)
    eps: float = 0.1
    outer_orders: tuple[int, int] = (12, 10)
    inner_orders: tuple[int, int] = (16, 10)
    singular_tol: float = 1e-4

    def __post_init__(self) -> None:
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")
        if min(self.outer_orders) < 8 or min(self.inner_orders) < 8:
            raise ValueError("quadrature orders must be >= 8")


def schedule_time(n: float, eps: float) -> float:
    """The N-indexed observation time N^(-4-eps)."""
    return float(n ** (-4.0 - eps))


def iterate_norm(
    n: float,
    s: float,
    eps: float,
    params: ModelParams,
    config: ScanConfig | None = None,
) -> float:
    """||u2(t_N)||_{H^{s,0}}: outer Gauss-Legendre over the sumset support.

    The support is decomposed into cells by all pairwise edge sums (the
    integrand is smooth inside each cell), restricted to xi > 0 and doubled
    by conjugate symmetry.
    """
    if n < 8:
        raise ValueError("N must be >= 8")
    cfg = config or ScanConfig()
    rect = RectangleData(n, s)
    t = schedule_time(n, eps)
    xs, ys = _breakpoints(rect)
    rects = support_rects(rect)
    gx, wx = _gauss(cfg.outer_orders[0])
    gy, wy = _gauss(cfg.outer_orders[1])

    pts_x, pts_y, pts_w = [], [], []
    for i in range(len(xs) - 1):
        x0, x1 = xs[i], xs[i + 1]
        if 0.5 * (x0 + x1) <= 0:
            continue
        for j in range(len(ys) - 1):
            y0, y1 = ys[j], ys[j + 1]
            cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
            if not any(r.contains(cx, cy) for r in rects):
                continue
            hx, hy = 0.5 * (x1 - x0), 0.5 * (y1 - y0)
            nx = cx + hx * gx
            ny = cy + hy * gy
            pts_x.append(np.repeat(nx, len(ny)))
            pts_y.append(np.tile(ny, len(nx)))
            pts_w.append(hx * hy * np.outer(wx, wy).ravel())
    px = np.concatenate(pts_x)
    py = np.concatenate(pts_y)
    pw = np.concatenate(pts_w)

    u2 = _u2_modulus_at(px, py, rect, t, params, cfg.inner_orders, cfg.singular_tol)
    if not np.all(np.isfinite(u2)):
        bad = int(np.argmin(np.isfinite(u2)))
        raise RuntimeError(f"non-finite integrand at zeta = ({px[bad]:.6g}, {py[bad]:.6g})")
    integrand = (1.0 + np.abs(px)) ** (2 * s) * u2**2
    return float(np.sqrt(2.0 * np.sum(pw * integrand)))


@dataclass
class ScanRow:
    n: float
    s: float
    eps: float
    norm: float
    slope: float


@dataclass
class ScanResult:
    rows: list[ScanRow] = field(default_factory=list)
    slopes: dict[float, float] = field(default_factory=dict)


def scan_and_fit(config: ScanConfig, params: ModelParams) -> ScanResult:
    """Norms over the (N, s) lattice plus per-s log-log slope fits."""
    if len(config.n_values) < 4:
        raise ValueError("need at least 4 values of N per s for a slope fit")
    result = ScanResult()
    for s in config.s_values:
        norms = [iterate_norm(n, s, config.eps, params, config) for n in config.n_values]
        slope = float(np.polyfit(np.log(config.n_values), np.log(norms), 1)[0])
        result.slopes[s] = slope
        for n, nm in zip(config.n_values, norms):
            result.rows.append(ScanRow(n, s, config.eps, nm, slope))
    return result


def measure_kzeta(zeta: tuple[float, float], rect: RectangleData) -> float:
    """Area of the paired interaction domain {z1 in B, z-z1 in A} u {swap}."""
    a, b = rect.positive_rects()
    total = 0.0
    for s_rect, sp_rect in ((b, a), (a, b)):
        lox = max(s_rect.x0, zeta[0] - sp_rect.x1)
        hix = min(s_rect.x1, zeta[0] - sp_rect.x0)
        loy = max(s_rect.y0, zeta[1] - sp_rect.y1)
        hiy = min(s_rect.y1, zeta[1] - sp_rect.y0)
        total += max(hix - lox, 0.0) * max(hiy - loy, 0.0)
    return total


def _interval_weights(values: np.ndarray, lo: float, hi: float, spacing: float) -> np.ndarray:
    """Trapezoid lattice weights of [lo, hi]: 1 inside, 1/2 on an edge."""
    tol = 1e-9 * max(1.0, abs(lo), abs(hi)) + 1e-12 * spacing
    inside = (values > lo + tol) & (values < hi - tol)
    edge = (np.abs(values - lo) <= tol) | (np.abs(values - hi) <= tol)
    return inside * 1.0 + edge * 0.5


def phi_field(rect: RectangleData, grid: SpectralGrid) -> SpectralField:
    """Discrete data family member on a grid whose lattice resolves the
    rectangles; edge modes carry trapezoid weight so lattice sums match the
    continuum rectangle integrals to second order."""
    coef = np.zeros(grid.shape, dtype=np.complex128)
    for r in rect.rects():
        wx = _interval_weights(grid.xi, r.x0, r.x1, grid.dxi)
        wy = _interval_weights(grid.eta, r.y0, r.y1, grid.deta)
        coef += rect.half_amplitude * wy[:, None] * wx[None, :]
    coef[grid.nyquist_mask] = 0.0
    coef[:, 0] = 0.0
    return SpectralField(grid, coef, zero_x_mean=True)


def second_iterate_fft(
    rect: RectangleData,
    t: float,
    grid: SpectralGrid,
    params: ModelParams,
    n_intervals: int = 96,
) -> SpectralField:
    """u2(t) on a periodic grid via the semigroup + nonlinearity pipeline,
    Duhamel-quadratured in t' (memory-light endpoint accumulation)."""
    phi = phi_field(rect, grid)
    dt = t / n_intervals
    w = quadrature_weights(n_intervals, dt)
    acc = np.zeros(grid.shape, dtype=np.complex128)
    for j in range(n_intervals + 1):
        tj = j * dt
        integrand = nonlinear_rhs(apply_semigroup(phi, tj, params), params)
        acc += w[j] * semigroup_symbol(grid, t - tj, params) * integrand.coef
    return SpectralField(grid, -acc, zero_x_mean=True)
