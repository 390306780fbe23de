"""Scalar symbols of the model family.

All functions accept scalars or numpy arrays and broadcast. The dispersion
symbol is set to 0 on the xi = 0 column by convention; that column carries
no data because fields are projected to zero x-mean upstream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DMKP = "dmkp"
BURGERS = "burgers"
NONE = "none"
_KINDS = (DMKP, BURGERS, NONE)


class DegenerateFrequencyError(ValueError):
    """A resonance evaluation hit xi = 0, xi1 = 0 or xi2 = 0."""


@dataclass(frozen=True)
class ModelParams:
    """Model family: alpha(u_xx+u_xxxx)-type dissipation, beta (u^2)_xx term,
    transverse dispersion sign epsilon."""

    alpha: float = 1.0
    beta: float = 1.0
    epsilon: int = 1
    dissipation_kind: str = DMKP

    def __post_init__(self) -> None:
        if self.dissipation_kind not in _KINDS:
            raise ValueError(f"dissipation_kind must be one of {_KINDS}")
        if self.dissipation_kind != NONE and not self.alpha > 0:
            raise ValueError("alpha must be > 0 when dissipation is active")
        if self.epsilon not in (-1, 1):
            raise ValueError("epsilon must be +1 or -1")

    @classmethod
    def dmkp(cls, alpha: float = 1.0, beta: float = 1.0, epsilon: int = 1) -> "ModelParams":
        return cls(alpha, beta, epsilon, DMKP)

    @classmethod
    def kp_burgers(cls, epsilon: int = 1) -> "ModelParams":
        return cls(1.0, 0.0, epsilon, BURGERS)

    @classmethod
    def kp(cls, epsilon: int = 1) -> "ModelParams":
        return cls(1.0, 0.0, epsilon, NONE)

    @classmethod
    def kdv_ks(cls, alpha: float = 1.0) -> "ModelParams":
        # run on an ny = 1 grid; epsilon is inert there
        return cls(alpha, 0.0, 1, DMKP)


PRESETS = {
    "dmkp": ModelParams.dmkp,
    "kp_burgers": ModelParams.kp_burgers,
    "kp": ModelParams.kp,
    "kdv_ks": ModelParams.kdv_ks,
}


def dispersion(xi, eta, params: ModelParams):
    """P(zeta) = xi^3 - eps*eta^2/xi, with P(0, eta) := 0."""
    xi = np.asarray(xi, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    xi_b, eta_b = np.broadcast_arrays(xi, eta)
    ratio = np.zeros(xi_b.shape, dtype=np.float64)
    np.divide(eta_b * eta_b, xi_b, out=ratio, where=xi_b != 0)
    out = np.where(xi_b != 0, xi_b**3 - params.epsilon * ratio, 0.0)
    return out if out.ndim else float(out)


def dissipation(xi, params: ModelParams):
    """Decay-rate symbol: alpha*(xi^4 - xi^2) (dmkp), xi^2 (burgers), 0 (none).

    Negative for 0 < |xi| < 1 in the dmkp kind: the long-wave instability
    band. Bounded below by -alpha/4.
    """
    xi = np.asarray(xi, dtype=np.float64)
    if params.dissipation_kind == DMKP:
        out = params.alpha * (xi**4 - xi**2)
    elif params.dissipation_kind == BURGERS:
        out = xi**2
    else:
        out = np.zeros_like(xi)
    return out if out.ndim else float(out)


def lambda_symbol(xi, params: ModelParams):
    """Multiplier of the quadratic term: (u^2 -> (1/2)(u^2)_x + beta (u^2)_xx),
    i.e. i*xi/2 - beta*xi^2."""
    xi = np.asarray(xi, dtype=np.float64)
    out = 0.5j * xi - params.beta * xi**2
    return out if out.ndim else complex(out)


def nonlinearity_bound(xi):
    """q(xi) = |xi| + xi^2, the modulus envelope of lambda_symbol at beta=1."""
    xi = np.asarray(xi, dtype=np.float64)
    out = np.abs(xi) + xi**2
    return out if out.ndim else float(out)


def _check_nonzero(*xis) -> None:
    for v in xis:
        if np.any(np.asarray(v) == 0):
            raise DegenerateFrequencyError("resonance requires xi, xi1, xi2 all nonzero")


def resonance(zeta, zeta1, params: ModelParams):
    """Oscillation rate of an interacting mode pair, zeta2 = zeta - zeta1:

        R(zeta, zeta1) = 3*xi*xi1*xi2 + eps*(eta*xi1 - eta1*xi)^2/(xi*xi1*xi2)

    which equals P(zeta) - P(zeta1) - P(zeta2). Symmetric under
    zeta1 <-> zeta2. Errors when any of xi, xi1, xi2 vanishes.
    """
    xi, eta = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in zeta))
    xi1, eta1 = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in zeta1))
    xi, eta, xi1, eta1 = np.broadcast_arrays(xi, eta, xi1, eta1)
    xi2 = xi - xi1
    _check_nonzero(xi, xi1, xi2)
    triple = xi * xi1 * xi2
    out = 3.0 * triple + params.epsilon * (eta * xi1 - eta1 * xi) ** 2 / triple
    return out if out.ndim else float(out)


def dissipation_gap(xi, xi1, params: ModelParams):
    """M(xi, xi1) = rho(xi1) + rho(xi2) - rho(xi), xi2 = xi - xi1.

    Closed form alpha * (-2*xi1*xi2*(xi1^2 - xi*xi1 + 2*xi^2 - 1)) for the
    dmkp kind; direct rho differences otherwise.
    """
    xi = np.asarray(xi, dtype=np.float64)
    xi1 = np.asarray(xi1, dtype=np.float64)
    xi, xi1 = np.broadcast_arrays(xi, xi1)
    xi2 = xi - xi1
    if params.dissipation_kind == DMKP:
        out = params.alpha * (-2.0 * xi1 * xi2 * (xi1**2 - xi * xi1 + 2.0 * xi**2 - 1.0))
    else:
        out = dissipation(xi1, params) + dissipation(xi2, params) - dissipation(xi, params)
    return out if np.ndim(out) else float(out)
