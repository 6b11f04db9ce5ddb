"""Screened central potential with a ring-shaped angular term.

Natural units hbar = c = 1 throughout; the kinetic prefactor is 1/(2M).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "PotentialParams",
    "ApproxErrorRow",
    "eval_potential",
    "centrifugal_approx",
    "approx_error_scan",
]

# Smallest r/b the evaluators accept; below this the screened terms are 0/0.
_R_OVER_B_FLOOR = 1e-12


@dataclass(frozen=True)
class PotentialParams:
    """Physical inputs of the model.

    Parameters
    ----------
    M : float
        Rest mass (inverse length), > 0.
    b : float
        Screening length, > 0.
    alpha : float
        Dimensionless shape parameter of the central term.
    A : float
        Dimensionless central strength.
    beta, beta_prime : float
        Dimensionless ring strengths multiplying cos(theta)/(r^2 sin^2 theta)
        and 1/(r^2 sin^2 theta).
    C0 : float
        Dimensionless constant of the improved centrifugal approximation.
    """

    M: float
    b: float
    alpha: float
    A: float
    beta: float = 0.0
    beta_prime: float = 0.0
    C0: float = 1.0 / 12.0

    def __post_init__(self) -> None:
        fields = (self.M, self.b, self.alpha, self.A, self.beta, self.beta_prime, self.C0)
        if not all(math.isfinite(v) for v in fields):
            raise DomainError("potential parameters must be finite")
        if self.M <= 0.0:
            raise DomainError("rest mass M must be positive")
        if self.b <= 0.0:
            raise DomainError("screening length b must be positive")


class ApproxErrorRow(NamedTuple):
    r: float
    exact: float
    approx: float
    rel_error: float


def _check_radius(r: float, b: float) -> None:
    if not r > 0.0:
        raise DomainError("radius must be positive")
    if r / b < _R_OVER_B_FLOOR:
        raise DomainError("radius too close to the origin for stable evaluation")


def eval_potential(p: PotentialParams, r: float, theta: float) -> float:
    """Full potential V(r, theta).

    V = (1/2M) [ alpha(alpha-1) e^{-2r/b} / (b^2 (1-e^{-r/b})^2)
                 - A e^{-r/b} / (b^2 (1-e^{-r/b}))
                 + (beta' + beta cos(theta)) / (r^2 sin^2 theta) ]
    """
    _check_radius(r, p.b)
    if not 0.0 < theta < math.pi:
        raise DomainError("theta must lie strictly inside (0, pi)")
    s = math.exp(-r / p.b)
    one = 1.0 - s
    central = (p.alpha * (p.alpha - 1.0) * s * s / (one * one) - p.A * s / one) / (p.b * p.b)
    sin2 = math.sin(theta) ** 2
    ring = (p.beta_prime + p.beta * math.cos(theta)) / (r * r * sin2)
    return (central + ring) / (2.0 * p.M)


def centrifugal_approx(b: float, C0: float, r):
    """Improved exponential stand-in for 1/r^2.

    Returns (1/b^2) [C0 + e^{-r/b} / (1-e^{-r/b})^2].  With C0 = 0 this is
    the plain exponential replacement; the constant corrects the small-r
    expansion.  Accepts scalar or array r.
    """
    if not b > 0.0:
        raise DomainError("screening length b must be positive")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0) or np.any(r_arr / b < _R_OVER_B_FLOOR):
        raise DomainError("radius must be positive and not closer to 0 than 1e-12*b")
    s = np.exp(-r_arr / b)
    val = (C0 + s / (1.0 - s) ** 2) / (b * b)
    if np.isscalar(r):
        return float(val)
    return val


def approx_error_scan(b: float, C0: float, r_grid: Sequence[float]) -> list[ApproxErrorRow]:
    """Compare the exponential stand-in against the exact 1/r^2 on a grid.

    Purely reporting; nothing is asserted about the error size.
    """
    rows = list(r_grid)
    if not rows:
        raise DomainError("r_grid must not be empty")
    out = []
    for r in rows:
        _check_radius(float(r), b)
        exact = 1.0 / (r * r)
        approx = centrifugal_approx(b, C0, float(r))
        out.append(ApproxErrorRow(float(r), exact, approx, abs(approx - exact) / exact))
    return out
