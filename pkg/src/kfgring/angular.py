"""Angular eigenproblem of the separated wave equation.

The polar equation carries the ring strengths through the combination
(m^2 + eta*beta' + eta*beta*cos(theta)) / sin^2(theta), where eta = (M+E)/M
couples it to the energy being solved for.  Quantization gives a generally
non-integer effective orbital number l_eff = N + zeta and the separation
constant lambda = l_eff (l_eff + 1) that feeds the radial problem.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RingTooStrongError
from .potential import PotentialParams
from .specfun import _jacobi_rec, log_gamma

__all__ = [
    "QuantumNumbers",
    "AngularSolution",
    "solve_angular",
    "theta_eval",
    "angular_norm",
]


@dataclass(frozen=True)
class QuantumNumbers:
    """Radial node count n_r, angular index N, magnetic number m."""

    n_r: int
    N: int
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.n_r, int) or self.n_r < 0:
            raise DomainError("n_r must be a non-negative integer")
        if not isinstance(self.N, int) or self.N < 0:
            raise DomainError("N must be a non-negative integer")
        if not isinstance(self.m, int):
            raise DomainError("m must be an integer")


@dataclass(frozen=True)
class AngularSolution:
    """Quantization output of the polar equation at fixed eta.

    B and C are the non-negative exponent combinations; the eigenfunction
    carries (1-x)^((B+C)/2) (1+x)^((B-C)/2) when beta >= 0 and the pair
    swaps between the two factors when beta < 0 (B, C themselves depend on
    beta only through beta^2).  lam = (N+zeta)(N+zeta+1) with zeta = B.
    """

    eta: float
    u: float
    zeta: float
    lam: float
    l_eff: float
    B: float
    C: float
    norm: float
    beta: float  # ring strength, recorded to orient the exponent pair


def _norm_constant(B: float, C: float, N: int) -> float:
    # Jacobi orthogonality with weight (1-x)^(B+C) (1+x)^(B-C); the result is
    # symmetric under swapping the two exponents, so it also covers beta < 0.
    for arg in (N + 1.0, N + 2.0 * B + 1.0, N + B + C + 1.0, N + B - C + 1.0):
        if arg <= 0.0:
            raise DomainError("gamma argument must be positive in the angular norm")
    log_sq = (
        math.log(2.0 * N + 2.0 * B + 1.0)
        + log_gamma(N + 1.0)
        + log_gamma(N + 2.0 * B + 1.0)
        - (2.0 * B + 1.0) * math.log(2.0)
        - log_gamma(N + B + C + 1.0)
        - log_gamma(N + B - C + 1.0)
    )
    return math.exp(0.5 * log_sq)


def solve_angular(q: QuantumNumbers, p: PotentialParams, eta: float) -> AngularSolution:
    """Solve the polar quantization at coupling eta.

    Parameters
    ----------
    q : QuantumNumbers
        Only N and m are read here.
    p : PotentialParams
        Supplies the ring strengths beta and beta_prime.
    eta : float
        Coupling (M+E)/M, > 0.

    Returns
    -------
    AngularSolution
        With u = sqrt((m^2 + eta*beta')^2 - eta^2 beta^2),
        zeta = B = sqrt((m^2 + eta*beta' + u)/2), lam = (N+zeta)(N+zeta+1).

    Raises
    ------
    RingTooStrongError
        If u^2 < 0, i.e. |eta*beta| exceeds m^2 + eta*beta'.
    DomainError
        If m^2 + eta*beta' < 0 or eta <= 0.
    """
    if not eta > 0.0:
        raise DomainError("eta must be positive")
    g = q.m * q.m + eta * p.beta_prime
    if g < 0.0:
        raise DomainError("m^2 + eta*beta_prime must be non-negative")
    u_sq = g * g - (eta * p.beta) ** 2
    if u_sq < 0.0:
        raise RingTooStrongError("ring term too strong: u^2 < 0, no real angular solution")
    u = math.sqrt(u_sq)
    B = math.sqrt((g + u) / 2.0)
    C = math.sqrt(max(g - u, 0.0) / 2.0)  # non-negative root; roundoff clipped
    zeta = B
    l_eff = q.N + zeta
    lam = l_eff * (l_eff + 1.0)
    norm = _norm_constant(B, C, q.N)
    return AngularSolution(
        eta=eta, u=u, zeta=zeta, lam=lam, l_eff=l_eff, B=B, C=C, norm=norm, beta=p.beta
    )


def _exponent_pair(sol: AngularSolution) -> tuple[float, float]:
    # Exponent on (1-x) first.  For beta < 0 the stronger singular behavior
    # sits at x = -1, so the pair swaps.
    if sol.beta >= 0.0:
        return sol.B + sol.C, sol.B - sol.C
    return sol.B - sol.C, sol.B + sol.C


def theta_eval(sol: AngularSolution, N: int, x):
    """Normalized polar eigenfunction as a function of x = cos(theta).

    Theta_N(x) = C_N (1-x)^(p/2) (1+x)^(q/2) P_N^(p,q)(x) with (p, q) the
    exponent pair oriented by the sign of beta.  Accepts scalar or array x.
    """
    if N < 0:
        raise DomainError("N must be non-negative")
    x_arr = np.asarray(x, dtype=float)
    if np.any(np.abs(x_arr) > 1.0):
        raise DomainError("x must lie in [-1, 1]")
    aj, bj = _exponent_pair(sol)
    val = (
        _norm_constant(sol.B, sol.C, N)
        * (1.0 - x_arr) ** (0.5 * aj)
        * (1.0 + x_arr) ** (0.5 * bj)
        * _jacobi_rec(N, aj, bj, x_arr)
    )
    if np.isscalar(x):
        return float(val)
    return val


def angular_norm(sol: AngularSolution, N: int) -> float:
    """Normalization constant making the x-integral of Theta_N^2 equal 1."""
    if N < 0:
        raise DomainError("N must be non-negative")
    return _norm_constant(sol.B, sol.C, N)
