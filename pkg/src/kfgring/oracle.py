"""Brute-force numerical verification of the closed forms.

Nothing in this module trusts the analytic spectrum: the radial check
rebuilds the eigenvalue problem on a finite-difference grid and solves the
nonlinear-in-E problem with an outer root find over an inner symmetric
tridiagonal eigensolve; the angular check discretizes the polar equation in
conservative flux form after the symmetrizing substitution
Phi = sqrt(sin theta) * Theta; the normalization and residual checks use
adaptive quadrature and numeric differentiation of the closed-form
eigenfunctions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.optimize import brentq

from .angular import QuantumNumbers, solve_angular
from .errors import DomainError
from .potential import PotentialParams
from .radial import BoundState, chi_eval
from .specfun import integrate

__all__ = [
    "RadialOracleConfig",
    "OracleReport",
    "AngularOracleResult",
    "radial_oracle",
    "angular_oracle",
    "normalization_check",
    "ode_residual",
]


@dataclass(frozen=True)
class RadialOracleConfig:
    """Grid and iteration budget of the radial finite-difference check.

    r_min = 0 selects the natural uniform grid r_j = j*h with the left
    Dirichlet condition imposed implicitly at r = 0; a positive r_min shifts
    the grid to r_min + j*h with an explicit boundary there.  r_max = 0
    selects max(40 b, 20 b / sqrt(c_estimate)), sized so the eigenfunction
    tail is negligible at the box edge.
    """

    r_min: float = 0.0
    r_max: float = 0.0
    grid_size: int = 20000
    outer_tol: float = 1e-12
    max_outer_iter: int = 100

    def __post_init__(self) -> None:
        if self.grid_size < 100:
            raise DomainError("grid_size must be >= 100")
        if self.r_min < 0.0:
            raise DomainError("r_min must be >= 0")
        if self.r_max != 0.0 and not self.r_min < self.r_max:
            raise DomainError("need r_min < r_max")
        if not self.outer_tol > 0.0 or self.max_outer_iter < 1:
            raise DomainError("outer_tol must be positive and max_outer_iter >= 1")


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one independent radial eigensolve."""

    analytic_E: float
    oracle_E: float
    rel_diff: float
    node_count: int
    residual_norm: float
    converged: bool


class AngularOracleResult(NamedTuple):
    lambda_numeric: float
    rel_diff: float


def _screened_w(p: PotentialParams, eta: float, lam: float, r: np.ndarray,
                exact_centrifugal: bool) -> np.ndarray:
    """Effective radial potential of the reduced equation on a grid."""
    s = np.exp(-r / p.b)
    one = 1.0 - s
    b2 = p.b * p.b
    w = (eta / b2) * (p.alpha * (p.alpha - 1.0) * s * s / (one * one) - p.A * s / one)
    if exact_centrifugal:
        w = w + lam / (r * r)
    else:
        w = w + (lam / b2) * (p.C0 + s / (one * one))
    return w


def _mu_k(p: PotentialParams, lambda_fn: Callable[[float], float], E: float, k: int,
          r_min: float, r_max: float, n: int, exact_centrifugal: bool,
          want_vector: bool = False):
    """k-th smallest eigenvalue of -d^2/dr^2 + W(r; E) with Dirichlet ends."""
    eta = (p.M + E) / p.M
    lam = lambda_fn(E)
    if r_min > 0.0:
        h = (r_max - r_min) / (n + 1)
        r = r_min + h * np.arange(1, n + 1)
    else:
        h = r_max / (n + 1)
        r = h * np.arange(1, n + 1)
    w = _screened_w(p, eta, lam, r, exact_centrifugal)
    diag = 2.0 / (h * h) + w
    off = np.full(n - 1, -1.0 / (h * h))
    if want_vector:
        vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(k, k))
        return float(vals[0]), vecs[:, 0]
    vals = eigh_tridiagonal(diag, off, select="i", select_range=(k, k), eigvals_only=True)
    return float(vals[0])


def _solve_outer(p, lambda_fn, k, r_min, r_max, n, E_guess, xtol, maxiter,
                 exact_centrifugal):
    """Root of g(E) = mu_k(E) - (E^2 - M^2), bracketed around E_guess."""
    M = p.M
    cap = M * (1.0 - 1e-9)

    def g(E: float) -> float:
        return _mu_k(p, lambda_fn, E, k, r_min, r_max, n, exact_centrifugal) - (E * E - M * M)

    dE = 1e-5 * M
    while dE < 0.5 * M:
        lo = max(E_guess - dE, -cap)
        hi = min(E_guess + dE, cap)
        glo, ghi = g(lo), g(hi)
        if glo == 0.0:
            return lo
        if ghi == 0.0:
            return hi
        if glo * ghi < 0.0:
            return brentq(g, lo, hi, xtol=xtol, maxiter=maxiter)
        dE *= 5.0
    return None


def node_count(vector: np.ndarray, floor: float = 1e-8) -> int:
    """Interior sign changes of an eigenvector, ignoring numerical noise."""
    v = vector[np.abs(vector) > floor * np.max(np.abs(vector))]
    return int(np.count_nonzero(v[:-1] * v[1:] < 0.0))


def radial_oracle(
    p: PotentialParams,
    q: QuantumNumbers,
    lambda_fn: Callable[[float], float],
    E_guess: float,
    cfg: RadialOracleConfig = RadialOracleConfig(),
    exact_centrifugal: bool = False,
) -> OracleReport:
    """Independent eigensolve of the radial problem near E_guess.

    For each of three nested grids (n/4, n/2, n) the nonlinear eigenproblem
    is solved by an outer scalar root find over the (n_r+1)-th eigenvalue of
    the finite-difference operator.  The three energies are then combined by
    generalized Richardson extrapolation with exponents {2p-1, 2}, where p
    solves the indicial equation p(p-1) = eta*alpha*(alpha-1) + lambda at
    the origin; fractional p makes h^(2p-1) the leading error term, and for
    p near the smooth case the fit degenerates to plain h^2 Richardson.

    The report carries the node count of the converged eigenvector, which
    must equal n_r for a confirmed match, and the outer residual on the
    finest grid.

    With exact_centrifugal=True the operator keeps the true lambda/r^2 term
    instead of its exponential stand-in; that variant quantifies the
    approximation gap and is reported, never asserted against.
    """
    M = p.M
    if not abs(E_guess) < M:
        raise DomainError("oracle requires |E_guess| < M")
    lam_g = lambda_fn(E_guess)
    c_est = p.b * p.b * (M * M - E_guess * E_guess) + lam_g * p.C0
    sc_est = math.sqrt(max(c_est, 1e-12))
    r_max = cfg.r_max if cfg.r_max > 0.0 else max(40.0 * p.b, 20.0 * p.b / sc_est)
    eta_g = (M + E_guess) / M
    strength = eta_g * p.alpha * (p.alpha - 1.0) + lam_g
    p_ind = 0.5 * (1.0 + math.sqrt(max(1.0 + 4.0 * strength, 0.0)))
    grids = (cfg.grid_size // 4, cfg.grid_size // 2, cfg.grid_size)
    energies = []
    for n in grids:
        root = _solve_outer(
            p, lambda_fn, q.n_r, cfg.r_min, r_max, n, E_guess,
            cfg.outer_tol, cfg.max_outer_iter, exact_centrifugal,
        )
        if root is None:
            return OracleReport(
                analytic_E=E_guess, oracle_E=math.nan, rel_diff=math.nan,
                node_count=-1, residual_norm=math.nan, converged=False,
            )
        energies.append(root)
    span = r_max - cfg.r_min if cfg.r_min > 0.0 else r_max
    hs = [span / (n + 1) for n in grids]
    exponent = 2.0 * p_ind - 1.0
    # beyond h^6 the fractional term is under machine noise and the fit matrix
    # is numerically singular, so fall back to plain h^2 Richardson
    if abs(exponent - 2.0) < 0.1 or exponent > 6.0:
        oracle_E = (4.0 * energies[2] - energies[1]) / 3.0
    else:
        design = np.array([[1.0, h**exponent, h**2] for h in hs])
        oracle_E = float(np.linalg.solve(design, np.array(energies))[0])
    n_fine = grids[-1]
    E_fine = energies[-1]
    mu, vec = _mu_k(
        p, lambda_fn, E_fine, q.n_r, cfg.r_min, r_max, n_fine, exact_centrifugal,
        want_vector=True,
    )
    residual = abs(mu - (E_fine * E_fine - M * M))
    return OracleReport(
        analytic_E=E_guess,
        oracle_E=oracle_E,
        rel_diff=abs(E_guess - oracle_E) / M,
        node_count=node_count(vec),
        residual_norm=residual,
        converged=True,
    )


def _angular_lambda_fv(p: PotentialParams, m: int, eta: float, N: int, n: int) -> float:
    """(N+1)-th eigenvalue of the polar operator, flux-form discretization.

    Cell-centered grid theta_j = (j-1/2)h with face values of sin(theta) as
    conductivities; the generalized problem A Theta = lambda sin(theta) Theta
    is symmetrized by Phi = sqrt(sin theta) * Theta.  sin(0) = sin(pi) = 0
    closes the boundary fluxes, so no boundary condition is imposed by hand.
    """
    h = math.pi / n
    j = np.arange(1, n + 1)
    theta = (j - 0.5) * h
    sin_c = np.sin(theta)
    sin_r = np.sin(np.minimum(j * h, math.pi))
    sin_l = np.sin((j - 1) * h)
    ring = (m * m + eta * p.beta_prime + eta * p.beta * np.cos(theta)) / sin_c
    diag = (sin_r + sin_l) / (h * h * sin_c) + ring / sin_c
    off = -sin_r[:-1] / (h * h * np.sqrt(sin_c[:-1] * sin_c[1:]))
    vals = eigh_tridiagonal(diag, off, select="i", select_range=(N, N), eigvals_only=True)
    return float(vals[0])


def angular_oracle(
    p: PotentialParams, m: int, eta: float, N: int, grid_size: int = 2000
) -> AngularOracleResult:
    """Finite-difference check of the angular separation constant.

    Solves the polar eigenproblem on grids of grid_size and 2*grid_size
    cells, Richardson-extrapolates the (N+1)-th eigenvalue, and compares
    with the closed form (N+zeta)(N+zeta+1).  rel_diff is scaled by
    max(1, lambda) so the lambda = 0 ground case stays meaningful.
    """
    exact = solve_angular(QuantumNumbers(n_r=0, N=N, m=m), p, eta).lam
    lam_1 = _angular_lambda_fv(p, m, eta, N, grid_size)
    lam_2 = _angular_lambda_fv(p, m, eta, N, 2 * grid_size)
    lam_num = (4.0 * lam_2 - lam_1) / 3.0
    return AngularOracleResult(lam_num, abs(lam_num - exact) / max(1.0, abs(exact)))


def normalization_check(state: BoundState, tol: float = 1e-12) -> float:
    """|integral of chi^2 over (0, infinity) - 1| by adaptive quadrature.

    The box is truncated where the tail bound e^{-2 sqrt(c) r / b} drops
    below 1e-14, so truncation cannot mask a normalization defect at the
    reported precision.
    """
    r_max = state.params.b * (14.0 * math.log(10.0)) / (2.0 * state.sqrt_c)
    total = integrate(lambda r: chi_eval(state, r) ** 2, 0.0, r_max, tol=tol)
    return abs(total - 1.0)


def ode_residual(state: BoundState, sample_radii: Sequence[float]) -> float:
    """Max relative defect of chi in the reduced radial equation.

    chi'' is formed numerically with the fourth-order five-point stencil at
    steps 2h and h (h = 1e-3 b) combined by Richardson, then tested against
    W(r) chi - (E^2 - M^2) chi.  The step balances truncation (negligible
    after Richardson) against amplified evaluation noise of chi, which
    scales as 1/h^2; 1e-3 b keeps the noise floor two decades under the
    1e-6 acceptance line for the deepest wells checked.  Both the coupling
    eta and the eigenvalue term are derived from the state's claimed E, so
    a wrong energy shows up through the potential as well as through
    E^2 - M^2.  Each sample is scaled by the largest term so the result is
    a relative residual; the max over samples is returned.
    """
    radii = np.asarray(list(sample_radii), dtype=float)
    if radii.size == 0:
        raise DomainError("sample_radii must not be empty")
    p = state.params
    h = 1e-3 * p.b
    if np.any(radii - 4.0 * h <= 0.0):
        raise DomainError("sample radii must exceed 4e-3 * b for the stencil")
    offsets = np.array([-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0]) * h
    pts = radii[:, None] + offsets[None, :]
    chi = chi_eval(state, pts.ravel()).reshape(pts.shape)
    # columns:      -4h   -2h   -h   0    h    2h   4h
    d2_h = (-chi[:, 1] + 16.0 * chi[:, 2] - 30.0 * chi[:, 3] + 16.0 * chi[:, 4]
            - chi[:, 5]) / (12.0 * h * h)
    d2_2h = (-chi[:, 0] + 16.0 * chi[:, 1] - 30.0 * chi[:, 3] + 16.0 * chi[:, 5]
             - chi[:, 6]) / (48.0 * h * h)
    d2 = (16.0 * d2_h - d2_2h) / 15.0
    lam = state.angular.lam
    eta = (p.M + state.E) / p.M
    w = _screened_w(p, eta, lam, radii, exact_centrifugal=False)
    mu = state.E * state.E - p.M * p.M
    chi0 = chi[:, 3]
    defect = np.abs(-d2 + w * chi0 - mu * chi0)
    scale = np.maximum.reduce([np.abs(d2), np.abs(w * chi0), np.abs(mu * chi0)])
    scale = np.maximum(scale, 1e-300)
    return float(np.max(defect / scale))
