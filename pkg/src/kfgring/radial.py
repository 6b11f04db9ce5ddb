"""Closed forms for the radial bound-state problem.

The reduced radial equation in s = e^{-r/b} is of hypergeometric type with
polynomial coefficients; its bound solutions are s^sqrt(c) (1-s)^K times a
Jacobi polynomial.  This module houses the reduction parameters, the signed
quantization rule, the energy residual whose roots are the spectrum, the
eigenfunction in both polynomial forms, its normalization constant, and a
consistency diagnostic for the reduction internals.

Sign convention: the quantization is solved before squaring, so sqrt(c)
carries a sign.  Roots with sqrt_c_signed <= 0 are formal solutions of the
squared transcendental equation only and are rejected, never dropped
silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .angular import AngularSolution, QuantumNumbers, solve_angular
from .errors import DomainError, InadmissibleStateError
from .potential import PotentialParams
from .specfun import _jacobi_rec, hyp2f1_terminating, log_gamma

__all__ = [
    "NuParams",
    "BoundState",
    "NuConsistencyReport",
    "nu_params",
    "sqrt_c_signed",
    "energy_residual",
    "bound_state",
    "chi_eval",
    "chi_eval_hypergeometric",
    "chi_norm",
    "nu_consistency",
]

REASON_SQRT_C = "sqrt_c <= 0"
REASON_COMPLEX_LAMBDA = "complex Lambda"
REASON_EPSILON = "epsilon <= 0"
REASON_EDGE = "edge"


@dataclass(frozen=True)
class NuParams:
    """Reduction parameters of the hypergeometric-type radial equation.

    a_nu absorbs the constant 1/4 coming from the first-derivative term, so
    the identity a_nu - b_nu + c_nu = 1/4 + eta*alpha*(alpha-1) + lambda
    holds; k_nu is the root of the discriminant condition that makes the
    square root in the reduction a perfect square (minus branch), and
    lambda_bar is the resulting linear-term eigenvalue.
    """

    a_nu: float
    b_nu: float
    c_nu: float
    k_nu: float
    lambda_bar: float


@dataclass(frozen=True)
class BoundState:
    """One root of the energy residual, admissible or rejected.

    Derived fields: epsilon = b*sqrt(M^2-E^2), eta = (M+E)/M,
    Lambda = sqrt(1/4 + eta*alpha*(alpha-1) + lambda), K = 1/2 + Lambda,
    sqrt_c = signed quantization value at E.  norm is the radial
    normalization constant, present only when the state is admissible.
    """

    E: float
    epsilon: float
    eta: float
    Lambda: float
    K: float
    sqrt_c: float
    norm: float | None
    quantum: QuantumNumbers
    angular: AngularSolution
    params: PotentialParams
    admissible: bool
    rejection_reason: str | None = None


@dataclass(frozen=True)
class NuConsistencyReport:
    """Internal-consistency checks of the reduction at a solved root."""

    tau_prime: float
    balance_lhs: float
    balance_rhs: float
    identity_dev: float
    tau_prime_negative: bool
    balance_ok: bool
    identity_ok: bool

    @property
    def passed(self) -> bool:
        return self.tau_prime_negative and self.balance_ok and self.identity_ok


def nu_params(p: PotentialParams, eta: float, epsilon: float, lam: float) -> NuParams:
    """Reduction parameters at given coupling, decay constant and lambda."""
    if not all(math.isfinite(v) for v in (eta, epsilon, lam)):
        raise DomainError("nu_params inputs must be finite")
    shape = p.alpha * (p.alpha - 1.0)
    a_nu = 0.25 + epsilon * epsilon + p.A * eta + p.alpha * eta * (p.alpha - 1.0) + lam * p.C0
    b_nu = 2.0 * epsilon * epsilon + p.A * eta + 2.0 * lam * p.C0 - lam
    c_nu = epsilon * epsilon + lam * p.C0
    lambda_sq = a_nu - b_nu + c_nu
    expected = 0.25 + eta * shape + lam
    scale = max(1.0, abs(a_nu) + abs(b_nu) + abs(c_nu))
    if abs(lambda_sq - expected) > 1e-12 * scale:
        raise DomainError("reduction identity a - b + c violated; inputs inconsistent")
    if c_nu < 0.0 or lambda_sq < 0.0:
        raise DomainError("reduction requires c >= 0 and a - b + c >= 0")
    sqrt_c = math.sqrt(c_nu)
    big_lambda = math.sqrt(lambda_sq)
    k_nu = b_nu - 2.0 * c_nu - 2.0 * sqrt_c * big_lambda
    # pi' of the selected branch is -1/2 - (sqrt_c + Lambda)
    lambda_bar = k_nu - 0.5 - sqrt_c - big_lambda
    return NuParams(a_nu=a_nu, b_nu=b_nu, c_nu=c_nu, k_nu=k_nu, lambda_bar=lambda_bar)


def sqrt_c_signed(p: PotentialParams, q: QuantumNumbers, eta: float, lam: float) -> float:
    """Signed quantization value of sqrt(c) for radial index n_r.

    Returns (A*eta - lambda - 1/2 - Lambda*(1+2n_r) - n_r(n_r+1)) /
    (2*Lambda + 1 + 2*n_r).  A non-positive value means no bound state at
    this configuration; the sign is the information lost on squaring the
    transcendental energy equation.
    """
    arg = 0.25 + eta * p.alpha * (p.alpha - 1.0) + lam
    if arg < 0.0:
        raise DomainError("complex Lambda: 1/4 + eta*alpha*(alpha-1) + lambda < 0")
    big_lambda = math.sqrt(arg)
    n = q.n_r
    num = p.A * eta - lam - 0.5 - big_lambda * (1.0 + 2.0 * n) - n * (n + 1.0)
    return num / (2.0 * big_lambda + 1.0 + 2.0 * n)


def energy_residual(p: PotentialParams, q: QuantumNumbers, E: float) -> float:
    """Root function of the bound-state energies.

    f(E) = b^2 (M^2 - E^2) + lambda(E) C0 - [sqrt_c_signed(E)]^2, with
    lambda re-evaluated at every E because eta = (M+E)/M feeds the angular
    quantization.  f(E) = 0 together with sqrt_c_signed(E) > 0 characterizes
    a bound state.
    """
    if not abs(E) < p.M:
        raise DomainError("bound-state search requires |E| < M")
    eta = (p.M + E) / p.M
    sol = solve_angular(q, p, eta)
    sc = sqrt_c_signed(p, q, eta, sol.lam)
    return p.b * p.b * (p.M * p.M - E * E) + sol.lam * p.C0 - sc * sc


def _radial_norm(b: float, n: int, sqrt_c: float, K: float) -> float:
    # valid for sqrt_c > 0 and 2K - 1 > -1, the convergence window of the
    # normalization integral
    log_sq = (
        log_gamma(n + 1.0)
        + math.log(2.0 * sqrt_c)
        + math.log(n + K + sqrt_c)
        + log_gamma(2.0 * (K + sqrt_c) + n)
        - math.log(b)
        - math.log(n + K)
        - log_gamma(n + 2.0 * sqrt_c + 1.0)
        - log_gamma(n + 2.0 * K)
    )
    return math.exp(0.5 * log_sq)


def bound_state(p: PotentialParams, q: QuantumNumbers, E: float) -> BoundState:
    """Assemble the full state record at energy E, classifying admissibility.

    Admissibility is three conditions: epsilon > 0, sqrt_c_signed > 0, and a
    real Lambda.  Failing states come back flagged with a reason, never as an
    exception, so spurious roots of the squared equation stay visible.
    """
    if not abs(E) < p.M:
        raise DomainError("bound states require |E| < M")
    eta = (p.M + E) / p.M
    sol = solve_angular(q, p, eta)
    epsilon = p.b * math.sqrt(max(p.M * p.M - E * E, 0.0))
    arg = 0.25 + eta * p.alpha * (p.alpha - 1.0) + sol.lam
    if arg < 0.0:
        return BoundState(
            E=E, epsilon=epsilon, eta=eta, Lambda=math.nan, K=math.nan,
            sqrt_c=math.nan, norm=None, quantum=q, angular=sol, params=p,
            admissible=False, rejection_reason=REASON_COMPLEX_LAMBDA,
        )
    big_lambda = math.sqrt(arg)
    K = 0.5 + big_lambda
    sc = sqrt_c_signed(p, q, eta, sol.lam)
    if epsilon <= 0.0:
        reason = REASON_EPSILON
    elif sc <= 0.0:
        reason = REASON_SQRT_C
    else:
        reason = None
    norm = _radial_norm(p.b, q.n_r, sc, K) if reason is None else None
    return BoundState(
        E=E, epsilon=epsilon, eta=eta, Lambda=big_lambda, K=K, sqrt_c=sc,
        norm=norm, quantum=q, angular=sol, params=p,
        admissible=reason is None, rejection_reason=reason,
    )


def _require_admissible(state: BoundState) -> None:
    if not state.admissible:
        raise InadmissibleStateError(
            f"operation needs an admissible state, got a root rejected as "
            f"{state.rejection_reason!r}"
        )


def chi_eval(state: BoundState, r):
    """Reduced radial eigenfunction chi(r), Jacobi-polynomial form.

    chi(r) = C_{n_r} s^sqrt(c) (1-s)^K P_{n_r}^{(2 sqrt(c), 2K-1)}(1-2s)
    with s = e^{-r/b}.  The power-law prefactor is evaluated in log space so
    the far tail underflows gracefully to zero instead of overflowing
    intermediate factors.  Accepts scalar or array r > 0.
    """
    _require_admissible(state)
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("radius must be positive")
    b = state.params.b
    s = np.exp(-r_arr / b)
    log_pref = -state.sqrt_c * r_arr / b + state.K * np.log1p(-s)
    poly = _jacobi_rec(
        state.quantum.n_r, 2.0 * state.sqrt_c, 2.0 * state.K - 1.0, 1.0 - 2.0 * s
    )
    val = state.norm * np.exp(log_pref) * poly
    if np.isscalar(r):
        return float(val)
    return val


def chi_eval_hypergeometric(state: BoundState, r):
    """chi(r) through the terminating hypergeometric form.

    Same function as chi_eval: the Jacobi polynomial is expanded as
    [Gamma(n+2sqrt(c)+1) / (n! Gamma(2sqrt(c)+1))] *
    2F1(-n, n + 2 sqrt(c) + 2K; 2 sqrt(c) + 1; s).  Used as an independent
    evaluation path; the two must agree to roundoff.
    """
    _require_admissible(state)
    r_arr = np.atleast_1d(np.asarray(r, dtype=float))
    if np.any(r_arr <= 0.0):
        raise DomainError("radius must be positive")
    n = state.quantum.n_r
    sc = state.sqrt_c
    K = state.K
    b = state.params.b
    log_binom = log_gamma(n + 2.0 * sc + 1.0) - log_gamma(n + 1.0) - log_gamma(2.0 * sc + 1.0)
    out = np.empty_like(r_arr)
    for i, ri in enumerate(r_arr):
        s = math.exp(-ri / b)
        series = hyp2f1_terminating(n, n + 2.0 * sc + 2.0 * K, 2.0 * sc + 1.0, s)
        log_pref = -sc * ri / b + K * math.log1p(-s)
        out[i] = state.norm * math.exp(log_binom + log_pref) * series
    if np.isscalar(r):
        return float(out[0])
    return out


def chi_norm(state: BoundState) -> float:
    """Normalization constant C_{n_r} making the r-integral of chi^2 one.

    C = sqrt[ n! 2 sqrt(c) (n+K+sqrt(c)) Gamma(2(K+sqrt(c))+n)
              / (b (n+K) Gamma(n+2 sqrt(c)+1) Gamma(n+2K)) ],
    evaluated with log-gamma arithmetic.  Requires sqrt_c > 0 and
    2K - 1 > -1, the validity window of the closed-form integral.
    """
    if not state.sqrt_c > 0.0:
        raise InadmissibleStateError("normalization requires sqrt_c > 0")
    if not 2.0 * state.K - 1.0 > -1.0:
        raise InadmissibleStateError("normalization requires K > 0")
    return _radial_norm(state.params.b, state.quantum.n_r, state.sqrt_c, state.K)


def nu_consistency(p: PotentialParams, q: QuantumNumbers, state: BoundState) -> NuConsistencyReport:
    """Check the reduction internals at a solved root.

    (i) the selected branch gives tau' = -2 [1 + sqrt(c) + sqrt(c+a-b)] < 0;
    (ii) the linear-term eigenvalue balances the degree-n_r condition
    lambda_bar = 2 n_r [1 + sqrt(c) + sqrt(c+a-b)] + n_r (n_r - 1);
    (iii) the parameter identity c + a - b = 1/4 + eta*alpha*(alpha-1) +
    lambda.  (ii) holds only at roots of the energy residual, so a perturbed
    energy makes it fail.
    """
    eta = state.eta
    lam = state.angular.lam
    nup = nu_params(p, eta, state.epsilon, lam)
    sqrt_c = math.sqrt(nup.c_nu)
    big_lambda = math.sqrt(nup.a_nu - nup.b_nu + nup.c_nu)
    tau_prime = -2.0 * (1.0 + sqrt_c + big_lambda)
    n = q.n_r
    rhs = 2.0 * n * (1.0 + sqrt_c + big_lambda) + n * (n - 1.0)
    identity_dev = abs(
        nup.c_nu + nup.a_nu - nup.b_nu - (0.25 + eta * p.alpha * (p.alpha - 1.0) + lam)
    )
    scale = max(1.0, abs(nup.a_nu) + abs(nup.b_nu) + abs(nup.c_nu))
    return NuConsistencyReport(
        tau_prime=tau_prime,
        balance_lhs=nup.lambda_bar,
        balance_rhs=rhs,
        identity_dev=identity_dev,
        tau_prime_negative=tau_prime < 0.0,
        balance_ok=abs(nup.lambda_bar - rhs) <= 1e-10,
        identity_ok=identity_dev <= 1e-12 * scale,
    )
