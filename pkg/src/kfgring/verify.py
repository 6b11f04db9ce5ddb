"""Self-contained verification suites tying the closed forms to the oracles.

Each check returns a CheckResult; run_suite assembles them into a
VerificationReport.  The checks are the library's acceptance surface: a
report with passed=True means every analytic energy, eigenfunction, and
internal identity survived independent numerical cross-examination at the
stated tolerances.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .angular import QuantumNumbers, solve_angular, theta_eval
from .errors import DomainError
from .oracle import angular_oracle, normalization_check, ode_residual, radial_oracle
from .potential import PotentialParams, centrifugal_approx
from .radial import REASON_SQRT_C, BoundState, nu_consistency
from .specfun import JacobiParams, hyp2f1_terminating, integrate, jacobi_poly, log_gamma
from .spectrum import SpectrumRequest, solve_states

__all__ = [
    "CheckResult",
    "VerificationReport",
    "ACCEPTANCE_GRID",
    "SUITES",
    "collect_grid_states",
    "run_suite",
    "check_reference_root",
    "check_spurious_rejection",
    "check_oracle_grid",
    "check_angular_quantization",
    "check_normalization",
    "check_limit_consistency",
    "check_ode_residual",
    "check_jacobi_2f1",
    "check_nu_balance",
]

# (alpha, A, C0) combinations swept by the oracle comparison; all at
# M = b = 1, beta = beta' = 0, m = 0, N <= 1, n_r <= 1
ACCEPTANCE_GRID: tuple[tuple[float, float, float], ...] = tuple(
    itertools.product((1.0, 2.0), (2.0, 8.0, 40.0), (0.0, 1.0 / 12.0))
)

_REFERENCE_E = (-1.0 + math.sqrt(7.0)) / 4.0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_s: float


@dataclass(frozen=True)
class VerificationReport:
    suite: str
    results: tuple[CheckResult, ...]
    total_s: float

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)


def _timed(fn: Callable[[], tuple[bool, str]], name: str) -> CheckResult:
    start = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, passed, detail, time.perf_counter() - start)


def collect_grid_states() -> tuple[BoundState, ...]:
    """All admissible states of the oracle comparison grid."""
    states: list[BoundState] = []
    for alpha, A, C0 in ACCEPTANCE_GRID:
        p = PotentialParams(M=1.0, b=1.0, alpha=alpha, A=A, C0=C0)
        res = solve_states(SpectrumRequest(params=p, n_r_max=1, N_max=1, m_range=(0, 0)))
        states.extend(res.states)
    return tuple(states)


def check_reference_root(tol: float | None = None) -> CheckResult:
    """Single admissible screened-Coulomb state at the closed-form energy."""
    thr = 1e-10 if tol is None else tol

    def body() -> tuple[bool, str]:
        p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, C0=0.0)
        res = solve_states(SpectrumRequest(params=p))
        if len(res.states) != 1:
            return False, f"expected 1 admissible state, found {len(res.states)}"
        dev = abs(res.states[0].E - _REFERENCE_E)
        return dev <= thr, f"|dE|={dev:.3e} (limit {thr:.1e})"

    return _timed(body, "reference-root")


def check_spurious_rejection(tol: float | None = None) -> CheckResult:
    """A=0 has no bound states; both squared-equation roots are rejected."""
    del tol  # structural check, no tolerance to scale

    def body() -> tuple[bool, str]:
        expect = math.sqrt(3.0) / 2.0
        for alpha in (0.0, 1.0):
            p = PotentialParams(M=1.0, b=1.0, alpha=alpha, A=0.0, C0=0.0)
            res = solve_states(SpectrumRequest(params=p))
            if res.states:
                return False, f"alpha={alpha}: unexpected admissible states"
            for root in (-expect, expect):
                hits = [
                    s for s in res.rejected
                    if abs(s.E - root) <= 1e-9 and s.rejection_reason == REASON_SQRT_C
                ]
                if not hits:
                    return False, f"alpha={alpha}: root {root:+.6f} not rejected as {REASON_SQRT_C!r}"
        return True, "both roots +-sqrt(3)/2 rejected with reason 'sqrt_c <= 0'"

    return _timed(body, "spurious-rejection")


def check_oracle_grid(
    states: Sequence[BoundState] | None = None, tol: float | None = None
) -> CheckResult:
    """Finite-difference eigensolve agrees with every analytic grid energy."""
    thr = 1e-6 if tol is None else tol

    def body() -> tuple[bool, str]:
        pool = collect_grid_states() if states is None else tuple(states)
        worst = 0.0
        for s in pool:
            lam = s.angular.lam
            rep = radial_oracle(s.params, s.quantum, lambda E, lam=lam: lam, s.E)
            if not rep.converged:
                return False, f"oracle found no bracket at E={s.E:.6f}"
            if rep.node_count != s.quantum.n_r:
                return False, (
                    f"node count {rep.node_count} != n_r={s.quantum.n_r} at E={s.E:.6f}"
                )
            worst = max(worst, rep.rel_diff)
        ok = worst <= thr
        return ok, f"{len(pool)} states, worst rel diff {worst:.3e} (limit {thr:.1e})"

    return _timed(body, "oracle-grid")


def check_angular_quantization(tol: float | None = None) -> CheckResult:
    """Closed-form separation constant vs polar finite differences."""
    thr = 1e-5 if tol is None else tol
    cases = [(0.0, 0.0, 1.0, m) for m in (0, 1, 2)] + [(0.4, 0.5, 1.8, 1)]

    def body() -> tuple[bool, str]:
        worst = 0.0
        for beta, beta_prime, eta, m in cases:
            p = PotentialParams(
                M=1.0, b=1.0, alpha=1.0, A=2.0, beta=beta, beta_prime=beta_prime
            )
            for N in (0, 1, 2):
                rep = angular_oracle(p, m, eta, N, grid_size=2000)
                worst = max(worst, rep.rel_diff)
        return worst <= thr, f"12 eigenvalues, worst rel diff {worst:.3e} (limit {thr:.1e})"

    return _timed(body, "angular-quantization")


def check_normalization(
    states: Sequence[BoundState] | None = None, tol: float | None = None
) -> CheckResult:
    """Radial norms integrate to 1; polar modes are orthonormal."""
    thr = 1e-8 if tol is None else tol

    def body() -> tuple[bool, str]:
        pool = collect_grid_states() if states is None else tuple(states)
        worst_r = max(normalization_check(s) for s in pool)
        worst_a = 0.0
        for beta, beta_prime, eta, m in ((0.0, 0.0, 1.0, 0), (0.4, 0.5, 1.8, 1)):
            p = PotentialParams(
                M=1.0, b=1.0, alpha=1.0, A=2.0, beta=beta, beta_prime=beta_prime
            )
            sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=m), p, eta)
            for N in range(6):
                for Np in range(N, 6):
                    val = integrate(
                        lambda x, N=N, Np=Np: theta_eval(sol, N, x) * theta_eval(sol, Np, x),
                        -1.0, 1.0, tol=1e-12,
                    )
                    target = 1.0 if N == Np else 0.0
                    worst_a = max(worst_a, abs(val - target))
        ok = worst_r <= thr and worst_a <= thr
        return ok, (
            f"radial worst {worst_r:.3e} over {len(pool)} states, "
            f"angular worst {worst_a:.3e} (limit {thr:.1e})"
        )

    return _timed(body, "normalization")


def check_limit_consistency(tol: float | None = None) -> CheckResult:
    """alpha in {0,1} degeneracy, central-limit exponents, C0=0 reduction."""
    thr_E = 1e-12 if tol is None else tol
    thr_z = 1e-14 if tol is None else tol

    def body() -> tuple[bool, str]:
        worst_E = 0.0
        for A in (2.0, 8.0):
            results = []
            for alpha in (0.0, 1.0):
                p = PotentialParams(M=1.0, b=1.0, alpha=alpha, A=A, C0=1.0 / 12.0)
                results.append(
                    solve_states(SpectrumRequest(params=p, n_r_max=2, N_max=1))
                )
            r0, r1 = results
            if len(r0.states) != len(r1.states) or len(r0.rejected) != len(r1.rejected):
                return False, f"A={A}: alpha=0 and alpha=1 spectra differ in size"
            for s0, s1 in zip(r0.states + r0.rejected, r1.states + r1.rejected):
                worst_E = max(worst_E, abs(s0.E - s1.E))
        if worst_E > thr_E:
            return False, f"alpha 0 vs 1 energy deviation {worst_E:.3e} > {thr_E:.1e}"
        worst_z = 0.0
        p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0)
        for m in (0, 1, 2, 3):
            for N in (0, 1, 2):
                sol = solve_angular(QuantumNumbers(n_r=0, N=N, m=m), p, 1.3)
                worst_z = max(worst_z, abs(sol.zeta - abs(m)))
                worst_z = max(worst_z, abs(sol.l_eff - (N + abs(m))))
        if worst_z > thr_z:
            return False, f"central-limit exponent deviation {worst_z:.3e} > {thr_z:.1e}"
        r = np.geomspace(0.01, 20.0, 64)
        s = np.exp(-r)
        greene = s / (1.0 - s) ** 2
        reduced = centrifugal_approx(1.0, 0.0, r)
        if not np.array_equal(reduced, greene):
            return False, "C0=0 does not reproduce the Greene-Aldrich form bit-exactly"
        return True, (
            f"spectra dev {worst_E:.3e}, exponent dev {worst_z:.3e}, "
            "C0=0 reduction bit-exact at 64 radii"
        )

    return _timed(body, "limit-consistency")


def check_ode_residual(
    states: Sequence[BoundState] | None = None, tol: float | None = None
) -> CheckResult:
    """Closed-form eigenfunctions satisfy the radial equation; wrong E fails."""
    thr = 1e-6 if tol is None else tol

    def body() -> tuple[bool, str]:
        pool = collect_grid_states() if states is None else tuple(states)
        worst = 0.0
        worst_pert = math.inf
        for s in pool:
            radii = np.geomspace(0.1, 20.0, 50) * s.params.b
            worst = max(worst, ode_residual(s, radii))
            perturbed = dataclasses.replace(s, E=s.E + 1e-3)
            worst_pert = min(worst_pert, ode_residual(perturbed, radii))
        ok = worst <= thr and worst_pert > 1e-4
        return ok, (
            f"{len(pool)} states, worst residual {worst:.3e} (limit {thr:.1e}); "
            f"perturbed-E residual floor {worst_pert:.3e} (must exceed 1e-4)"
        )

    return _timed(body, "ode-residual")


def check_jacobi_2f1(tol: float | None = None) -> CheckResult:
    """Recurrence and terminating-series evaluations of Jacobi agree."""
    thr = 1e-12 if tol is None else tol

    def body() -> tuple[bool, str]:
        rng = np.random.default_rng(20260822)
        worst = 0.0
        for _ in range(200):
            n = int(rng.integers(0, 26))
            a = float(rng.uniform(-0.9, 10.0))
            b = float(rng.uniform(-0.9, 10.0))
            x = float(rng.uniform(-1.0, 1.0))
            p_rec = float(jacobi_poly(JacobiParams(a=a, b=b, n=n), x))
            pref = math.exp(log_gamma(n + a + 1.0) - log_gamma(n + 1.0) - log_gamma(a + 1.0))
            p_ser = pref * hyp2f1_terminating(n, n + a + b + 1.0, a + 1.0, 0.5 * (1.0 - x))
            worst = max(worst, abs(p_rec - p_ser) / max(1.0, abs(p_rec), abs(p_ser)))
        return worst <= thr, f"200 samples n<=25, worst rel dev {worst:.3e} (limit {thr:.1e})"

    return _timed(body, "jacobi-2f1")


def check_nu_balance(
    states: Sequence[BoundState] | None = None, tol: float | None = None
) -> CheckResult:
    """Quantization balance and branch-selection sign at every solved root."""
    thr = 1e-10 if tol is None else tol

    def body() -> tuple[bool, str]:
        pool = collect_grid_states() if states is None else tuple(states)
        worst = 0.0
        for s in pool:
            rep = nu_consistency(s.params, s.quantum, s)
            if not rep.tau_prime_negative:
                return False, f"tau' = {rep.tau_prime:.6f} not negative at E={s.E:.6f}"
            worst = max(worst, abs(rep.balance_lhs - rep.balance_rhs))
        return worst <= thr, f"{len(pool)} states, worst balance dev {worst:.3e} (limit {thr:.1e})"

    return _timed(body, "nu-balance")


_GRID_CHECKS = {"oracle-grid", "normalization", "ode-residual", "nu-balance"}

SUITES: dict[str, tuple[str, ...]] = {
    "all": (
        "reference-root", "spurious-rejection", "oracle-grid",
        "angular-quantization", "normalization", "limit-consistency",
        "ode-residual", "jacobi-2f1", "nu-balance",
    ),
    "reference": ("reference-root", "spurious-rejection"),
    "oracle": ("oracle-grid",),
    "angular": ("angular-quantization",),
    "normalization": ("normalization",),
    "limits": ("limit-consistency",),
    "residual": ("ode-residual",),
    "specfun": ("jacobi-2f1",),
    "nu": ("nu-balance",),
}


def run_suite(suite: str = "all", tol: float | None = None) -> VerificationReport:
    """Run one named suite; grid states are solved once and shared."""
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    names = SUITES[suite]
    shared: tuple[BoundState, ...] | None = None
    if any(n in _GRID_CHECKS for n in names):
        shared = collect_grid_states()
    start = time.perf_counter()
    results = []
    for name in names:
        if name == "reference-root":
            results.append(check_reference_root(tol))
        elif name == "spurious-rejection":
            results.append(check_spurious_rejection(tol))
        elif name == "oracle-grid":
            results.append(check_oracle_grid(shared, tol))
        elif name == "angular-quantization":
            results.append(check_angular_quantization(tol))
        elif name == "normalization":
            results.append(check_normalization(shared, tol))
        elif name == "limit-consistency":
            results.append(check_limit_consistency(tol))
        elif name == "ode-residual":
            results.append(check_ode_residual(shared, tol))
        elif name == "jacobi-2f1":
            results.append(check_jacobi_2f1(tol))
        else:
            results.append(check_nu_balance(shared, tol))
    return VerificationReport(suite=suite, results=tuple(results), total_s=time.perf_counter() - start)
