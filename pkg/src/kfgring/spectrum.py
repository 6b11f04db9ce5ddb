"""Bound-state enumeration over quantum numbers.

The energy residual is scanned over a window inside (-M, M), sign changes
are bracketed, and each bracket is refined with a hybrid
bisection/secant/inverse-quadratic root finder.  Because the angular
quantization depends on eta = (M+E)/M, the separation constant lambda is
re-evaluated at every trial energy; that coupling loop lives entirely in
the residual.  Every refined root is classified and reported, admissible
or not.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .angular import QuantumNumbers, solve_angular, theta_eval
from .errors import DomainError
from .potential import PotentialParams
from .radial import REASON_EDGE, BoundState, bound_state, chi_eval, energy_residual

__all__ = [
    "SpectrumRequest",
    "SpectrumResult",
    "RootDiagnostic",
    "ExcludedInterval",
    "solve_states",
    "psi_eval",
    "hulthen_spectrum",
    "central_spectrum",
]

_WINDOW_MARGIN = 1e-9


@dataclass(frozen=True)
class SpectrumRequest:
    """Search specification for solve_states.

    energy_window defaults to (-M(1-1e-9), M(1-1e-9)) when None.  m_range is
    an inclusive integer interval.
    """

    params: PotentialParams
    n_r_max: int = 0
    N_max: int = 0
    m_range: tuple[int, int] = (0, 0)
    energy_window: tuple[float, float] | None = None
    scan_points: int = 2001
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.n_r_max < 0 or self.N_max < 0:
            raise DomainError("n_r_max and N_max must be non-negative")
        if self.m_range[0] > self.m_range[1]:
            raise DomainError("empty m_range")
        if self.scan_points < 3:
            raise DomainError("scan_points must be >= 3")
        if not self.tol > 0.0:
            raise DomainError("tol must be positive")
        if self.energy_window is not None:
            lo, hi = self.energy_window
            M = self.params.M
            if not (-M < lo < hi < M):
                raise DomainError("energy window must satisfy -M < lo < hi < M")


class RootDiagnostic(NamedTuple):
    m: int
    N: int
    n_r: int
    E: float
    residual: float
    iterations: int


class ExcludedInterval(NamedTuple):
    m: int
    N: int
    n_r: int
    lo: float
    hi: float
    reason: str


@dataclass(frozen=True)
class SpectrumResult:
    """States and rejected roots, both sorted by (m, N, n_r, E)."""

    states: tuple[BoundState, ...]
    rejected: tuple[BoundState, ...]
    diagnostics: tuple[RootDiagnostic, ...] = field(default=())
    excluded: tuple[ExcludedInterval, ...] = field(default=())


def _window(req: SpectrumRequest) -> tuple[float, float]:
    if req.energy_window is not None:
        return req.energy_window
    M = req.params.M
    return (-M * (1.0 - _WINDOW_MARGIN), M * (1.0 - _WINDOW_MARGIN))


def _cell_roots(p, q, grid, tol):
    """Scan one quantum-number cell: roots, diagnostics, excluded spans."""
    f = np.empty(len(grid))
    reasons: list[str | None] = [None] * len(grid)
    for i, E in enumerate(grid):
        try:
            f[i] = energy_residual(p, q, float(E))
        except DomainError as exc:
            f[i] = math.nan
            reasons[i] = str(exc)
    roots: list[tuple[float, float, int]] = []  # (E, residual, iterations)
    for i in range(len(grid) - 1):
        if math.isnan(f[i]) or math.isnan(f[i + 1]):
            continue
        if f[i] == 0.0:
            roots.append((float(grid[i]), 0.0, 0))
            continue
        if f[i] * f[i + 1] < 0.0:
            root, info = brentq(
                lambda E: energy_residual(p, q, E),
                float(grid[i]),
                float(grid[i + 1]),
                xtol=1e-15,
                rtol=4.0 * np.finfo(float).eps,
                full_output=True,
            )
            roots.append((float(root), energy_residual(p, q, float(root)), info.iterations))
    if len(grid) and f[-1] == 0.0 and not math.isnan(f[-1]):
        roots.append((float(grid[-1]), 0.0, 0))
    # deduplicate roots that two adjacent brackets refined to the same point
    deduped: list[tuple[float, float, int]] = []
    for root in sorted(roots):
        if deduped and abs(root[0] - deduped[-1][0]) <= 1e-12 * max(1.0, abs(root[0])):
            continue
        deduped.append(root)
    excluded: list[tuple[float, float, str]] = []
    i = 0
    while i < len(grid):
        if reasons[i] is not None:
            j = i
            while j + 1 < len(grid) and reasons[j + 1] is not None:
                j += 1
            excluded.append((float(grid[i]), float(grid[j]), reasons[i]))
            i = j + 1
        else:
            i += 1
    return deduped, excluded


def solve_states(req: SpectrumRequest) -> SpectrumResult:
    """Enumerate bound states for every (n_r, N, m) in the request.

    For each cell the residual f(E) is sampled on a uniform grid over the
    energy window; every sign change yields exactly one classified root.
    Energies where the residual itself is undefined (complex Lambda, ring
    term too strong) exclude their sub-interval with a logged reason rather
    than silently vanishing.
    """
    p = req.params
    lo, hi = _window(req)
    grid = np.linspace(lo, hi, req.scan_points)
    states: list[BoundState] = []
    rejected: list[BoundState] = []
    diagnostics: list[RootDiagnostic] = []
    excluded: list[ExcludedInterval] = []
    tol_f = req.tol * p.M * p.M
    edge_tol = req.tol * p.M
    for m in range(req.m_range[0], req.m_range[1] + 1):
        for N in range(req.N_max + 1):
            for n_r in range(req.n_r_max + 1):
                q = QuantumNumbers(n_r=n_r, N=N, m=m)
                roots, cell_excluded = _cell_roots(p, q, grid, req.tol)
                for lo_x, hi_x, why in cell_excluded:
                    excluded.append(ExcludedInterval(m, N, n_r, lo_x, hi_x, why))
                for E, resid, iters in roots:
                    diagnostics.append(RootDiagnostic(m, N, n_r, E, resid, iters))
                    if abs(resid) > tol_f:
                        raise RuntimeError(
                            f"root refinement left residual {resid:9.3e} above tolerance"
                        )
                    state = bound_state(p, q, E)
                    if state.admissible and (abs(E - lo) <= edge_tol or abs(E - hi) <= edge_tol):
                        state = BoundState(
                            E=state.E, epsilon=state.epsilon, eta=state.eta,
                            Lambda=state.Lambda, K=state.K, sqrt_c=state.sqrt_c,
                            norm=None, quantum=state.quantum, angular=state.angular,
                            params=state.params, admissible=False,
                            rejection_reason=REASON_EDGE,
                        )
                    (states if state.admissible else rejected).append(state)
    key = lambda s: (s.quantum.m, s.quantum.N, s.quantum.n_r, s.E)
    return SpectrumResult(
        states=tuple(sorted(states, key=key)),
        rejected=tuple(sorted(rejected, key=key)),
        diagnostics=tuple(diagnostics),
        excluded=tuple(excluded),
    )


def psi_eval(state: BoundState, r, theta, phi):
    """Full wavefunction psi(r, theta, phi) of an admissible state.

    psi = (chi(r)/r) * Theta_N(cos theta) * e^{i m phi} / sqrt(2 pi).  The
    azimuthal factor carries the 1/sqrt(2 pi) so the full 3D integral of
    |psi|^2 r^2 sin(theta) is exactly one.
    """
    r_arr = np.asarray(r, dtype=float)
    th_arr = np.asarray(theta, dtype=float)
    if np.any(r_arr <= 0.0):
        raise DomainError("radius must be positive")
    if np.any(th_arr <= 0.0) or np.any(th_arr >= math.pi):
        raise DomainError("theta must lie strictly inside (0, pi)")
    m = state.quantum.m
    radial_part = chi_eval(state, r_arr) / r_arr
    ang = theta_eval(state.angular, state.quantum.N, np.cos(th_arr))
    azim = np.exp(1j * m * np.asarray(phi, dtype=float)) / math.sqrt(2.0 * math.pi)
    val = radial_part * ang * azim
    if np.isscalar(r) and np.isscalar(theta) and np.isscalar(phi):
        return complex(val)
    return val


def hulthen_spectrum(req: SpectrumRequest) -> SpectrumResult:
    """Spectrum in the alpha in {0, 1} limit, where the shape term drops out.

    Named entry point for the screened-Coulomb special case; delegates to
    solve_states and asserts the alpha(alpha-1) = 0 simplification, i.e.
    Lambda = sqrt(1/4 + lambda) for every returned state.
    """
    if req.params.alpha not in (0.0, 1.0):
        raise DomainError("hulthen_spectrum requires alpha in {0, 1}")
    result = solve_states(req)
    for s in result.states:
        expect = math.sqrt(0.25 + s.angular.lam)
        if abs(s.Lambda - expect) > 1e-12 * max(1.0, expect):
            raise RuntimeError("Lambda simplification violated in the alpha(alpha-1)=0 limit")
    return result


def central_spectrum(req: SpectrumRequest) -> SpectrumResult:
    """Spectrum with the ring switched off (beta = beta' = 0).

    Delegates to solve_states and asserts that the effective orbital number
    collapses to the integer N + |m| with lambda = l(l+1).
    """
    if req.params.beta != 0.0 or req.params.beta_prime != 0.0:
        raise DomainError("central_spectrum requires beta = beta_prime = 0")
    result = solve_states(req)
    for group in (result.states, result.rejected):
        for s in group:
            l_int = s.quantum.N + abs(s.quantum.m)
            if s.angular.l_eff != float(l_int):
                raise RuntimeError("central limit must give integer l_eff = N + |m|")
            if s.angular.lam != float(l_int * (l_int + 1)):
                raise RuntimeError("central limit must give integer lambda = l(l+1)")
    return result
