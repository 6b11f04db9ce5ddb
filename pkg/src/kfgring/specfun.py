"""Special-function kernel.

Log-gamma, Jacobi polynomials with real parameters, terminating Gauss
hypergeometric sums, and Gauss-type quadrature rules.  Everything here is a
pure function of its inputs; the rest of the package builds its closed forms
and normalization checks on top of these primitives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import roots_jacobi

from .errors import DomainError

__all__ = [
    "JacobiParams",
    "QuadratureRule",
    "log_gamma",
    "jacobi_poly",
    "hyp2f1_terminating",
    "gauss_rule",
    "integrate",
]


@dataclass(frozen=True)
class JacobiParams:
    """Degree and exponent parameters of a Jacobi polynomial P_n^(a,b).

    Parameters
    ----------
    a, b : float
        Real exponent parameters, each > -1.
    n : int
        Non-negative degree.
    """

    a: float
    b: float
    n: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError("Jacobi parameters must be finite")
        if self.a <= -1.0 or self.b <= -1.0:
            raise DomainError("Jacobi parameters require a > -1 and b > -1")
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError("Jacobi degree must be a non-negative integer")


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of a Gauss-type rule on an interval."""

    nodes: np.ndarray
    weights: np.ndarray
    interval: tuple[float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", np.asarray(self.nodes, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if len(self.nodes) != len(self.weights):
            raise DomainError("node and weight counts differ")
        if np.any(np.diff(self.nodes) <= 0.0):
            raise DomainError("nodes must be strictly increasing")
        lo, hi = self.interval
        if self.nodes[0] <= lo or self.nodes[-1] >= hi:
            raise DomainError("nodes must lie strictly inside the interval")
        if np.any(self.weights <= 0.0):
            raise DomainError("weights must be positive")

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """Integrate a vectorized function with this rule."""
        return float(np.dot(self.weights, f(self.nodes)))


def log_gamma(x: float) -> float:
    """Natural log of the Gamma function for positive argument."""
    if not x > 0.0:
        raise DomainError("log_gamma requires x > 0")
    return math.lgamma(x)


def _jacobi_rec(n: int, a: float, b: float, x):
    """Three-term degree recurrence for P_n^(a,b)(x); x may be an ndarray.

    Stable for the real parameter ranges used here (a, b > -1 keeps every
    recurrence denominator positive).
    """
    xv = np.asarray(x, dtype=float)
    p_prev = np.ones_like(xv)
    if n == 0:
        return p_prev
    p_cur = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * xv
    for k in range(2, n + 1):
        s = 2.0 * k + a + b
        c1 = 2.0 * k * (k + a + b) * (s - 2.0)
        c2 = (s - 1.0) * (a * a - b * b)
        c3 = (s - 1.0) * s * (s - 2.0)
        c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s
        p_next = ((c2 + c3 * xv) * p_cur - c4 * p_prev) / c1
        p_prev, p_cur = p_cur, p_next
    return p_cur


def jacobi_poly(p: JacobiParams, x):
    """Evaluate P_n^(a,b)(x) by the three-term recurrence.

    Exact for n = 0 and n = 1 by construction.  Scalar input returns a float;
    array input returns an ndarray.  Evaluation outside [-1, 1] is permitted
    and unchecked.
    """
    val = _jacobi_rec(p.n, p.a, p.b, x)
    if np.isscalar(x):
        return float(val)
    return val


def hyp2f1_terminating(n: int, bparam: float, cparam: float, z: float) -> float:
    """Finite sum of the Gauss series 2F1(-n, bparam; cparam; z).

    The first parameter -n terminates the series after n+1 terms.  Binary
    floats are exact rationals, so the sum is formed in exact rational
    arithmetic and rounded once at the end.  Floating accumulation would be
    useless here: for n near 25 with z away from 0 the alternating terms
    reach 1e16 while the sum stays of order one, and every accumulated digit
    drowns in cancellation.  Exact summation keeps the result correctly
    rounded over the whole parameter box the Jacobi cross-check sweeps.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError("series length parameter n must be a non-negative integer")
    rounded = round(cparam)
    if abs(cparam - rounded) < 1e-12 and rounded <= 0 and -rounded <= n - 1:
        raise DomainError("cparam hits a pole of the terminating series")
    bf, cf, zf = Fraction(bparam), Fraction(cparam), Fraction(z)
    term = Fraction(1)
    total = Fraction(1)
    for k in range(n):
        term *= Fraction(k - n) * (bf + k) * zf / ((cf + k) * (k + 1))
        if term == 0:
            break  # a negative-integer bparam or z=0 truncates the sum early
        total += term
    return float(total)


def gauss_rule(
    kind: str,
    order: int,
    interval: tuple[float, float] = (-1.0, 1.0),
    a: float = 0.0,
    b: float = 0.0,
) -> QuadratureRule:
    """Build a Gauss quadrature rule exact for degree <= 2*order - 1.

    Parameters
    ----------
    kind : {"legendre", "jacobi"}
        "legendre" integrates with unit weight on an arbitrary interval;
        "jacobi" integrates against (1-x)^a (1+x)^b on (-1, 1).
    order : int
        Number of nodes, >= 1.
    """
    if order < 1:
        raise DomainError("quadrature order must be >= 1")
    lo, hi = float(interval[0]), float(interval[1])
    if not lo < hi:
        raise DomainError("empty quadrature interval")
    if kind == "legendre":
        x, w = leggauss(order)
        mid = 0.5 * (hi + lo)
        half = 0.5 * (hi - lo)
        return QuadratureRule(mid + half * x, half * w, (lo, hi))
    if kind == "jacobi":
        if (lo, hi) != (-1.0, 1.0):
            raise DomainError("jacobi rules are defined on (-1, 1)")
        if a <= -1.0 or b <= -1.0:
            raise DomainError("jacobi weight exponents must exceed -1")
        x, w = roots_jacobi(order, a, b)
        return QuadratureRule(x, w, (lo, hi))
    raise DomainError(f"unknown quadrature kind {kind!r}")


def _panel_fractions(depth: int) -> np.ndarray:
    """Panel edges on [0, 1], refined geometrically toward both endpoints."""
    left = [0.0] + [2.0 ** (-k) for k in range(depth, 0, -1)]
    right = [1.0 - 2.0 ** (-k) for k in range(2, depth + 1)] + [1.0]
    return np.array(left + right)


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    order: int = 24,
) -> float:
    """Composite Gauss-Legendre integral of a vectorized function.

    Panels are refined geometrically toward both endpoints so that integrands
    with algebraic endpoint behavior (any power > -1) converge; the geometric
    depth is doubled until two successive estimates agree to tol relative.
    """
    if not lo < hi:
        raise DomainError("empty integration interval")
    base_x, base_w = leggauss(order)
    span = hi - lo
    prev = None
    for depth in (8, 16, 32, 64, 128):
        edges = lo + span * _panel_fractions(depth)
        mids = 0.5 * (edges[1:] + edges[:-1])
        halfs = 0.5 * (edges[1:] - edges[:-1])
        nodes = (mids[:, None] + halfs[:, None] * base_x[None, :]).ravel()
        weights = (halfs[:, None] * base_w[None, :]).ravel()
        est = float(np.dot(weights, f(nodes)))
        if prev is not None and abs(est - prev) <= tol * max(1.0, abs(est)):
            return est
        prev = est
    return prev
