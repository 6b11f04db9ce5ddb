"""Tests for the polar (angular) quantization and eigenfunctions."""

import math

import numpy as np
import pytest

from kfgring import (
    DomainError,
    PotentialParams,
    QuantumNumbers,
    RingTooStrongError,
    angular_norm,
    integrate,
    solve_angular,
    theta_eval,
)

CENTRAL = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0)
RING = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, beta=0.4, beta_prime=0.5)


def polar_ode_residual(sol, p, m, N, xs):
    """Defect of (1-x^2) Theta'' - 2x Theta' + [lam - ring(x)/(1-x^2)] Theta,
    with derivatives from 5-point stencils at steps h and 2h plus one
    Richardson step.  Returns the worst scaled residual over xs."""
    lam = (N + sol.zeta) * (N + sol.zeta + 1.0)
    h = 1e-3
    worst = 0.0
    for x in xs:
        d1 = {}
        d2 = {}
        for step in (h, 2.0 * h):
            f = [theta_eval(sol, N, x + k * step) for k in (-2, -1, 0, 1, 2)]
            d1[step] = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * step)
            d2[step] = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (
                12.0 * step * step
            )
        th1 = (16.0 * d1[h] - d1[2.0 * h]) / 15.0
        th2 = (16.0 * d2[h] - d2[2.0 * h]) / 15.0
        theta = theta_eval(sol, N, x)
        ring = (m * m + sol.eta * p.beta_prime + sol.eta * p.beta * x) / (1.0 - x * x)
        terms = (
            (1.0 - x * x) * th2,
            -2.0 * x * th1,
            lam * theta,
            -ring * theta,
        )
        defect = abs(sum(terms))
        scale = max(1.0, *(abs(t) for t in terms))
        worst = max(worst, defect / scale)
    return worst


def test_central_solution_integer_m():
    # g = m^2, u = m^2, zeta = |m|, all exact in floats for small m
    sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=2), CENTRAL, 1.7)
    assert sol.u == 4.0
    assert sol.zeta == 2.0
    assert sol.C == 0.0
    for N in (0, 1, 2):
        solN = solve_angular(QuantumNumbers(n_r=0, N=N, m=2), CENTRAL, 1.7)
        assert solN.lam == (N + 2.0) * (N + 3.0)
        assert solN.l_eff == N + 2.0


def test_central_s_wave_is_trivial():
    sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=0), CENTRAL, 1.0)
    assert sol.u == 0.0
    assert sol.zeta == 0.0
    assert sol.B == 0.0
    assert sol.C == 0.0
    assert sol.lam == 0.0


def test_ring_solution_frozen_values():
    # m = 1, eta = 1.8, beta = 0.4, beta' = 0.5:
    # g = 1.9, u = sqrt(g^2 - (eta*beta)^2), zeta = sqrt((g+u)/2)
    sol = solve_angular(QuantumNumbers(n_r=0, N=1, m=1), RING, 1.8)
    g = 1.0 + 1.8 * 0.5
    u = math.sqrt(g * g - (1.8 * 0.4) ** 2)
    zeta = math.sqrt((g + u) / 2.0)
    assert abs(sol.u - 1.7582946283259810) < 1e-13
    assert abs(sol.zeta - 1.3524597273719430) < 1e-13
    assert abs(sol.u - u) <= 1e-15 * u
    assert abs(sol.zeta - zeta) <= 1e-15 * zeta
    assert abs(sol.lam - (1.0 + zeta) * (2.0 + zeta)) <= 1e-14 * sol.lam
    assert abs(sol.lam - 7.8865265) < 5e-6
    assert abs(sol.C - 0.26618167825192146) < 1e-13


def test_exponent_invariants_property():
    # B^2 + C^2 = g and B*C = eta*|beta|/2, for both signs of beta
    rng = np.random.default_rng(20260822)
    for _ in range(200):
        m = int(rng.integers(0, 4))
        eta = float(rng.uniform(0.5, 3.0))
        beta_prime = float(rng.uniform(0.0, 1.0))
        g = m * m + eta * beta_prime
        if g <= 0.0:
            continue
        frac = float(rng.uniform(0.0, 0.95))
        sign = 1.0 if rng.integers(0, 2) else -1.0
        beta = sign * frac * g / eta
        p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0,
                            beta=beta, beta_prime=beta_prime)
        sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=m), p, eta)
        assert sol.B >= sol.C >= 0.0
        assert abs(sol.B ** 2 + sol.C ** 2 - g) <= 1e-13 * max(1.0, g)
        assert abs(sol.B * sol.C - eta * abs(beta) / 2.0) <= 1e-13 * max(1.0, g)


def test_central_zeta_reduces_to_abs_m():
    for m in (-3, -1, 0, 2, 3):
        sol = solve_angular(QuantumNumbers(n_r=0, N=1, m=m), CENTRAL, 1.3)
        assert sol.zeta == float(abs(m))
        l = 1 + abs(m)
        assert sol.lam == float(l * (l + 1))


def test_theta_constant_mode():
    sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=0), CENTRAL, 1.0)
    expected = math.sqrt(0.5)
    for x in (-1.0, -0.3, 0.0, 0.9, 1.0):
        assert abs(theta_eval(sol, 0, x) - expected) <= 1e-15


def test_theta_linear_mode_is_scaled_legendre():
    sol = solve_angular(QuantumNumbers(n_r=0, N=1, m=0), CENTRAL, 1.0)
    xs = np.linspace(-1.0, 1.0, 9)
    vals = theta_eval(sol, 1, xs)
    assert np.max(np.abs(vals - math.sqrt(1.5) * xs)) <= 1e-14


def test_theta_vanishes_at_poles_with_ring():
    sol = solve_angular(QuantumNumbers(n_r=0, N=1, m=1), RING, 1.8)
    assert theta_eval(sol, 1, 1.0) == 0.0
    assert theta_eval(sol, 1, -1.0) == 0.0


def test_angular_norm_closed_values():
    sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=0), CENTRAL, 1.0)
    assert abs(angular_norm(sol, 0) - math.sqrt(0.5)) <= 1e-15
    assert abs(angular_norm(sol, 1) - math.sqrt(1.5)) <= 1e-15


def test_ring_norm_confirmed_by_quadrature():
    sol = solve_angular(QuantumNumbers(n_r=0, N=1, m=1), RING, 1.8)
    val = integrate(lambda x: theta_eval(sol, 1, x) ** 2, -1.0, 1.0)
    assert abs(val - 1.0) <= 1e-10


def test_orthonormality_property():
    cases = (
        (CENTRAL, 0, 1.0),
        (CENTRAL, 1, 1.3),
        (RING, 1, 1.8),
    )
    for p, m, eta in cases:
        sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=m), p, eta)
        for N1 in range(6):
            for N2 in range(N1, 6):
                val = integrate(
                    lambda x: theta_eval(sol, N1, x) * theta_eval(sol, N2, x),
                    -1.0,
                    1.0,
                )
                target = 1.0 if N1 == N2 else 0.0
                assert abs(val - target) <= 1e-8


def test_polar_ode_residual():
    xs = np.linspace(-0.95, 0.95, 100)
    cases = [
        (CENTRAL, 1, 1.3, 2),
        (RING, 1, 1.8, 0),
        (RING, 1, 1.8, 2),
    ]
    # negative beta swaps the exponent pair; the equation must still hold
    ring_neg = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0,
                               beta=-0.4, beta_prime=0.5)
    cases.append((ring_neg, 1, 1.8, 1))
    for p, m, eta, N in cases:
        sol = solve_angular(QuantumNumbers(n_r=0, N=N, m=m), p, eta)
        assert polar_ode_residual(sol, p, m, N, xs) <= 1e-8


def test_ring_too_strong_raises():
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, beta=0.5, beta_prime=0.1)
    with pytest.raises(RingTooStrongError):
        solve_angular(QuantumNumbers(n_r=0, N=0, m=0), p, 1.0)


def test_negative_effective_ring_constant_raises():
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, beta_prime=-1.0)
    with pytest.raises(DomainError):
        solve_angular(QuantumNumbers(n_r=0, N=0, m=0), p, 1.3)


def test_nonpositive_eta_raises():
    with pytest.raises(DomainError):
        solve_angular(QuantumNumbers(n_r=0, N=0, m=0), CENTRAL, 0.0)


def test_theta_eval_domain_checks():
    sol = solve_angular(QuantumNumbers(n_r=0, N=0, m=0), CENTRAL, 1.0)
    with pytest.raises(DomainError):
        theta_eval(sol, 0, 1.5)
    with pytest.raises(DomainError):
        theta_eval(sol, -1, 0.5)


def test_quantum_number_validation():
    with pytest.raises(DomainError):
        QuantumNumbers(n_r=-1, N=0, m=0)
    with pytest.raises(DomainError):
        QuantumNumbers(n_r=0, N=-2, m=0)
