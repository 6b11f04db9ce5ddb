"""Tests for the radial reduction: parameter bookkeeping, the quantization
value, the energy residual, and the eigenfunctions."""

import dataclasses
import math

import numpy as np
import pytest

from kfgring import (
    DomainError,
    InadmissibleStateError,
    PotentialParams,
    QuantumNumbers,
    SpectrumRequest,
    bound_state,
    chi_eval,
    chi_eval_hypergeometric,
    chi_norm,
    energy_residual,
    integrate,
    nu_consistency,
    nu_params,
    solve_states,
    sqrt_c_signed,
)
from kfgring.radial import (
    REASON_COMPLEX_LAMBDA,
    REASON_EDGE,
    REASON_EPSILON,
    REASON_SQRT_C,
)

HULTHEN = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, C0=0.0)
DEEP = PotentialParams(M=1.0, b=1.0, alpha=2.0, A=40.0, C0=1.0 / 12.0)
Q0 = QuantumNumbers(n_r=0, N=0, m=0)


def hulthen_ground_state():
    res = solve_states(SpectrumRequest(params=HULTHEN))
    assert len(res.states) == 1
    return res.states[0]


def deep_well_states(n_r_max=5):
    res = solve_states(SpectrumRequest(params=DEEP, n_r_max=n_r_max))
    return res.states


def test_nu_params_all_couplings_off():
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=0.0, C0=0.0)
    nup = nu_params(p, 1.0, 0.0, 0.0)
    assert nup.a_nu == 0.25
    assert nup.b_nu == 0.0
    assert nup.c_nu == 0.0


def test_nu_params_generic_values():
    # eta = 3/2, eps = 4/5, A = 2, alpha = 2, lam = 2, C0 = 1/12
    p = PotentialParams(M=1.0, b=1.0, alpha=2.0, A=2.0, C0=1.0 / 12.0)
    nup = nu_params(p, 1.5, 0.8, 2.0)
    a = 0.25 + 0.64 + 3.0 + 3.0 + 1.0 / 6.0
    b = 1.28 + 3.0 + 1.0 / 3.0 - 2.0
    c = 0.64 + 1.0 / 6.0
    assert abs(nup.a_nu - a) <= 1e-14 * a
    assert abs(nup.b_nu - b) <= 1e-14 * b
    assert abs(nup.c_nu - c) <= 1e-14 * c
    # a - b + c must reproduce 1/4 + eta*alpha*(alpha-1) + lam
    assert abs((nup.a_nu - nup.b_nu + nup.c_nu) - 5.25) <= 1e-13


def test_nu_params_rejects_negative_c():
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=2.0, C0=1.0 / 12.0)
    with pytest.raises(DomainError):
        nu_params(p, 1.0, 0.1, -1.0)


def test_nu_params_rejects_complex_reduction():
    p = PotentialParams(M=1.0, b=1.0, alpha=2.0, A=2.0, C0=1.0 / 12.0)
    with pytest.raises(DomainError):
        nu_params(p, 0.5, math.sqrt(0.5), -2.0)
    with pytest.raises(DomainError):
        nu_params(p, math.nan, 0.5, 0.0)


def test_quantization_value_free_particle():
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=0.0, C0=0.0)
    assert sqrt_c_signed(p, Q0, 1.5, 0.0) == -0.5


def test_quantization_value_screened_ground():
    eta = 1.411438
    val = sqrt_c_signed(HULTHEN, Q0, eta, 0.0)
    assert abs(val - (2.0 * eta - 1.0) / 2.0) <= 1e-15


def test_quantization_value_shape_two():
    # alpha = 2, lam = 0: Lambda = sqrt(1/4 + 2 eta)
    p = PotentialParams(M=1.0, b=1.0, alpha=2.0, A=2.0, C0=0.0)
    eta = 1.411438
    lam_big = math.sqrt(0.25 + 2.0 * eta)
    expected = (2.0 * eta - 0.5 - lam_big) / (2.0 * lam_big + 1.0)
    val = sqrt_c_signed(p, Q0, eta, 0.0)
    assert abs(val - expected) <= 1e-15
    assert abs(val - 0.1264810) < 5e-7


def test_quantization_value_complex_lambda_rejected():
    with pytest.raises(DomainError):
        sqrt_c_signed(HULTHEN, Q0, 1.0, -2.0)


def test_energy_residual_free_particle():
    p = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=0.0, C0=0.0)
    for E in (-0.6, 0.0, 0.3, 0.85):
        val = energy_residual(p, Q0, E)
        assert abs(val - ((1.0 - E * E) - 0.25)) <= 1e-15


def test_energy_residual_at_rest_energy():
    # E = 0 gives eta = 1 and sqrt_c = 1/2 for the screened ground cell
    assert abs(energy_residual(HULTHEN, Q0, 0.0) - 0.75) <= 1e-15


def test_energy_residual_vanishes_at_root():
    st = hulthen_ground_state()
    assert abs(energy_residual(HULTHEN, Q0, st.E)) <= 1e-12


def test_energy_residual_rejects_out_of_window():
    with pytest.raises(DomainError):
        energy_residual(HULTHEN, Q0, 1.0)
    with pytest.raises(DomainError):
        energy_residual(HULTHEN, Q0, -1.5)


def test_rejection_reason_constants():
    assert REASON_SQRT_C == "sqrt_c <= 0"
    assert REASON_COMPLEX_LAMBDA == "complex Lambda"
    assert REASON_EPSILON == "epsilon <= 0"
    assert REASON_EDGE == "edge"


def test_bound_state_classification():
    p_free = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=0.0, C0=0.0)
    spurious = bound_state(p_free, Q0, math.sqrt(3.0) / 2.0)
    assert not spurious.admissible
    assert spurious.rejection_reason == REASON_SQRT_C
    assert spurious.norm is None
    st = hulthen_ground_state()
    good = bound_state(HULTHEN, Q0, st.E)
    assert good.admissible
    assert good.rejection_reason is None
    assert good.norm is not None and good.norm > 0.0


def test_chi_rejects_inadmissible_state():
    p_free = PotentialParams(M=1.0, b=1.0, alpha=1.0, A=0.0, C0=0.0)
    spurious = bound_state(p_free, Q0, math.sqrt(3.0) / 2.0)
    with pytest.raises(InadmissibleStateError):
        chi_eval(spurious, 1.0)


def test_chi_ground_state_shape():
    # n_r = 0: chi proportional to s^sqrt_c (1-s)^K, no polynomial factor
    st = hulthen_ground_state()
    r = np.array([0.5, 1.0, 2.0, 5.0])
    s = np.exp(-r)
    shape = s ** st.sqrt_c * (1.0 - s) ** st.K
    ratios = chi_eval(st, r) / shape
    assert np.max(np.abs(ratios / ratios[0] - 1.0)) <= 1e-12


def test_chi_closed_form_satisfies_equation():
    # chi = k (e^{-eps r} - e^{-(1+eps) r}) for the screened ground cell;
    # second derivative taken analytically, so the defect is pure roundoff
    st = hulthen_ground_state()
    eps = st.epsilon
    mu = st.E * st.E - 1.0

    def f(r):
        return np.exp(-eps * r) - np.exp(-(1.0 + eps) * r)

    def f2(r):
        return eps * eps * np.exp(-eps * r) - (1.0 + eps) ** 2 * np.exp(-(1.0 + eps) * r)

    r = np.geomspace(0.1, 20.0, 50)
    k = chi_eval(st, 1.0) / f(1.0)
    assert abs(k) > 0.0
    prop = chi_eval(st, r) / (k * f(r))
    assert np.max(np.abs(prop - 1.0)) <= 1e-12
    s = np.exp(-r)
    w = -st.eta * 2.0 * s / (1.0 - s)
    defect = -k * f2(r) + (w - mu) * chi_eval(st, r)
    scale = np.maximum(1.0, np.abs(w * chi_eval(st, r)))
    assert np.max(np.abs(defect) / scale) <= 1e-10


def test_chi_far_tail_decay_rate():
    st = hulthen_ground_state()
    r1, r2 = 15.0, 18.0
    ratio = chi_eval(st, r2) / chi_eval(st, r1)
    assert abs(ratio - math.exp(-st.sqrt_c * (r2 - r1))) <= 1e-6


def test_chi_two_evaluation_paths_agree():
    r = np.geomspace(0.05, 30.0, 50)
    for st in deep_well_states():
        c1 = chi_eval(st, r)
        c2 = chi_eval_hypergeometric(st, r)
        dev = np.abs(c1 - c2) / np.maximum(1.0, np.abs(c1))
        assert np.max(dev) <= 1e-12


def test_chi_norm_closed_value():
    # the screened ground state has K = 1 and sqrt_c = eps, where the
    # normalization collapses to sqrt(2 eps (1+eps) (1+2eps))
    st = hulthen_ground_state()
    assert st.K == 1.0
    eps = st.epsilon
    closed = math.sqrt(2.0 * eps * (1.0 + eps) * (1.0 + 2.0 * eps))
    assert abs(chi_norm(st) - closed) <= 1e-13 * closed
    assert chi_norm(st) == st.norm


def test_chi_norm_by_quadrature():
    st = hulthen_ground_state()
    val = integrate(lambda r: chi_eval(st, r) ** 2, 1e-8, 60.0)
    assert abs(val - 1.0) <= 1e-10


def test_chi_states_weighted_orthogonality():
    # with the energy-dependent coupling eta = (M+E)/M, levels of different
    # n_r solve different operators, so plain overlaps stay O(1); the exact
    # relation is int chi_1 chi_2 [U(r)/M - (E1+E2)] dr = 0 with U the
    # coupling-free central profile
    states = deep_well_states()
    assert len(states) >= 4

    def profile(r):
        s = np.exp(-r / DEEP.b)
        shape = DEEP.alpha * (DEEP.alpha - 1.0)
        return (shape * s * s / (1.0 - s) ** 2 - DEEP.A * s / (1.0 - s)) / DEEP.b ** 2

    for i, si in enumerate(states):
        for sj in states[i:]:
            if si is sj:
                val = integrate(lambda r: chi_eval(si, r) ** 2, 1e-8, 80.0)
                assert abs(val - 1.0) <= 1e-8
            else:
                val = integrate(
                    lambda r: chi_eval(si, r) * chi_eval(sj, r)
                    * (profile(r) / DEEP.M - (si.E + sj.E)),
                    1e-8,
                    80.0,
                )
                assert abs(val) <= 1e-8


def test_chi_norm_requires_admissible_values():
    st = hulthen_ground_state()
    bad = dataclasses.replace(st, sqrt_c=-0.2)
    with pytest.raises(InadmissibleStateError):
        chi_norm(bad)


def test_quantization_consistency_at_roots():
    # at any accepted root, b^2(M^2-E^2) + lam*C0 equals c_nu and its square
    # root equals the signed quantization value
    for st in (hulthen_ground_state(), *deep_well_states(2)):
        p = st.params
        lam = st.angular.lam
        nup = nu_params(p, st.eta, st.epsilon, lam)
        target = p.b ** 2 * (p.M ** 2 - st.E ** 2) + lam * p.C0
        assert abs(nup.c_nu - target) <= 1e-10 * max(1.0, abs(target))
        sc = sqrt_c_signed(p, st.quantum, st.eta, lam)
        assert abs(sc - math.sqrt(nup.c_nu)) <= 1e-10 * max(1.0, sc)
        assert abs(sc - st.sqrt_c) <= 1e-12 * max(1.0, sc)


def test_reduction_consistency_report():
    st = hulthen_ground_state()
    rep = nu_consistency(HULTHEN, Q0, st)
    assert rep.passed
    assert rep.tau_prime < 0.0
    assert abs(rep.tau_prime + 2.0 * (1.0 + st.sqrt_c + st.Lambda)) <= 1e-12


def test_reduction_balance_fails_off_root():
    st = hulthen_ground_state()
    off = bound_state(HULTHEN, Q0, st.E + 1e-3)
    rep = nu_consistency(HULTHEN, Q0, off)
    assert not rep.balance_ok
    assert rep.identity_ok
    assert not rep.passed


def test_shape_zero_and_one_spectra_agree():
    p0 = PotentialParams(M=1.0, b=1.0, alpha=0.0, A=2.0, C0=0.0)
    res0 = solve_states(SpectrumRequest(params=p0))
    res1 = solve_states(SpectrumRequest(params=HULTHEN))
    assert len(res0.states) == len(res1.states) == 1
    assert abs(res0.states[0].E - res1.states[0].E) <= 1e-12
