"""Relativistic bound states of a screened central potential with a
ring-shaped angular term.

The library computes closed-form energies and normalized eigenfunctions of
the spin-0 relativistic wave equation with equal scalar and vector coupling
to an exponentially screened central potential plus an angle-dependent ring
term, and verifies every closed form against independent brute-force
numerics (finite-difference eigensolves, adaptive quadrature, numeric
differentiation).
"""

from .angular import AngularSolution, QuantumNumbers, angular_norm, solve_angular, theta_eval
from .errors import DomainError, InadmissibleStateError, RingTooStrongError
from .oracle import (
    AngularOracleResult,
    OracleReport,
    RadialOracleConfig,
    angular_oracle,
    node_count,
    normalization_check,
    ode_residual,
    radial_oracle,
)
from .potential import ApproxErrorRow, PotentialParams, approx_error_scan, centrifugal_approx, eval_potential
from .radial import (
    BoundState,
    NuConsistencyReport,
    NuParams,
    bound_state,
    chi_eval,
    chi_eval_hypergeometric,
    chi_norm,
    energy_residual,
    nu_consistency,
    nu_params,
    sqrt_c_signed,
)
from .specfun import (
    JacobiParams,
    QuadratureRule,
    gauss_rule,
    hyp2f1_terminating,
    integrate,
    jacobi_poly,
    log_gamma,
)
from .spectrum import (
    ExcludedInterval,
    RootDiagnostic,
    SpectrumRequest,
    SpectrumResult,
    central_spectrum,
    hulthen_spectrum,
    psi_eval,
    solve_states,
)
from .verify import (
    ACCEPTANCE_GRID,
    CheckResult,
    SUITES,
    VerificationReport,
    collect_grid_states,
    run_suite,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DomainError", "RingTooStrongError", "InadmissibleStateError",
    "JacobiParams", "QuadratureRule", "log_gamma", "jacobi_poly",
    "hyp2f1_terminating", "gauss_rule", "integrate",
    "PotentialParams", "ApproxErrorRow", "eval_potential",
    "centrifugal_approx", "approx_error_scan",
    "QuantumNumbers", "AngularSolution", "solve_angular", "theta_eval",
    "angular_norm",
    "NuParams", "BoundState", "NuConsistencyReport", "nu_params",
    "sqrt_c_signed", "energy_residual", "bound_state", "chi_eval",
    "chi_eval_hypergeometric", "chi_norm", "nu_consistency",
    "SpectrumRequest", "SpectrumResult", "RootDiagnostic", "ExcludedInterval",
    "solve_states", "psi_eval", "hulthen_spectrum", "central_spectrum",
    "RadialOracleConfig", "OracleReport", "AngularOracleResult",
    "radial_oracle", "angular_oracle", "normalization_check", "ode_residual",
    "node_count",
    "CheckResult", "VerificationReport", "ACCEPTANCE_GRID", "SUITES",
    "collect_grid_states", "run_suite",
]
