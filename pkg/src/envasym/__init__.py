"""Certified enclosures from strictly enveloping asymptotic series.

Rigorous two-sided bounds for ln Gamma(z), ln C(2n, n), ln Gamma(z + 1/2)
and ln n!, built on the fact that the truncation error of each underlying
series has the sign of, and is smaller in magnitude than, the first omitted
term whenever the argument is real and positive.
"""

from .coeffs import bernoulli_even, beta, beta_hat, beta_tilde, zeta_even
from .demo import (
    ViolationMode,
    ViolationWitness,
    enveloping_control_scan,
    find_envelope_violation,
    perturbed_binet,
    revalidate_witness,
)
from .errors import DomainError, QuadratureNonConvergence, ToleranceUnattainable
from .oracle import (
    QuadratureSpec,
    ThetaFamily,
    binet_J,
    binet_J_tilde,
    coefficient_quadrature,
    exact_ln_central_binomial,
    exact_ln_factorial,
    exact_ln_gamma_half,
    remainder_quadrature,
    theta_ratio,
)
from .precision import DEFAULT_PRECISION, PRECISION_ENV_VAR
from .series import (
    CertifiedValue,
    EnvelopeInterval,
    SeriesKind,
    auto_truncate,
    envelope_interval,
    ln_central_binomial,
    ln_factorial_demoivre,
    ln_gamma,
    ln_gamma_plus_half,
    min_term_index,
    partial_sum,
    term,
)
from .verify import CheckResult, run_verification

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRECISION",
    "PRECISION_ENV_VAR",
    "DomainError",
    "ToleranceUnattainable",
    "QuadratureNonConvergence",
    "bernoulli_even",
    "beta",
    "beta_tilde",
    "beta_hat",
    "zeta_even",
    "SeriesKind",
    "EnvelopeInterval",
    "CertifiedValue",
    "term",
    "partial_sum",
    "envelope_interval",
    "min_term_index",
    "auto_truncate",
    "ln_gamma",
    "ln_central_binomial",
    "ln_gamma_plus_half",
    "ln_factorial_demoivre",
    "QuadratureSpec",
    "ThetaFamily",
    "exact_ln_factorial",
    "exact_ln_central_binomial",
    "exact_ln_gamma_half",
    "binet_J",
    "binet_J_tilde",
    "theta_ratio",
    "remainder_quadrature",
    "coefficient_quadrature",
    "ViolationMode",
    "ViolationWitness",
    "perturbed_binet",
    "find_envelope_violation",
    "enveloping_control_scan",
    "revalidate_witness",
    "CheckResult",
    "run_verification",
]
