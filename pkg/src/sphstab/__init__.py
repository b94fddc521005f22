"""Stability quotients for the fractional Sobolev inequality on the sphere.

Two independent computation routes cover the two-bubble test families:
closed-form hypergeometric curves (closedform) and a spectral evaluator
(spectral); they must agree, and the test suite holds them to that.
"""

__version__ = "0.1.0"

from .closedform import (
    CurvePoint,
    curve_margin,
    local_quadratic_coefficient,
    local_quadratic_lower_bound,
    quotient_limits,
    quotient_p3,
    quotient_p4,
    quotient_p4_signchanging,
    rho_cubic_integral,
    rho_value,
    small_beta_coefficients,
)
from .conformal import (
    SobolevContext,
    alpha,
    beta_from_gamma,
    beta_of_lambda,
    beta_of_y,
    bubble_mass,
    bubble_value,
    gamma_compose,
    lambda_of_beta,
    m2_of_y,
    m_of_y,
    make_context,
    to_plane,
    two_bubble_limit,
    y_of_beta,
)
from .spectral import (
    DistanceResult,
    QuotientReport,
    SphereFunction,
    analyze,
    be_quotient,
    dist_to_constants,
    dist_to_manifold,
    energy,
    lp_norm,
    synthesize,
)
from .specfun import (
    Hyp2F1Args,
    QuadratureRule,
    chebyshev_t,
    gauss_legendre,
    gegenbauer,
    hyp2f1,
    log_gamma,
    wallis,
)

__all__ = [
    "__version__",
    "CurvePoint",
    "DistanceResult",
    "Hyp2F1Args",
    "QuadratureRule",
    "QuotientReport",
    "SobolevContext",
    "SphereFunction",
    "alpha",
    "analyze",
    "be_quotient",
    "beta_from_gamma",
    "beta_of_lambda",
    "beta_of_y",
    "bubble_mass",
    "bubble_value",
    "chebyshev_t",
    "curve_margin",
    "dist_to_constants",
    "dist_to_manifold",
    "energy",
    "gamma_compose",
    "gauss_legendre",
    "gegenbauer",
    "hyp2f1",
    "lambda_of_beta",
    "local_quadratic_coefficient",
    "local_quadratic_lower_bound",
    "log_gamma",
    "lp_norm",
    "m2_of_y",
    "m_of_y",
    "make_context",
    "quotient_limits",
    "quotient_p3",
    "quotient_p4",
    "quotient_p4_signchanging",
    "rho_cubic_integral",
    "rho_value",
    "small_beta_coefficients",
    "synthesize",
    "to_plane",
    "two_bubble_limit",
    "wallis",
    "y_of_beta",
]
