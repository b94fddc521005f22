"""Sphere-side Sobolev framework: contexts, the conformal operator's
eigenvalues, bubbles and their composition law, mass integrals, and
stereographic transport to flat space.

Conventions. The sphere S^d sits in R^{d+1}; axisymmetric functions depend
only on the last coordinate t = omega_{d+1}. A bubble with axis parameter
beta in (-1, 1) is

    v_beta(t) = (1 - beta^2)^{d/2p} (1 - beta t)^{-d/p},

normalized so that the L^p mass and the quadratic energy match those of the
constant function 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import Hyp2F1Args, hyp2f1, log_gamma

__all__ = [
    "SobolevContext",
    "make_context",
    "alpha",
    "alpha_table",
    "bubble_value",
    "gamma_compose",
    "beta_from_gamma",
    "lambda_of_beta",
    "beta_of_lambda",
    "y_of_beta",
    "beta_of_y",
    "bubble_mass",
    "m_of_y",
    "m2_of_y",
    "two_bubble_limit",
    "to_plane",
]


@dataclass(frozen=True)
class SobolevContext:
    """The triple (d, s, p) with its derived constants.

    sphere_measure = |S^d|; alpha0 is the lowest eigenvalue of the
    conformal operator; sobolev_const is the sharp constant
    alpha0 |S^d|^{1-2/p}; c_loc = 4s/(d+2s+2) is the local stability
    constant; c_dim is the dimensional prefactor of the mass integrals
    (identically 1 by the Legendre duplication formula, kept as a
    computed field for cross-checking).
    """

    d: int
    s: float
    p: float
    sphere_measure: float
    alpha0: float
    sobolev_const: float
    c_loc: float
    c_dim: float


def sphere_area(d: int) -> float:
    """Surface measure |S^d| = 2 pi^{(d+1)/2} / Gamma((d+1)/2)."""
    return 2.0 * math.pi ** ((d + 1) / 2) / math.exp(log_gamma((d + 1) / 2))


def make_context(d: int, s: float) -> SobolevContext:
    """Build the context for dimension d >= 1 and order s in (0, d/2)."""
    if not isinstance(d, int) or d < 1:
        raise ValueError(f"d must be an integer >= 1, got {d}")
    if not (0.0 < s < d / 2.0):
        raise ValueError(f"s must lie in (0, d/2) = (0, {d / 2}), got {s}")
    p = 2.0 * d / (d - 2.0 * s)
    measure = sphere_area(d)
    alpha0 = math.exp(log_gamma(d / 2 + s) - log_gamma(d / 2 - s))
    c_dim = (
        2.0 ** (d - 1)
        * math.exp(log_gamma(d / 2) + log_gamma((d + 1) / 2) - log_gamma(0.5) - log_gamma(d))
    )
    return SobolevContext(
        d=d,
        s=s,
        p=p,
        sphere_measure=measure,
        alpha0=alpha0,
        sobolev_const=alpha0 * measure ** (1.0 - 2.0 / p),
        c_loc=4.0 * s / (d + 2.0 * s + 2.0),
        c_dim=c_dim,
    )


def alpha(ctx: SobolevContext, ell: int) -> float:
    """Eigenvalue of the conformal operator on degree-ell spherical
    harmonics, via the exact ratio recurrence seeded at alpha0."""
    if ell < 0:
        raise ValueError("ell must be a non-negative integer")
    value = ctx.alpha0
    half_d = ctx.d / 2.0
    for k in range(ell):
        value *= (k + half_d + ctx.s) / (k + half_d - ctx.s)
    return value


def alpha_table(ctx: SobolevContext, max_ell: int, dtype=np.float64) -> np.ndarray:
    """Eigenvalues alpha(0..max_ell) as an array, recurrence carried in
    the requested dtype (longdouble supported for tight-margin work)."""
    scalar = np.dtype(dtype).type
    out = np.empty(max_ell + 1, dtype=dtype)
    out[0] = scalar(ctx.alpha0)
    half_d = scalar(ctx.d) / 2
    s = scalar(ctx.s)
    for k in range(max_ell):
        out[k + 1] = out[k] * (k + half_d + s) / (k + half_d - s)
    return out


def bubble_value(ctx: SobolevContext, beta: float, t):
    """Pointwise bubble value v_beta at axis coordinate t in [-1, 1]."""
    if not -1.0 < beta < 1.0:
        raise ValueError(f"beta must satisfy |beta| < 1, got {beta}")
    t = np.asarray(t, dtype=float)
    d_over_p = ctx.d / ctx.p
    out = (1.0 - beta * beta) ** (d_over_p / 2.0) * (1.0 - beta * t) ** (-d_over_p)
    return out if out.ndim else float(out)


def gamma_compose(beta: float, beta_prime: float) -> float:
    """Composition parameter gamma = (beta - beta')/(1 - beta beta'):
    the cross term of two bubbles reduces to a single bubble of this
    parameter."""
    return (beta - beta_prime) / (1.0 - beta * beta_prime)


def beta_from_gamma(gamma: float) -> float:
    """Inverse of gamma_compose(beta, -beta): the branch in (-1, 1), with
    gamma = 0 mapping to 0."""
    if not -1.0 < gamma < 1.0:
        raise ValueError(f"gamma must satisfy |gamma| < 1, got {gamma}")
    if gamma == 0.0:
        return 0.0
    # (1 - sqrt(1-g^2))/g, written to avoid cancellation for small g
    return gamma / (1.0 + math.sqrt(1.0 - gamma * gamma))


def lambda_of_beta(beta: float) -> float:
    """Dilation scale lambda = sqrt((1+beta)/(1-beta)) of the flat-space
    bubble corresponding to v_beta."""
    if not -1.0 < beta < 1.0:
        raise ValueError(f"beta must satisfy |beta| < 1, got {beta}")
    return math.sqrt((1.0 + beta) / (1.0 - beta))


def beta_of_lambda(lam: float) -> float:
    """Inverse of lambda_of_beta on (0, inf)."""
    if lam <= 0.0:
        raise ValueError(f"lambda must be positive, got {lam}")
    return (lam * lam - 1.0) / (lam * lam + 1.0)


def y_of_beta(beta: float) -> float:
    """Curve variable y = 4 beta / (1 + beta)^2 used by the closed forms."""
    return 4.0 * beta / (1.0 + beta) ** 2


def beta_of_y(y: float) -> float:
    """Inverse of y_of_beta on [0, 1): beta = z/(2-z) with z = 1-sqrt(1-y)."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [0, 1], got {y}")
    z = y / (1.0 + math.sqrt(1.0 - y))
    return z / (2.0 - z)


def bubble_mass(ctx: SobolevContext, q: float, beta: float, order: int | None = None) -> float:
    """Normalized mass integral I_q(beta) = |S^d|^{-1} int v_beta^q.

    Negative beta is folded to |beta| (the integral is even in beta by the
    t -> -t symmetry). Evaluated through the hypergeometric representation
    I_q = c_dim ((1-beta)/(1+beta))^{dq/2p} 2F1(dq/p, d/2; d; 2 beta/(1+beta)).
    """
    if q <= 0.0:
        raise ValueError(f"q must be positive, got {q}")
    beta = abs(beta)
    if beta >= 1.0:
        raise ValueError(f"beta must satisfy |beta| < 1, got {beta}")
    z = 2.0 * beta / (1.0 + beta)
    f = hyp2f1(Hyp2F1Args(a=ctx.d * q / ctx.p, b=ctx.d / 2.0, c=float(ctx.d), z=z), order)
    return ctx.c_dim * ((1.0 - beta) / (1.0 + beta)) ** (ctx.d * q / (2.0 * ctx.p)) * f


def m_of_y(ctx: SobolevContext, y: float, order: int | None = None) -> float:
    """Cross-mass of the two-bubble pair in the y variable:
    m(y) = c_dim (1-y)^{d/2p} 2F1(d/p, d/2; d; y); m(1) = 0 analytically."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [0, 1], got {y}")
    if y == 1.0:
        return 0.0
    f = hyp2f1(Hyp2F1Args(a=ctx.d / ctx.p, b=ctx.d / 2.0, c=float(ctx.d), z=y), order)
    return ctx.c_dim * (1.0 - y) ** (ctx.d / (2.0 * ctx.p)) * f


def m2_of_y(ctx: SobolevContext, y: float, order: int | None = None) -> float:
    """Second cross-mass m2(y) = c_dim (1-y)^{d/4} 2F1(d/2, d/2; d; y);
    equals the order-2 mass of the pair when p = 4. m2(1) = 0: the
    prefactor beats the logarithmic divergence of the hypergeometric."""
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"y must lie in [0, 1], got {y}")
    if y == 1.0:
        return 0.0
    f = hyp2f1(Hyp2F1Args(a=ctx.d / 2.0, b=ctx.d / 2.0, c=float(ctx.d), z=y), order)
    return ctx.c_dim * (1.0 - y) ** (ctx.d / 4.0) * f


def two_bubble_limit(ctx: SobolevContext) -> float:
    """Quotient value of two non-interacting bubbles: 2 - 2^{(d-2s)/d}."""
    return 2.0 - 2.0 ** ((ctx.d - 2.0 * ctx.s) / ctx.d)


def to_plane(ctx: SobolevContext, u, x) -> float:
    """Stereographic push-forward u_S(x) = u(S(x)) J_S(x)^{1/p} of an
    axisymmetric function u (a callable of t = omega_{d+1}).

    x is a point in R^d (scalar allowed when d = 1); the relevant
    coordinate of S(x) is t = (1 - |x|^2)/(1 + |x|^2) and the Jacobian is
    J_S = (2/(1 + |x|^2))^d.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size != ctx.d:
        raise ValueError(f"x must be a point in R^{ctx.d}, got shape {x.shape}")
    r2 = float(np.dot(x, x))
    t = (1.0 - r2) / (1.0 + r2)
    jacobian = (2.0 / (1.0 + r2)) ** ctx.d
    return float(u(t)) * jacobian ** (1.0 / ctx.p)
