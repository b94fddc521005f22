"""Test-function families evaluated by the spectral module and the CLI.

Each builder returns a callable on the analysis grid: a function of the
angle theta for the circle's Fourier basis, or of the axis coordinate t
for the axisymmetric Gegenbauer basis.
"""

from __future__ import annotations

import numpy as np

from .closedform import rho_value
from .conformal import SobolevContext
from .spectral import SphereFunction, analyze

__all__ = [
    "FAMILIES",
    "two_bubble_profile",
    "sign_changing_profile",
    "second_harmonic_profile",
    "rho_perturbation_profile",
    "build_family",
]

FAMILIES = ("two-bubble", "sign-changing", "second-harmonic", "prop41-rho")


def _bubble_pair(ctx: SobolevContext, beta: float, sign: float):
    if not 0.0 <= beta < 1.0:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")
    d_over_p = ctx.d / ctx.p
    amp = (1.0 - beta * beta) ** (d_over_p / 2.0)

    def profile(t):
        t = np.asarray(t)
        return amp * ((1.0 - beta * t) ** (-d_over_p) + sign * (1.0 + beta * t) ** (-d_over_p))

    return profile


def two_bubble_profile(ctx: SobolevContext, beta: float):
    """v_beta + v_{-beta} as a function of the axis coordinate t."""
    return _bubble_pair(ctx, beta, +1.0)


def sign_changing_profile(ctx: SobolevContext, beta: float):
    """v_beta - v_{-beta} as a function of the axis coordinate t."""
    return _bubble_pair(ctx, beta, -1.0)


def second_harmonic_profile(mu: float):
    """1 + mu sin(2 theta) on the circle, as a function of the angle."""

    def profile(theta):
        return 1.0 + mu * np.sin(2.0 * np.asarray(theta))

    return profile


def rho_perturbation_profile(ctx: SobolevContext, eps: float):
    """1 + eps * rho as a function of t, rho the second axisymmetric
    harmonic profile ((d+1)t^2 - 1)/d."""

    def profile(t):
        t = np.asarray(t)
        return 1.0 + eps * rho_value(ctx.d, t)

    return profile


def build_family(
    ctx: SobolevContext,
    family: str,
    parameter: float,
    truncation: int,
    quad_order: int | None = None,
    dtype=np.float64,
) -> SphereFunction:
    """Analyze one family member into a SphereFunction.

    two-bubble / sign-changing take the bubble parameter beta; the
    second-harmonic family takes the amplitude mu (d = 1 only, Fourier
    basis, so the angle-dependent mode is representable); prop41-rho takes
    the perturbation size eps.
    """
    if family == "two-bubble":
        profile_t = two_bubble_profile(ctx, parameter)
    elif family == "sign-changing":
        profile_t = sign_changing_profile(ctx, parameter)
    elif family == "second-harmonic":
        if ctx.d != 1:
            raise ValueError("the second-harmonic family is specific to d = 1")
        return analyze(ctx, second_harmonic_profile(parameter), truncation, quad_order=quad_order, dtype=dtype)
    elif family == "prop41-rho":
        profile_t = rho_perturbation_profile(ctx, parameter)
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")

    if ctx.d == 1:
        def profile(theta):
            return profile_t(np.sin(np.asarray(theta)))
        return analyze(ctx, profile, truncation, basis="fourier-s1", quad_order=quad_order, dtype=dtype)
    return analyze(ctx, profile_t, truncation, basis="gegenbauer-axi", quad_order=quad_order, dtype=dtype)
