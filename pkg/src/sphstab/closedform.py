"""Closed-form stability-quotient curves of the two-bubble families and the
small-parameter expansion coefficients.

The curves live on y in (0, 1), where y = 4 beta/(1+beta)^2 encodes the
bubble parameter. Near y = 0 both numerator and denominator vanish to
fourth order; evaluation there goes through the exact rational Taylor
backend (_series), which keeps the tiny values and margins relatively
accurate instead of drowning them in cancellation noise. Away from the
origin the hypergeometric expressions are evaluated directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _series
from .conformal import SobolevContext, alpha, beta_of_y, m2_of_y, m_of_y, sphere_area, y_of_beta
from .specfun import wallis

__all__ = [
    "CurvePoint",
    "quotient_p3",
    "quotient_p4",
    "quotient_p4_signchanging",
    "curve_margin",
    "quotient_limits",
    "rho_value",
    "rho_cubic_integral",
    "small_beta_coefficients",
    "local_quadratic_coefficient",
    "local_quadratic_lower_bound",
]

_DEGENERATE_DENOMINATOR = 1e-10


@dataclass(frozen=True)
class CurvePoint:
    """One evaluated point of a quotient curve: value = numerator/denominator.

    degenerate flags |denominator| < 1e-10 (expected only as y -> 0, where
    the ratio is still computed accurately from the exact Taylor data but
    the raw numerator/denominator pair is more informative to report).
    """

    y: float
    value: float
    numerator: float
    denominator: float
    degenerate: bool = False

    @property
    def beta(self) -> float:
        return beta_of_y(self.y)


def _require_p(ctx: SobolevContext, pnum: int) -> None:
    if abs(ctx.p - pnum) > 1e-9:
        raise ValueError(f"this curve requires p = {pnum} (s = d/{2 * pnum // (pnum - 2)}), context has p = {ctx.p}")


def _check_y(y: float) -> None:
    if not 0.0 < y < 1.0:
        raise ValueError(f"y must lie in (0, 1), got {y}")


def _point(y: float, num: float, den: float) -> CurvePoint:
    return CurvePoint(
        y=y,
        value=num / den,
        numerator=num,
        denominator=den,
        degenerate=abs(den) < _DEGENERATE_DENOMINATOR,
    )


def quotient_p3(ctx: SobolevContext, y: float) -> CurvePoint:
    """Two-bubble quotient curve for p = 3:
    e(y) = [1 + m - 2^{-1/3}(1+3m)^{2/3}] / [1 + m - 2 m(1-sqrt(1-y))^2]."""
    _require_p(ctx, 3)
    _check_y(y)
    if y <= _series.Y_SWITCH:
        ser = _series.curve_series(ctx.d, 3)
        return _point(y, ser.eval_numerator(y), ser.eval_denominator(y))
    m = m_of_y(ctx, y)
    big_m = m_of_y(ctx, y / (1.0 + math.sqrt(1.0 - y)))
    num = 1.0 + m - 2.0 ** (-1.0 / 3.0) * (1.0 + 3.0 * m) ** (2.0 / 3.0)
    den = 1.0 + m - 2.0 * big_m * big_m
    return _point(y, num, den)


def quotient_p4(ctx: SobolevContext, y: float) -> CurvePoint:
    """Two-bubble quotient curve for p = 4:
    f(y) = [1 + m - 2^{-1/2}(1 + 4m + 3m2)^{1/2}] / [1 + m - 2 m(1-sqrt(1-y))^2]."""
    _require_p(ctx, 4)
    _check_y(y)
    if y <= _series.Y_SWITCH:
        ser = _series.curve_series(ctx.d, 4)
        return _point(y, ser.eval_numerator(y), ser.eval_denominator(y))
    m = m_of_y(ctx, y)
    m2 = m2_of_y(ctx, y)
    big_m = m_of_y(ctx, y / (1.0 + math.sqrt(1.0 - y)))
    num = 1.0 + m - math.sqrt(0.5) * math.sqrt(1.0 + 4.0 * m + 3.0 * m2)
    den = 1.0 + m - 2.0 * big_m * big_m
    return _point(y, num, den)


def quotient_p4_signchanging(ctx: SobolevContext, y: float) -> CurvePoint:
    """Sign-changing-pair curve for p = 4:
    g(y) = [1 + m - 2^{-1/2}(1 - 4m + 3m2)] / (1 + m).

    The denominator exceeds 1 on (0, 1), so no degenerate regime exists;
    the inner term 1 - 4m + 3m2 vanishes to fourth order at y = 0 and is
    taken from the exact Taylor data there.
    """
    _require_p(ctx, 4)
    _check_y(y)
    if y <= _series.Y_SWITCH:
        ser = _series.curve_series(ctx.d, 4)
        delta = ser.eval_delta(y)
        inner = _series._horner(_series.signchanging_inner_series(ctx.d), y)
        num = 2.0 + delta - math.sqrt(0.5) * inner
        den = 2.0 + delta
    else:
        m = m_of_y(ctx, y)
        m2 = m2_of_y(ctx, y)
        num = 1.0 + m - math.sqrt(0.5) * (1.0 - 4.0 * m + 3.0 * m2)
        den = 1.0 + m
    return _point(y, num, den)


def curve_margin(ctx: SobolevContext, y: float, threshold: float | Fraction | None = None) -> float:
    """Regularized inequality margin numerator(y) - threshold*denominator(y)
    of the two-bubble curve (threshold defaults to the exact local constant).

    For small y the margin vanishes to eighth order; it is evaluated from
    exactly cancelled Taylor coefficients, so its sign is reliable down to
    y = 1e-4 and below.
    """
    _check_y(y)
    pnum = 3 if abs(ctx.p - 3) <= 1e-9 else 4 if abs(ctx.p - 4) <= 1e-9 else None
    if pnum is None:
        raise ValueError(f"closed-form margin requires p in {{3, 4}}, context has p = {ctx.p}")
    if threshold is None:
        threshold = _series.cloc_fraction(ctx.d, pnum)
    if y <= _series.Y_SWITCH:
        ser = _series.curve_series(ctx.d, pnum)
        return ser.margin(y, Fraction(threshold))
    point = quotient_p3(ctx, y) if pnum == 3 else quotient_p4(ctx, y)
    return point.numerator - float(threshold) * point.denominator


def quotient_limits(ctx: SobolevContext, family: str = "two-bubble") -> tuple[float, float]:
    """Analytic endpoint values (y -> 0+, y -> 1-) of a curve family.

    two-bubble: (c_loc, 1 - 2^{-2s/d}); sign-changing: (1, 1 - 2^{-1/2}).
    The y -> 1 values are exact limits; the approach is slow, of order
    (1-y)^{d/2p}, so finite-y evaluations stay visibly above them.
    """
    if family == "two-bubble":
        return ctx.c_loc, 1.0 - 2.0 ** (-2.0 * ctx.s / ctx.d)
    if family == "sign-changing":
        _require_p(ctx, 4)
        return 1.0, 1.0 - math.sqrt(0.5)
    raise ValueError(f"unknown closed-form family {family!r}")


def rho_value(d: int, t: float) -> float:
    """Axisymmetric second spherical harmonic ((d+1)t^2 - 1)/d, the
    profile of the quadratic term in the small-beta bubble-pair expansion."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return ((d + 1) * t * t - 1.0) / d


def rho_cubic_integral(d: int) -> float:
    """Closed form of the cubic integral of rho over S^d:
    |S^{d-1}| * 8(d^2-1) / (d^3 (d+2)(d+4)) * int_0^pi sin^{d+5}.

    Zero exactly when d = 1, strictly positive for d >= 2.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    factor = 8.0 * (d * d - 1.0) / (d ** 3 * (d + 2.0) * (d + 4.0))
    return sphere_area(d - 1) * factor * wallis(d + 5)


def small_beta_coefficients(ctx: SobolevContext) -> tuple[float, float]:
    """Quadratic expansion data of the bubble pair near beta = 0:
    u_beta = c1(beta) + c2 beta^2 rho + o(beta^2) with
    c1(beta) = 2 + c1_quadratic beta^2.

    Returns (c1_quadratic, c2), obtained from the pointwise expansion
    u_beta = (2 - (d/p) beta^2) + (d/p)(d/p + 1) beta^2 t^2 + o(beta^2)
    after splitting t^2 into its rho component and its mean.
    """
    a = ctx.d / ctx.p
    c1_quadratic = -a + a * (a + 1.0) / (ctx.d + 1.0)
    c2 = a * (a + 1.0) * ctx.d / (ctx.d + 1.0)
    return c1_quadratic, c2


def local_quadratic_coefficient(ctx: SobolevContext) -> float:
    """Exact quadratic coefficient of the second-harmonic family on the
    circle: the quotient of 1 + mu sin(2 theta) satisfies
    quotient = c_loc + coeff * mu^2 + o(mu^2) with
    coeff = alpha(1)(p-2)(p+1) / (16 alpha(2))."""
    if ctx.d != 1:
        raise ValueError("the second-harmonic expansion is specific to d = 1")
    return alpha(ctx, 1) * (ctx.p - 2.0) * (ctx.p + 1.0) / (16.0 * alpha(ctx, 2))


def local_quadratic_lower_bound(ctx: SobolevContext) -> float:
    """Proved lower bound alpha(1)(p-2)(1+2s) / (192 alpha(2)) for the
    quadratic coefficient; always below local_quadratic_coefficient."""
    if ctx.d != 1:
        raise ValueError("the second-harmonic expansion is specific to d = 1")
    return alpha(ctx, 1) * (ctx.p - 2.0) * (1.0 + 2.0 * ctx.s) / (192.0 * alpha(ctx, 2))
