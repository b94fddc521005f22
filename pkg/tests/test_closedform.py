import math
from fractions import Fraction

import numpy as np
import pytest

import sphstab._series as series
from sphstab.closedform import (
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
from sphstab.conformal import (
    beta_of_y,
    m2_of_y,
    m_of_y,
    make_context,
    two_bubble_limit,
    y_of_beta,
)
from sphstab.families import two_bubble_profile
from sphstab.specfun import gauss_legendre

CTX_P3 = make_context(1, 1 / 6)
CTX_P4 = make_context(1, 1 / 4)
CTX_D2_P3 = make_context(2, 1 / 3)

# frozen from 60-digit evaluations of the hypergeometric expressions
E_CURVE_REFS = {
    0.1: 0.20000006748922346,
    0.3: 0.20000589932068387,
    0.5: 0.20005392352845337,
    0.7: 0.20028402073235272,
    0.9: 0.2015267967893369,
}
F_CURVE_REFS = {
    0.1: 0.28571438913556118,
    0.3: 0.28572334396975307,
    0.5: 0.28579747245698088,
    0.7: 0.28615673319755234,
    0.9: 0.28815891784098815,
}
E_NEAR_ONE = 0.20803461495338312  # e at y = 1 - 1e-6
F_NEAR_ONE = 0.30032055841262380  # f at y = 1 - 1e-6
P3_MARGIN_REFS = {0.001: 3.16199e-34, 0.005: 1.25512e-28, 0.01: 3.27842e-26}


class TestP3Curve:
    @pytest.mark.parametrize("beta,ref", sorted(E_CURVE_REFS.items()))
    def test_frozen_values(self, beta, ref):
        assert quotient_p3(CTX_P3, y_of_beta(beta)).value == pytest.approx(ref, abs=2e-10)

    def test_left_limit_by_extrapolation(self):
        # e is analytic at y = 0 once the 0/0 is resolved; Richardson in y
        e = lambda y: quotient_p3(CTX_P3, y).value
        extrapolated = 2 * e(1e-3) - e(2e-3)
        assert extrapolated == pytest.approx(0.2, abs=1e-9)
        assert e(1e-4) == pytest.approx(0.2, abs=1e-12)

    def test_numerator_denominator_vanish_at_origin(self):
        point = quotient_p3(CTX_P3, 1e-6)
        assert abs(point.numerator) < 1e-28
        assert abs(point.denominator) < 1e-22
        assert point.degenerate

    def test_right_limit(self):
        lo, hi = quotient_limits(CTX_P3)
        assert lo == pytest.approx(0.2, rel=1e-15)
        assert hi == pytest.approx(1 - 2 ** (-1 / 3), rel=1e-15)
        # the finite-y value near 1 (frozen): visibly above the limit,
        # approaching it only at the (1-y)^{1/6} rate
        assert quotient_p3(CTX_P3, 1 - 1e-6).value == pytest.approx(E_NEAR_ONE, abs=1e-10)

    def test_wrong_p_rejected(self):
        with pytest.raises(ValueError):
            quotient_p3(CTX_P4, 0.5)
        with pytest.raises(ValueError):
            quotient_p3(CTX_P3, 1.5)

    def test_point_consistency(self):
        for y in (0.05, 0.3, 0.5, 0.9):
            point = quotient_p3(CTX_P3, y)
            if abs(point.denominator) > 1e-10:
                assert point.value * point.denominator == pytest.approx(point.numerator, rel=1e-12)
            assert y_of_beta(point.beta) == pytest.approx(y, abs=1e-14)


class TestP4Curve:
    @pytest.mark.parametrize("beta,ref", sorted(F_CURVE_REFS.items()))
    def test_frozen_values(self, beta, ref):
        assert quotient_p4(CTX_P4, y_of_beta(beta)).value == pytest.approx(ref, abs=2e-10)

    def test_left_limit_by_extrapolation(self):
        f = lambda y: quotient_p4(CTX_P4, y).value
        extrapolated = 2 * f(1e-3) - f(2e-3)
        assert extrapolated == pytest.approx(2 / 7, abs=1e-9)

    def test_strictly_increasing_on_grid(self):
        ys = np.linspace(0.005, 0.995, 200)
        values = [quotient_p4(CTX_P4, float(y)).value for y in ys]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_right_limit(self):
        lo, hi = quotient_limits(CTX_P4)
        assert lo == pytest.approx(2 / 7, rel=1e-15)
        assert hi == pytest.approx(1 - 2**-0.5, rel=1e-15)
        assert quotient_p4(CTX_P4, 1 - 1e-6).value == pytest.approx(F_NEAR_ONE, abs=1e-10)

    def test_wrong_p_rejected(self):
        with pytest.raises(ValueError):
            quotient_p4(CTX_P3, 0.5)


class TestSignChangingCurve:
    def test_value_at_origin(self):
        # m(0) = m2(0) = 1 makes the inner term vanish: g(0) = 2/2 = 1
        assert quotient_p4_signchanging(CTX_P4, 1e-8).value == pytest.approx(1.0, abs=1e-12)

    def test_strictly_decreasing_on_grid(self):
        ys = np.linspace(0.005, 0.995, 200)
        values = [quotient_p4_signchanging(CTX_P4, float(y)).value for y in ys]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_above_half_limit(self):
        lo, hi = quotient_limits(CTX_P4, "sign-changing")
        assert lo == 1.0
        assert hi == pytest.approx(1 - 2**-0.5, rel=1e-15)
        for y in np.linspace(0.005, 0.995, 50):
            assert quotient_p4_signchanging(CTX_P4, float(y)).value > hi

    def test_denominator_never_degenerate(self):
        for y in (1e-6, 0.5, 0.999):
            point = quotient_p4_signchanging(CTX_P4, y)
            assert point.denominator > 1.0
            assert not point.degenerate

    def test_requires_p4(self):
        with pytest.raises(ValueError):
            quotient_p4_signchanging(CTX_P3, 0.5)


class TestMargins:
    @pytest.mark.parametrize("y,ref", sorted(P3_MARGIN_REFS.items()))
    def test_frozen_margin_values(self, y, ref):
        # the margin e1 - (1/5) e2 vanishes to eighth order; the exact-series
        # evaluation reproduces 60-digit references at the 1e-5 relative level
        margin = curve_margin(CTX_P3, y)
        assert margin == pytest.approx(ref, rel=1e-4)
        assert margin > 0

    def test_positive_down_to_y_0001(self):
        for y in np.geomspace(1e-3, 0.99, 60):
            assert curve_margin(CTX_P3, float(y)) > 0

    def test_p4_margin_positive(self):
        for y in np.geomspace(1e-3, 0.99, 40):
            assert curve_margin(CTX_P4, float(y)) > 0

    def test_margin_matches_direct_combination(self):
        for y in (0.5, 0.7, 0.9):
            point = quotient_p3(CTX_P3, y)
            direct = point.numerator - 0.2 * point.denominator
            assert curve_margin(CTX_P3, y, 0.2) == pytest.approx(direct, rel=1e-9)

    def test_d2_requires_known_p(self):
        with pytest.raises(ValueError):
            curve_margin(make_context(1, 0.3), 0.5)


class TestDimensionTwo:
    # frozen 60-digit values of e(y) - 2/7 for d = 2, p = 3
    D2_REFS = {0.005: -3.95653e-8, 0.01: -1.59059e-7, 0.05: -4.14285e-6, 0.1: -1.7477e-5}

    @pytest.mark.parametrize("y,ref", sorted(D2_REFS.items()))
    def test_below_local_constant(self, y, ref):
        value = quotient_p3(CTX_D2_P3, y).value
        assert value - 2 / 7 == pytest.approx(ref, rel=1e-4)
        assert value < 2 / 7

    def test_decreasing_on_grid(self):
        ys = np.linspace(0.01, 0.995, 200)
        values = [quotient_p3(CTX_D2_P3, float(y)).value for y in ys]
        assert all(b < a for a, b in zip(values, values[1:]))


class TestLimitsConsistency:
    def test_half_two_bubble_limit(self):
        _, e_limit = quotient_limits(CTX_P3)
        assert e_limit == pytest.approx(two_bubble_limit(CTX_P3) / 2, rel=1e-14)
        _, g_limit = quotient_limits(CTX_P4, "sign-changing")
        assert g_limit == pytest.approx(two_bubble_limit(CTX_P4) / 2, rel=1e-14)

    def test_d1_limit_exceeds_local_constant(self):
        # 1 - 2^{-2s} > 4s/(3+2s) for the tested d = 1 orders
        for ctx in (CTX_P3, CTX_P4):
            assert quotient_limits(ctx)[1] > ctx.c_loc

    def test_d2_limit_below_local_constant(self):
        assert quotient_limits(CTX_D2_P3)[1] < CTX_D2_P3.c_loc


class TestSeriesBackend:
    @pytest.mark.parametrize("d,pnum", [(1, 3), (1, 4), (2, 3), (2, 4)])
    def test_series_matches_direct_in_overlap(self, d, pnum):
        ctx = make_context(d, d / 6 if pnum == 3 else d / 4)
        ser = series.curve_series(d, pnum)
        for y in (0.15, 0.25, 0.35, 0.4):
            m = m_of_y(ctx, y)
            big_m = m_of_y(ctx, y / (1 + math.sqrt(1 - y)))
            den = 1 + m - 2 * big_m**2
            if pnum == 3:
                num = 1 + m - 2 ** (-1 / 3) * (1 + 3 * m) ** (2 / 3)
            else:
                m2 = m2_of_y(ctx, y)
                num = 1 + m - math.sqrt(0.5) * math.sqrt(1 + 4 * m + 3 * m2)
            assert ser.eval_denominator(y) == pytest.approx(den, rel=2e-8)
            assert ser.eval_numerator(y) == pytest.approx(num, rel=2e-7, abs=1e-16)

    def test_leading_margin_coefficients_cancel_exactly(self):
        # value -> c_loc at y -> 0 forces the margin series to start at y^8
        num = series.curve_series(1, 3)._numerator_exact
        den = series.curve_series(1, 3)._denominator_exact
        cloc = series.cloc_fraction(1, 3)
        margin = [a - cloc * b for a, b in zip(num, den)]
        assert all(margin[k] == 0 for k in range(8))
        assert margin[8] > 0

    def test_curve_series_rejects_other_p(self):
        with pytest.raises(ValueError):
            series.curve_series(1, 5)

    def test_cloc_fractions(self):
        assert series.cloc_fraction(1, 3) == Fraction(1, 5)
        assert series.cloc_fraction(1, 4) == Fraction(2, 7)
        assert series.cloc_fraction(2, 4) == Fraction(2, 5)


def _rho_cubic_quadrature_oracle(d: int) -> float:
    # brute-force sphere quadrature of rho^3 in the polar angle
    from sphstab.conformal import sphere_area

    rule = gauss_legendre(512)
    theta, w = rule.mapped(0.0, math.pi)
    t = np.cos(theta)
    integrand = rho_value(d, t) ** 3 * np.sin(theta) ** (d - 1)
    return sphere_area(d - 1) * float(np.dot(w, integrand))


class TestRho:
    def test_profile_values(self):
        assert rho_value(1, 0.5) == pytest.approx(2 * 0.25 - 1, rel=1e-15)
        assert rho_value(2, 1.0) == pytest.approx(1.0, rel=1e-15)

    def test_zero_mean(self):
        for d in (1, 2, 3):
            from sphstab.conformal import sphere_area

            rule = gauss_legendre(256)
            theta, w = rule.mapped(0.0, math.pi)
            mean = sphere_area(d - 1) * float(np.dot(w, rho_value(d, np.cos(theta)) * np.sin(theta) ** (d - 1)))
            assert mean == pytest.approx(0.0, abs=1e-13)

    def test_cubic_integral_d1_exact_zero(self):
        assert rho_cubic_integral(1) == 0.0

    def test_cubic_integral_d2(self):
        oracle = _rho_cubic_quadrature_oracle(2)
        assert oracle == pytest.approx(8 * math.pi / 35, rel=1e-12)
        assert rho_cubic_integral(2) == pytest.approx(oracle, abs=1e-10)

    @pytest.mark.parametrize("d", range(2, 11))
    def test_positive_beyond_d1(self, d):
        closed = rho_cubic_integral(d)
        assert closed > 0
        assert closed == pytest.approx(_rho_cubic_quadrature_oracle(d), rel=1e-10)


class TestSmallBetaExpansion:
    def test_p3_coefficient(self):
        c1_quad, c2 = small_beta_coefficients(CTX_P3)
        assert c2 == pytest.approx(2 / 9, rel=1e-12)

    def test_richardson_decay_oracle(self):
        # residual of the quadratic model is o(beta^2): the normalized
        # residual ratios must decay toward zero
        for ctx in (CTX_P3, make_context(2, 0.5)):
            c1_quad, c2 = small_beta_coefficients(ctx)
            t = np.linspace(-1.0, 1.0, 201)
            ratios = []
            for beta in (0.1, 0.05, 0.025):
                pair = two_bubble_profile(ctx, beta)(t)
                model = 2.0 + c1_quad * beta**2 + c2 * beta**2 * rho_value(ctx.d, t)
                ratios.append(np.max(np.abs(pair - model)) / beta**2)
            assert ratios[0] > ratios[1] > ratios[2]
            assert ratios[2] < 0.25 * ratios[0]

    def test_c1_at_zero(self):
        c1_quad, _ = small_beta_coefficients(CTX_P3)
        assert 2.0 + c1_quad * 0.0 == 2.0


class TestLocalQuadraticCoefficient:
    def test_positive_for_all_s(self):
        for s in np.linspace(0.02, 0.48, 24):
            assert local_quadratic_coefficient(make_context(1, float(s))) > 0

    @pytest.mark.parametrize("s", [0.1, 1 / 6, 1 / 4, 0.4])
    def test_lower_bound_below_exact(self, s):
        ctx = make_context(1, s)
        assert local_quadratic_lower_bound(ctx) <= local_quadratic_coefficient(ctx)

    def test_closed_form_identity(self):
        # alpha(1)/alpha(2) = 1 - c_loc gives (1-c_loc)(p-2)(p+1)/16
        for ctx in (CTX_P3, CTX_P4, make_context(1, 0.4)):
            expected = (1 - ctx.c_loc) * (ctx.p - 2) * (ctx.p + 1) / 16
            assert local_quadratic_coefficient(ctx) == pytest.approx(expected, rel=1e-12)

    def test_exact_values(self):
        assert local_quadratic_coefficient(CTX_P3) == pytest.approx(0.2, rel=1e-12)
        assert local_quadratic_coefficient(CTX_P4) == pytest.approx(25 / 56, rel=1e-12)

    def test_d1_only(self):
        with pytest.raises(ValueError):
            local_quadratic_coefficient(make_context(2, 0.5))

    def test_bound_against_theorem_shape(self):
        # (1+2s)/12 <= p+1 is what makes the bound weaker than the exact value
        for s in (0.1, 1 / 6, 1 / 4, 0.4):
            ctx = make_context(1, s)
            assert (1 + 2 * s) / 12 <= ctx.p + 1
