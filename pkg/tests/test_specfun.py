import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphstab.specfun import (
    ConsistencyError,
    Hyp2F1Args,
    chebyshev_t,
    gauss_legendre,
    gegenbauer,
    hyp2f1,
    hyp2f1_euler,
    hyp2f1_series,
    log_gamma,
    wallis,
)


class TestLogGamma:
    def test_known_values(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-14)
        assert log_gamma(4.0) == pytest.approx(math.log(6.0), rel=1e-14)

    def test_recurrence_identity(self):
        # Gamma(x+1) = x Gamma(x) across the contract range
        for x in np.linspace(0.1, 50.0, 97):
            assert log_gamma(x + 1.0) == pytest.approx(log_gamma(x) + math.log(x), rel=1e-13, abs=1e-13)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-3.2)


class TestGaussLegendre:
    def test_order_one(self):
        rule = gauss_legendre(1)
        assert rule.nodes.tolist() == [0.0]
        assert rule.weights.tolist() == [2.0]

    def test_order_two(self):
        rule = gauss_legendre(2)
        assert rule.nodes == pytest.approx([-1 / math.sqrt(3), 1 / math.sqrt(3)], rel=1e-15)
        assert rule.weights == pytest.approx([1.0, 1.0], rel=1e-15)
        assert rule.integrate(lambda x: x * x) == pytest.approx(2.0 / 3.0, rel=1e-15)

    @pytest.mark.parametrize("order", [3, 8, 32, 201, 512])
    def test_rule_invariants(self, order):
        rule = gauss_legendre(order)
        assert abs(rule.weights.sum() - 2.0) < 1e-13
        assert np.all(np.diff(rule.nodes) > 0)
        assert np.allclose(rule.nodes, -rule.nodes[::-1], atol=1e-15)
        assert np.allclose(rule.weights, rule.weights[::-1], atol=1e-15)
        assert np.all(rule.weights > 0)

    @pytest.mark.parametrize("order,k", [(3, 5), (8, 15), (32, 63), (5, 9)])
    def test_monomial_exactness(self, order, k):
        # exact for x^k up to k = 2*order - 1
        rule = gauss_legendre(order)
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert rule.integrate(lambda x: x**k) == pytest.approx(exact, abs=1e-12)

    def test_doubling_convergence(self):
        f = lambda x: np.exp(np.cos(3.0 * x))
        coarse = gauss_legendre(64).integrate(f)
        fine = gauss_legendre(128).integrate(f)
        assert abs(coarse - fine) < 1e-13

    def test_usage_errors(self):
        with pytest.raises(ValueError):
            gauss_legendre(0)
        with pytest.raises(ValueError):
            gauss_legendre(20000)

    def test_immutability(self):
        rule = gauss_legendre(8)
        with pytest.raises(ValueError):
            rule.nodes[0] = 0.0


def _series_oracle(a, b, c, z, terms=400):
    total, term = 1.0, 1.0
    for n in range(terms):
        term *= (a + n) * (b + n) / ((c + n) * (1 + n)) * z
        total += term
    return total


class TestHyp2F1:
    def test_z_zero(self):
        for a, b, c in [(0.3, 0.5, 1.0), (2.0, 1.0, 3.0), (1 / 3, 0.5, 1.0)]:
            assert hyp2f1(Hyp2F1Args(a, b, c, 0.0)) == pytest.approx(1.0, rel=1e-14)

    def test_log_identity(self):
        # 2F1(1,1;2;z) = -log(1-z)/z; at z = 1/2 that is 2 log 2
        expected = 2.0 * math.log(2.0)
        assert _series_oracle(1.0, 1.0, 2.0, 0.5) == pytest.approx(expected, rel=1e-12)
        assert hyp2f1(Hyp2F1Args(1.0, 1.0, 2.0, 0.5)) == pytest.approx(expected, abs=1e-10)

    def test_dual_path_example(self):
        args = Hyp2F1Args(0.5, 0.5, 1.0, 0.25)
        assert abs(hyp2f1_euler(args) - hyp2f1_series(args)) < 1e-10

    @pytest.mark.parametrize("d", range(1, 7))
    @pytest.mark.parametrize("p", [3, 4, 6])
    def test_dual_path_grid(self, d, p):
        # the parameter grid the quotient formulas actually use
        for a in (d / p, d / 2, 2 * d / p, d):
            for z in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5):
                args = Hyp2F1Args(float(a), d / 2, float(d), z)
                assert abs(hyp2f1_euler(args) - hyp2f1_series(args)) <= 1e-10

    def test_binomial_identity_near_one(self):
        # 2F1(a, b; b; z) would be (1-z)^{-a}; with c > b use a=c case:
        # 2F1(a, b; c; z) at a = c reduces to (1-z)^{-b}
        for z in (0.9, 0.999, 1 - 1e-6):
            args = Hyp2F1Args(a=2.0, b=0.5, c=2.0, z=z)
            assert hyp2f1(args) == pytest.approx((1 - z) ** -0.5, rel=1e-11)

    def test_gauss_value_at_one(self):
        args = Hyp2F1Args(1 / 3, 0.5, 1.0, 1.0)
        expected = math.exp(log_gamma(1 / 6) - log_gamma(2 / 3) - log_gamma(0.5))
        assert hyp2f1(args) == pytest.approx(expected, rel=1e-13)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            Hyp2F1Args(0.5, 0.5, 1.0, 1.5)
        with pytest.raises(ValueError):
            Hyp2F1Args(1.0, 0.5, 1.0, 1.0)  # c - a - b < 0 at z = 1
        with pytest.raises(ValueError):
            Hyp2F1Args(0.5, 1.0, 0.5, 0.1)  # c <= b
        with pytest.raises(ValueError):
            Hyp2F1Args(0.5, -0.5, 1.0, 0.1)  # b <= 0

    @given(
        d=st.integers(1, 6),
        a=st.floats(0.1, 3.0),
        z1=st.floats(0.0, 0.9),
        dz=st.floats(0.01, 0.09),
    )
    @settings(max_examples=40, deadline=None)
    def test_monotone_in_z(self, d, a, z1, dz):
        # positive-coefficient series: increasing in z for positive
        # parameters; drawn from the (b, c) = (d/2, d) family on which the
        # Euler integrand is smooth
        lo = hyp2f1(Hyp2F1Args(a, d / 2, float(d), z1))
        hi = hyp2f1(Hyp2F1Args(a, d / 2, float(d), min(z1 + dz, 0.99)))
        assert hi >= lo - 1e-12


class TestOrthogonalPolynomials:
    def test_gegenbauer_base_cases(self):
        for lam in (0.5, 1.0, 2.5):
            for t in (-0.7, 0.0, 0.3, 1.0):
                assert gegenbauer(0, lam, t) == 1.0
                assert gegenbauer(1, lam, t) == pytest.approx(2 * lam * t, rel=1e-15, abs=1e-15)

    @pytest.mark.parametrize("lam", [0.5, 1.0, 1.5])
    def test_orthogonality(self, lam):
        # quadrature oracle: integrate C_2 C_3 against (1-t^2)^{lam-1/2},
        # written in the polar angle where the weight is analytic
        rule = gauss_legendre(256)
        theta, w = rule.mapped(0.0, math.pi)
        t = np.cos(theta)
        integrand = gegenbauer(2, lam, t) * gegenbauer(3, lam, t) * np.sin(theta) ** (2 * lam)
        assert abs(np.dot(w, integrand)) < 1e-12

    def test_chebyshev_matches_cosine(self):
        t = np.linspace(-1.0, 1.0, 41)
        for ell in (0, 1, 2, 5, 11):
            assert np.allclose(chebyshev_t(ell, t), np.cos(ell * np.arccos(t)), atol=1e-12)

    def test_legendre_special_case(self):
        # lambda = 1/2 gives the Legendre polynomials
        assert gegenbauer(2, 0.5, 0.4) == pytest.approx(0.5 * (3 * 0.4**2 - 1), rel=1e-14)


class TestWallis:
    def test_base_values(self):
        assert wallis(1) == pytest.approx(2.0, rel=1e-15)
        assert wallis(2) == pytest.approx(math.pi / 2, rel=1e-15)

    def test_full_period_fourth_power(self):
        # int_0^{2pi} sin^4 = 3 pi / 4
        assert 2.0 * wallis(4) == pytest.approx(3.0 * math.pi / 4.0, rel=1e-15)

    @pytest.mark.parametrize("n", range(0, 31))
    def test_product_identity(self, n):
        assert wallis(n) * wallis(n + 1) == pytest.approx(2.0 * math.pi / (n + 1), rel=1e-13)

    def test_quadrature_cross_check(self):
        rule = gauss_legendre(128)
        theta, w = rule.mapped(0.0, math.pi)
        for n in (3, 7, 10):
            assert wallis(n) == pytest.approx(float(np.dot(w, np.sin(theta) ** n)), rel=1e-12)
