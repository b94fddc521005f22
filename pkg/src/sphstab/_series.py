"""Exact rational power-series backend for the closed-form quotient curves.

Near y = 0 the curve numerators and denominators vanish to fourth order and
their margins against the local constant vanish to eighth order, far below
what direct double-precision evaluation of the hypergeometric expressions
can resolve (the true margin at y = 0.001 is ~1e-34). All series
coefficients involved are rational for p in {3, 4} (s = d/6 or d/4), so the
Taylor coefficients of numerator, denominator and margin are computed here
exactly with Fraction arithmetic; leading cancellations then hold exactly
and the float evaluation of the reduced series is relatively accurate down
to y -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

# Truncation order and validity radius of the series path. At y = 0.4 the
# discarded tail is below 1e-19 in absolute terms.
ORDER = 44
Y_SWITCH = 0.4

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (ORDER + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > ORDER:
                break
            if bj != 0:
                out[i + j] += ai * bj
    return out


def _add(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    return [x + y for x, y in zip(a, b)]


def _scale(a: list[Fraction], c: Fraction) -> list[Fraction]:
    return [c * x for x in a]


def _compose(outer: list[Fraction], inner: list[Fraction]) -> list[Fraction]:
    """outer(inner(y)) for inner with zero constant term, by Horner."""
    assert inner[0] == 0
    out = [_ZERO] * (ORDER + 1)
    out[0] = outer[ORDER]
    for k in range(ORDER - 1, -1, -1):
        out = _mul(out, inner)
        out[0] += outer[k]
    return out


def _binomial_series(sigma: Fraction) -> list[Fraction]:
    """Coefficients of (1 + x)^sigma."""
    coeffs = [_ONE]
    for k in range(1, ORDER + 1):
        coeffs.append(coeffs[-1] * (sigma - (k - 1)) / k)
    return coeffs


def _one_minus_y_power(sigma: Fraction) -> list[Fraction]:
    """Coefficients of (1 - y)^sigma."""
    binom = _binomial_series(sigma)
    return [c if k % 2 == 0 else -c for k, c in enumerate(binom)]


def _hypergeometric_series(a: Fraction, b: Fraction, c: Fraction) -> list[Fraction]:
    """Coefficients of 2F1(a, b; c; y)."""
    coeffs = [_ONE]
    for n in range(ORDER):
        coeffs.append(coeffs[-1] * (a + n) * (b + n) / ((c + n) * (n + 1)))
    return coeffs


def _binomial_tail(sigma: Fraction) -> list[Fraction]:
    """(1 + x)^sigma - 1 - sigma x: the quadratic-and-beyond tail."""
    tail = _binomial_series(sigma)
    tail[0] = _ZERO
    tail[1] = _ZERO
    return tail


def _sqrt_one_minus_y_complement() -> list[Fraction]:
    """Coefficients of w(y) = 1 - sqrt(1 - y)."""
    root = _one_minus_y_power(Fraction(1, 2))
    out = [-c for c in root]
    out[0] = _ZERO
    return out


def _mass_delta(d: int, a: Fraction, prefactor_exponent: Fraction) -> list[Fraction]:
    """Coefficients of c_dim^{-1} m(y) - 1 for a mass-type function
    (1-y)^sigma 2F1(a, d/2; d; y); the constant and linear coefficients
    vanish identically (sigma = a b / c)."""
    f = _hypergeometric_series(a, Fraction(d, 2), Fraction(d))
    pre = _one_minus_y_power(prefactor_exponent)
    m = _mul(f, pre)
    m[0] -= _ONE
    assert m[0] == 0 and m[1] == 0
    return m


def _to_float(coeffs: list[Fraction]) -> np.ndarray:
    return np.array([float(c) for c in coeffs])


def _horner(coeffs: np.ndarray, y: float) -> float:
    acc = 0.0
    for c in coeffs[::-1]:
        acc = acc * y + c
    return float(acc)


def cloc_fraction(d: int, pnum: int) -> Fraction:
    """Exact local constant 4s/(d+2s+2) for s = d/6 (p=3) or d/4 (p=4)."""
    if pnum == 3:
        return Fraction(d, 2 * d + 3)
    if pnum == 4:
        return Fraction(2 * d, 3 * d + 4)
    raise ValueError(f"no closed form for p = {pnum}")


@dataclass(frozen=True)
class CurveSeries:
    """Float-evaluable Taylor data of one closed-form curve family."""

    d: int
    pnum: int
    delta: np.ndarray          # m(y) - 1
    delta2: np.ndarray | None  # m2(y) - 1 (p = 4 only)
    numerator: np.ndarray
    denominator: np.ndarray
    _numerator_exact: tuple
    _denominator_exact: tuple

    def eval_numerator(self, y: float) -> float:
        return _horner(self.numerator, y)

    def eval_denominator(self, y: float) -> float:
        return _horner(self.denominator, y)

    def eval_delta(self, y: float) -> float:
        return _horner(self.delta, y)

    def eval_delta2(self, y: float) -> float:
        return _horner(self.delta2, y)

    def margin(self, y: float, threshold: Fraction) -> float:
        """numerator(y) - threshold * denominator(y), with the leading
        Taylor cancellation performed exactly when threshold is the exact
        local constant."""
        coeffs = _margin_coeffs(self.d, self.pnum, threshold)
        return _horner(coeffs, y)


@lru_cache(maxsize=None)
def _margin_coeffs(d: int, pnum: int, threshold: Fraction) -> np.ndarray:
    num = curve_series(d, pnum)._numerator_exact
    den = curve_series(d, pnum)._denominator_exact
    margin = [a - threshold * b for a, b in zip(num, den)]
    return _to_float(margin)


@lru_cache(maxsize=None)
def curve_series(d: int, pnum: int) -> CurveSeries:
    """Exact Taylor data for the p = 3 curve (e1/e2) or the p = 4 curve
    (numerator/e2) in dimension d."""
    if pnum not in (3, 4):
        raise ValueError(f"series curves exist only for p in {{3, 4}}, got {pnum}")
    p = Fraction(pnum)
    dd = Fraction(d)
    delta = _mass_delta(d, dd / p, dd / (2 * p))
    w = _sqrt_one_minus_y_complement()
    delta_w = _compose(delta, w)

    # denominator e2(y) = 1 + m(y) - 2 m(w(y))^2 = delta - 4 delta_w - 2 delta_w^2
    den = _add(delta, _scale(delta_w, Fraction(-4)))
    den = _add(den, _scale(_mul(delta_w, delta_w), Fraction(-2)))

    delta2 = None
    if pnum == 3:
        # e1 = 1 + m - 2^{-1/3}(1 + 3m)^{2/3} = -2 T_{2/3}(3 delta / 4):
        # writing m = 1 + delta makes the constant and linear terms drop
        inner = _scale(delta, Fraction(3, 4))
        num = _scale(_compose(_binomial_tail(Fraction(2, 3)), inner), Fraction(-2))
    else:
        # numerator = 1 + m - 2^{-1/2}(1 + 4m + 3m2)^{1/2}
        #           = (4 delta - 3 delta2)/8 - 2 T_{1/2}((4 delta + 3 delta2)/8)
        delta2 = _mass_delta(d, dd / 2, dd / 4)
        x = _scale(_add(_scale(delta, Fraction(4)), _scale(delta2, Fraction(3))), Fraction(1, 8))
        lead = _scale(_add(_scale(delta, Fraction(4)), _scale(delta2, Fraction(-3))), Fraction(1, 8))
        num = _add(lead, _scale(_compose(_binomial_tail(Fraction(1, 2)), x), Fraction(-2)))

    return CurveSeries(
        d=d,
        pnum=pnum,
        delta=_to_float(delta),
        delta2=None if delta2 is None else _to_float(delta2),
        numerator=_to_float(num),
        denominator=_to_float(den),
        _numerator_exact=tuple(num),
        _denominator_exact=tuple(den),
    )


@lru_cache(maxsize=None)
def signchanging_inner_series(d: int) -> np.ndarray:
    """Taylor coefficients of 1 - 4 m(y) + 3 m2(y) = -4 delta + 3 delta2
    for p = 4: the inner term of the sign-changing curve, whose quadratic
    and cubic coefficients cancel exactly."""
    p = Fraction(4)
    dd = Fraction(d)
    delta = _mass_delta(d, dd / p, dd / (2 * p))
    delta2 = _mass_delta(d, dd / 2, dd / 4)
    inner = _add(_scale(delta, Fraction(-4)), _scale(delta2, Fraction(3)))
    return _to_float(inner)
