"""Certified rational approximations of the transcendental values the
parametric generator families need (exp, pi, sin, cos, tan).

Every function returns an exact rational r with a guaranteed bound
|r - f(x)| <= err, derived from truncated Taylor or Machin series with
explicit remainder estimates.  All arithmetic is exact, so the bounds
are rigorous, not heuristic.  Callers round the results onto a dyadic
grid with :func:`round_dyadic` when a declared precision is required.
"""

from __future__ import annotations

from fractions import Fraction

from .kernel import InputError, scalar


def round_dyadic(x: Fraction, bits: int) -> Fraction:
    """Nearest dyadic rational with denominator 2**bits (ties to even)."""
    if bits < 0:
        raise InputError("bits must be non-negative")
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


def exp_rational(x, err) -> Fraction:
    """Taylor series for exp(x) truncated once the tail is below err.

    Once the term ratio |x|/(k+1) drops under 1/2 the tail is bounded
    by twice the next term, which gives the stopping rule.
    """
    x = scalar(x)
    err = scalar(err)
    if err <= 0:
        raise InputError("err must be positive")
    total = Fraction(1)
    term = Fraction(1)
    k = 0
    ax = abs(x)
    while True:
        k += 1
        term = term * x / k
        total += term
        if ax < Fraction(k + 1, 2) and 2 * abs(term) * ax / (k + 1) <= err:
            return total


def _atan_inverse(m: int, err: Fraction) -> Fraction:
    # atan(1/m) for integer m >= 2: alternating series, tail <= next term
    term = Fraction(1, m)
    total = Fraction(0)
    k = 0
    msq = m * m
    while abs(term) > err:
        total += term
        k += 1
        term = -term * Fraction(2 * k - 1, (2 * k + 1) * msq)
    return total


def pi_rational(err) -> Fraction:
    """Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239)."""
    err = scalar(err)
    if err <= 0:
        raise InputError("err must be positive")
    return 16 * _atan_inverse(5, err / 32) - 4 * _atan_inverse(239, err / 8)


def sin_rational(x, err) -> Fraction:
    """Alternating Taylor series; requires |x| <= 2 so the tail bound
    (next omitted term) applies from the start."""
    x = scalar(x)
    err = scalar(err)
    if abs(x) > 2:
        raise InputError("sin_rational expects |x| <= 2")
    if err <= 0:
        raise InputError("err must be positive")
    term = x
    total = Fraction(0)
    k = 0
    while abs(term) > err:
        total += term
        k += 1
        term = -term * x * x / ((2 * k) * (2 * k + 1))
    return total


def cos_rational(x, err) -> Fraction:
    x = scalar(x)
    err = scalar(err)
    if abs(x) > 2:
        raise InputError("cos_rational expects |x| <= 2")
    if err <= 0:
        raise InputError("err must be positive")
    term = Fraction(1)
    total = Fraction(0)
    k = 0
    while abs(term) > err:
        total += term
        k += 1
        term = -term * x * x / ((2 * k - 1) * (2 * k))
    return total


def tan_rational(x, err) -> Fraction:
    """tan(x) for |x| < 1 via sin/cos with a conservative error budget.

    With |x| <= 1 we have cos(x) >= 1/2, so an absolute error d on both
    numerator and denominator perturbs the quotient by at most
    2 d (1 + |tan x|) <= 8 d for |x| <= 0.8.
    """
    x = scalar(x)
    err = scalar(err)
    if abs(x) > Fraction(4, 5):
        raise InputError("tan_rational expects |x| <= 4/5")
    if err <= 0:
        raise InputError("err must be positive")
    d = err / 16
    s = sin_rational(x, d)
    c = cos_rational(x, d)
    return s / c


def exp_power(base_exponent: Fraction, power: int, err) -> Fraction:
    """exp(base_exponent)**power for integer power, certified.

    Computes a certified base value b ~ exp(base_exponent) and raises
    it exactly.  The derivative bound |b^p - e^(p a)| <= p M^(p-1) d
    with M = max(b, e^a) + d gives the budget for the base error d.
    """
    err = scalar(err)
    power = int(power)
    if power < 0:
        raise InputError("negate the base exponent instead of the power")
    if power == 0:
        return Fraction(1)
    a = scalar(base_exponent)
    coarse = exp_rational(a, Fraction(1, 8))
    magnitude = coarse + Fraction(1, 4)
    if magnitude < 1:
        magnitude = Fraction(1)
    budget = err / (2 * power * magnitude ** (power - 1))
    base = exp_rational(a, budget)
    return base ** power
