"""
Exact and high-precision arithmetic for bound values.

Rational bounds are carried as :class:`~fractions.Fraction`; anything with an irrational
factor lives in the log2 domain as a 128-bit :class:`gmpy2.mpfr`.
"""

from fractions import Fraction
from math import factorial
from typing import Any

import gmpy2
from gmpy2 import mpfr

LOG2_PRECISION = 128
SOUNDNESS_SLACK = 1e-9


def _working() -> Any:
    return gmpy2.context(precision=LOG2_PRECISION)


def log2_of(value: Fraction | int) -> mpfr:
    value = Fraction(value)
    if value <= 0:
        raise ValueError(f'log2 of non-positive value {value}')
    with _working():
        return gmpy2.log2(gmpy2.mpz(value.numerator)) - gmpy2.log2(gmpy2.mpz(value.denominator))


def log2_factorial(k: int) -> mpfr:
    return log2_of(factorial(k))


def scaled(factor: Fraction | int, log2_value: mpfr) -> mpfr:
    """``factor * log2_value`` at working precision."""
    factor = Fraction(factor)
    with _working():
        return log2_value * gmpy2.mpq(factor.numerator, factor.denominator)


def total(*log2_values: mpfr) -> mpfr:
    with _working():
        result = mpfr(0)
        for value in log2_values:
            result += value
        return result


def path_cover_log2_base() -> mpfr:
    """log2 of 2^(7/8) * 6^(1/24)."""
    return total(mpfr_fraction(Fraction(7, 8)), scaled(Fraction(1, 24), log2_of(6)))


def mpfr_fraction(value: Fraction) -> mpfr:
    with _working():
        return gmpy2.mpfr(gmpy2.mpq(value.numerator, value.denominator))


def difference(a: mpfr, b: mpfr) -> mpfr:
    with _working():
        return a - b


def format_log2(value: mpfr) -> str:
    """Seventeen significant digits: enough for the double nearest ``value`` to round-trip."""
    return format(float(value), '.17g')
