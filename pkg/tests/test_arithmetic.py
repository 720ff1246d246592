from fractions import Fraction
from math import log2

import pytest
from gmpy2 import mpfr
from testfixtures import ShouldRaise, compare

from autbound.arithmetic import (
    format_log2,
    log2_factorial,
    log2_of,
    mpfr_fraction,
    path_cover_log2_base,
    scaled,
    total,
)


class TestLog2:
    def test_powers_of_two(self) -> None:
        compare(log2_of(1024), expected=mpfr(10))
        compare(log2_of(Fraction(1, 8)), expected=mpfr(-3))

    def test_precision(self) -> None:
        compare(log2_of(3).precision, expected=128)

    def test_fraction(self) -> None:
        compare(float(log2_of(Fraction(27, 4))), expected=pytest.approx(log2(6.75)))

    def test_large(self) -> None:
        value = 2**2000 * 3
        compare(float(log2_of(value)), expected=pytest.approx(2000 + log2(3)))

    def test_factorial(self) -> None:
        compare(float(log2_factorial(4)), expected=pytest.approx(log2(24)))
        compare(log2_factorial(0), expected=mpfr(0))

    @pytest.mark.parametrize('value', [0, -1, Fraction(-1, 2)])
    def test_not_positive(self, value: int | Fraction) -> None:
        with ShouldRaise(ValueError(f'log2 of non-positive value {value}')):
            log2_of(value)


class TestCombinations:
    def test_scaled(self) -> None:
        compare(float(scaled(Fraction(1, 3), log2_of(8))), expected=pytest.approx(1))

    def test_total(self) -> None:
        compare(total(), expected=mpfr(0))
        compare(total(log2_of(4), log2_of(8)), expected=mpfr(5))

    def test_mpfr_fraction(self) -> None:
        compare(float(mpfr_fraction(Fraction(7, 8))), expected=0.875)

    def test_path_cover_base(self) -> None:
        expected = log2(2 ** (7 / 8) * 6 ** (1 / 24))
        compare(float(path_cover_log2_base()), expected=pytest.approx(expected, rel=1e-15))


class TestFormatLog2:
    def test_integral(self) -> None:
        compare(format_log2(log2_of(16)), expected='4')

    def test_round_trips(self) -> None:
        value = log2_of(24)
        compare(float(format_log2(value)), expected=float(value))
