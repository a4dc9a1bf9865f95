from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from transcert.errors import NonPositiveBase, NonPositiveInput
from transcert.exactmath import (
    Interval,
    IntervalComplex,
    Ordering,
    Precision,
    format_directed,
    iv_compare,
    iv_exp2,
    iv_from_rat,
    iv_log2,
    iv_pow,
    log2_power,
)

mpmath.mp.prec = 300


def mp_of(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def encloses(iv: Interval, x) -> bool:
    return mp_of(iv.lo) <= x <= mp_of(iv.hi)


# --- construction -----------------------------------------------------------

def test_one_third_at_8_bits():
    iv = iv_from_rat(Fraction(1, 3), Precision(8, 8))
    assert iv.contains(Fraction(1, 3))
    assert iv.width <= Fraction(1, 2 ** 7)


def test_exact_integer_is_a_point():
    iv = iv_from_rat(2, Precision())
    assert iv.lo == iv.hi == 2


def test_rational_stand_in_for_phi():
    iv = iv_from_rat(Fraction(809, 500), Precision())
    assert iv.contains(Fraction(1618, 1000))


def test_precision_validation_and_ladder():
    with pytest.raises(ValueError):
        Precision(4)
    with pytest.raises(ValueError):
        Precision(512, 256)
    assert list(Precision(256, 2048).ladder()) == [256, 512, 1024, 2048]
    assert list(Precision(256, 600).ladder()) == [256, 512, 600]


# --- log2 / exp2 / pow --------------------------------------------------------

def test_log2_of_power_of_two():
    iv = iv_log2(Interval.exact(8))
    assert iv.contains(3)
    assert iv.width <= Fraction(2, 2 ** 256)


def test_log2_of_one_contains_zero():
    assert iv_log2(Interval.exact(1)).contains(0)


def test_log2_34_against_mpmath():
    assert encloses(iv_log2(Interval.exact(34)), mpmath.log(34, 2))


def test_log2_rejects_nonpositive():
    with pytest.raises(NonPositiveInput):
        iv_log2(Interval.span(-1, 2))


def test_pow_examples():
    assert iv_pow(Interval.exact(4), Fraction(1, 2)).contains(2)
    assert iv_pow(Interval.exact(34), 1).contains(34)
    assert encloses(iv_pow(Interval.exact(34), Fraction(1, 2)), mpmath.sqrt(34))
    with pytest.raises(NonPositiveBase):
        iv_pow(Interval.exact(0), Fraction(1, 2))


def test_log2_power_boundary():
    assert log2_power(Interval.exact(0), Fraction(1, 2)).contains(0)
    assert log2_power(Interval.exact(16), Fraction(1, 2)).contains(4)
    with pytest.raises(NonPositiveInput):
        log2_power(Interval.exact(-1), Fraction(1, 2))


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=Fraction(10 ** 6)))
def test_log2_encloses_mpmath(q):
    assert encloses(iv_log2(Interval.point(q)), mpmath.log(mp_of(q), 2))


@settings(max_examples=60, deadline=None)
@given(st.fractions(min_value=-50, max_value=50))
def test_exp2_encloses_mpmath(q):
    assert encloses(iv_exp2(Interval.point(q)), mpmath.power(2, mp_of(q)))


# --- arithmetic soundness -----------------------------------------------------

small = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)


@settings(max_examples=100, deadline=None)
@given(small, small, small, small)
def test_arithmetic_contains_exact_results(a, b, c, d):
    x, y = Interval.span(min(a, b), max(a, b), 64), Interval.span(min(c, d), max(c, d), 64)
    for u in (a, b):
        for v in (c, d):
            assert (x + y).contains(u + v)
            assert (x - y).contains(u - v)
            assert (x * y).contains(u * v)
            if not y.contains_zero():
                assert (x / y).contains(u / v)


def test_compare():
    assert iv_compare(Interval.span(1, 2), Interval.span(3, 4)) is Ordering.LESS
    assert iv_compare(Interval.span(1, 3), Interval.span(2, 4)) is Ordering.UNDECIDED
    phi = (1 + Interval.exact(5, 128).sqrt()) / 2
    assert iv_compare(phi, Interval.point(Fraction(1618, 1000), 128)) is Ordering.GREATER


def test_complex_box_multiplication():
    i = IntervalComplex.exact(0, 1)
    sq = i * i
    assert sq.re.contains(-1) and sq.im.contains(0)
    assert abs(IntervalComplex.exact(3, 4)).contains(5)


def test_format_directed_rounds_outward():
    third = Fraction(1, 3)
    assert format_directed(third, 5) == "3.3333e-1"
    assert format_directed(third, 5, upper=True) == "3.3334e-1"
    assert format_directed(-third, 5) == "-3.3334e-1"
