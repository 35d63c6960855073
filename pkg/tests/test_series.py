from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from romikseq.errors import DomainError, NotInvertibleError, OutOfRangeError, PoleError
from romikseq.series import (
    TruncSeries, coeff, hyp2f1, series_inverse, series_mul, series_pow, series_sqrt, substitute_square,
)
from romikseq.seqcore import pi3, u_generating_series

S = TruncSeries.from_coeffs

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 100)


def unit_series(order=st.integers(0, 12)):
    return order.flatmap(lambda n: st.lists(rationals, min_size=n, max_size=n)).map(lambda cs: S([1] + cs))


def test_hyp2f1_geometric():
    assert hyp2f1(1, 1, 1, Fraction(1, 3), 5) == S([Fraction(1, 3**j) for j in range(6)])


def test_hyp2f1_v_definition_coefficients():
    f = hyp2f1(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4, 12)
    assert list(f.coeffs) == [Fraction(pi3(j), factorial(2 * j)) for j in range(13)]


def test_hyp2f1_zero_argument():
    assert hyp2f1(Fraction(2, 3), 5, 7, 0, 4) == TruncSeries.one(4)


def test_hyp2f1_pole():
    with pytest.raises(PoleError):
        hyp2f1(1, 1, -2, 1, 5)
    hyp2f1(1, 1, -2, 1, 2)  # the pole lies beyond the order


def test_mul_examples():
    assert series_mul(S([1, 1, 0]), S([1, -1, 0])) == S([1, 0, -1])
    f = S([2, Fraction(1, 3), 5])
    assert series_mul(f, TruncSeries.one(2)) == f


def test_mul_takes_minimum_order_and_adds_offsets():
    h = series_mul(S([1, 2, 3, 4], offset=1), S([1, 1], offset=-2))
    assert h.order == 1 and h.offset == -1


def test_u_quotient_times_its_inverse():
    g = u_generating_series(15)
    assert series_mul(g, series_inverse(g)) == TruncSeries.one(15)


def test_inverse_examples():
    assert series_inverse(S([1, -1, 0, 0, 0])) == S([1, 1, 1, 1, 1])
    assert series_inverse(TruncSeries.one(3)) == TruncSeries.one(3)
    f = hyp2f1(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4, 20)
    assert series_mul(f, series_inverse(f)) == TruncSeries.one(20)
    with pytest.raises(NotInvertibleError):
        series_inverse(S([0, 1]))


def test_sqrt_examples():
    assert series_sqrt(TruncSeries.one(4)) == TruncSeries.one(4)
    assert series_sqrt(S([1, 2, 1, 0, 0])) == S([1, 1, 0, 0, 0])
    f = hyp2f1(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4, 5)
    assert series_sqrt(f).coeffs[1] == Fraction(1, 4)
    with pytest.raises(DomainError):
        series_sqrt(S([4, 1]))


def test_pow_examples():
    assert series_pow(S([1, 1, 0]), 2) == S([1, 2, 1])
    assert series_pow(S([3, 1, 4]), 0) == TruncSeries.one(2)
    neg = series_pow(S([1, 0, Fraction(1, 6)], offset=1), -2)
    assert neg.offset == -2 and coeff(neg, -2) == 1 and coeff(neg, 0) == Fraction(-1, 3)
    with pytest.raises(NotInvertibleError):
        series_pow(S([0, 0, 0]), -1)


def test_coeff_examples():
    assert coeff(S([1, 0, 3]), 2) == 3
    U = TruncSeries(u_generating_series(3).coeffs, 0)
    Ut = substitute_square(U)
    Ut = TruncSeries(Ut.coeffs, 1)
    assert coeff(Ut, 1) == 1
    assert coeff(Ut, 2) == 0
    with pytest.raises(OutOfRangeError):
        coeff(S([1, 2]), 2)
    with pytest.raises(OutOfRangeError):
        coeff(S([1, 2], offset=1), 0)


def test_truncate_cannot_extend():
    with pytest.raises(OutOfRangeError):
        S([1, 2]).truncate(3)


@settings(max_examples=100)
@given(unit_series())
def test_inverse_round_trip(f):
    assert series_inverse(series_inverse(f)) == f


@settings(max_examples=60)
@given(unit_series(st.integers(0, 10)))
def test_sqrt_squares_back(f):
    g = series_sqrt(f)
    assert series_mul(g, g) == f


@settings(max_examples=60)
@given(unit_series(st.integers(0, 6)), st.integers(-5, 5), st.integers(-5, 5))
def test_power_laws(f, a, b):
    assert series_mul(series_pow(f, a), series_pow(f, b)) == series_pow(f, a + b)
