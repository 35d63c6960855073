from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from romikseq.errors import DomainError
from romikseq.reports import Status
from romikseq.series import hyp2f1, series_sqrt
from romikseq.seqcore import (
    RatPoly, pi1, pi3, taylor_poly, two_adic_quotient_check, u, u_oracle, v, v_x, v_x_all,
)

U_LIST = [1, 6, 256, 28560, 6071040, 2098483200, 1071889920000, 758870167910400,
          711206089850880000, 852336059876720640000, 1271438437097485762560000]
V_LIST = [1, 1, 47, 7395, 2453425, 1399055625, 1221037941375, 1513229875486875,
          2526879997358510625, 5469272714829657020625, 14892997153152592003359375]


def test_pi_examples():
    assert pi1(0) == 1 and pi3(0) == 1
    assert pi1(1) == 9 and pi3(2) == 25
    assert pi3(3) == 2025


def test_u_list():
    assert [u(n) for n in range(11)] == U_LIST


def test_v_list():
    assert [v(n) for n in range(11)] == V_LIST


def test_negative_index():
    with pytest.raises(DomainError):
        u(-1)
    with pytest.raises(DomainError):
        u_oracle(-1)


def test_u_matches_hypergeometric_quotient():
    assert [u_oracle(n) for n in range(41)] == [u(n) for n in range(41)]


def test_v_matches_square_root_series():
    f = hyp2f1(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4, 40)
    g = series_sqrt(f)
    assert [g.coeffs[n] * 2**n * factorial(2 * n) for n in range(41)] == [v(n) for n in range(41)]


def test_v_x_specialises_to_v():
    assert v_x_all(30, pi3) == [v(n) for n in range(31)]


def test_v_x_examples():
    x = lambda j: [1, 7, 3, 5][j] if j < 4 else 0
    assert v_x(0, x) == 1
    assert v_x(1, x) == 7
    with pytest.raises(DomainError):
        v_x(2, lambda j: 2)


@settings(max_examples=40)
@given(st.lists(st.integers(-10**6, 10**6), min_size=12, max_size=12))
def test_v_x_is_integral(xs):
    x = lambda j: 1 if j == 0 else xs[j - 1]
    vals = v_x_all(12, x)  # raises IntegralityError on a fractional value
    assert vals[0] == 1 and vals[1] == xs[0]


def test_taylor_poly_examples():
    assert taylor_poly(0) == RatPoly((1,))
    assert taylor_poly(1) == RatPoly((0, 16))
    assert taylor_poly(2)(0) == 2
    assert taylor_poly(3)(0) == 0
    assert all(taylor_poly(2 * n + 1)(0) == 0 for n in range(10))


def test_two_adic_quotient():
    rep = two_adic_quotient_check(0, 0, 0, 0, 0, 0, 20)
    assert rep.status is Status.CONSISTENT
    assert two_adic_quotient_check(1, 2, 0, 1, 0, 2, 0).status is Status.CONSISTENT
    with pytest.raises(DomainError):
        two_adic_quotient_check(0, 0, 0, 0, 0, 0, -1)


def test_u_over_factorial_odd_denominator():
    for n in range(41):
        assert Fraction(u(n), factorial(2 * n + 1)).denominator % 2 == 1


@pytest.mark.parametrize("p", (3, 7, 11))
def test_u_small_index_congruences(p):
    h = (p - 1) // 2
    for a in range(1, h + 1):
        for b in range(a):
            assert u(a * p + b) % p == 0
        for b in range(a + 1):
            assert u(a * p + h + b) % p == 0
    if p % 4 == 3:
        assert u(h) % p == 0


@pytest.mark.parametrize("p", (3, 7, 11))
def test_v_small_index_congruences(p):
    h = (p - 1) // 2
    for a in range(1, h + 1):
        for b in range(a):
            assert v(a * p + b) % p == 0
            assert v(a * p + (p + 1) // 2 + b) % p == 0


@pytest.mark.parametrize("p", (5, 13))
def test_u_vanishes_mod_p_power_p_1_mod_4(p):
    for e in range(1, 5):
        for n in range(-(-e * p // 2), 151):
            assert u(n) % p**e == 0
    r = u((p - 1) // 2) % p
    assert r and pow(r, (p - 1) // 2, p) == 1


@pytest.mark.parametrize("p,e", [(3, 2), (3, 3), (7, 2), (7, 3)])
def test_u_vanishes_mod_p_power_p_3_mod_4(p, e):
    for n in range((e - 1) * p * p // 2, 151):
        assert u(n) % p**e == 0


@pytest.mark.parametrize("p,e", [(3, 2), (3, 3), (5, 2), (7, 2)])
def test_v_vanishes_mod_p_power(p, e):
    for n in range(-(-(e - 1) * p * p // 2), 151):
        assert v(n) % p**e == 0


@pytest.mark.parametrize("p,e", [(5, 1), (5, 2), (13, 1)])
def test_v_vanishes_from_ep_over_2(p, e):
    for n in range(-(-e * p // 2), 151):
        assert v(n) % p**e == 0
