import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from romikseq.errors import DomainError, UndefinedValuationError
from romikseq.padic import carries_add, digit_sum, is_prime, vp, vp_binomial, vp_factorial
from romikseq.seqcore import pi1, pi3

PRIMES = (2, 3, 5, 7, 13)


def naive_vp(x, p):
    x, e = abs(x), 0
    while x % p == 0:
        x //= p
        e += 1
    return e


def test_vp_examples():
    assert vp(24, 2) == 3
    assert vp(-26199, 3) == 2
    assert vp(7, 5) == 0


def test_vp_errors():
    with pytest.raises(UndefinedValuationError):
        vp(0, 3)
    with pytest.raises(DomainError):
        vp(12, 4)


def test_vp_of_fraction():
    from fractions import Fraction

    assert vp(Fraction(9, 4), 2) == -2
    assert vp(Fraction(9, 4), 3) == 2


def test_digit_sum_examples():
    assert digit_sum(10, 3) == 2
    assert digit_sum(0, 7) == 0
    for p in PRIMES:
        for k in range(11):
            assert digit_sum(p**k, p) == 1


def test_vp_factorial_examples():
    assert vp_factorial(4, 2) == 3
    assert vp_factorial(10, 3) == 4
    assert vp_factorial(0, 5) == 0


def test_carries_examples():
    assert carries_add(2, 2, 2) == 1
    assert carries_add(3, 3, 3) == 0
    assert carries_add(12345, 0, 7) == 0


def test_vp_binomial_examples():
    assert vp_binomial(4, 2, 2) == 1
    assert vp_binomial(9, 0, 3) == 0
    assert vp_binomial(13, 6, 13) == 1
    with pytest.raises(DomainError):
        vp_binomial(3, 4, 2)
    with pytest.raises(DomainError):
        vp_binomial(3, -1, 2)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p", PRIMES)
def test_legendre_matches_factorisation(p):
    f = 1
    for N in range(0, 2001):
        if N:
            f *= N
        assert vp_factorial(N, p) == naive_vp(f, p)


@pytest.mark.parametrize("p", PRIMES)
def test_kummer_matches_binomials(p):
    for N in range(301):
        for K in range(N + 1):
            assert vp_binomial(N, K, p) == naive_vp(comb(N, K), p)


def test_carries_digit_sum_identity_random_pairs():
    rng = random.Random(4)
    for _ in range(10_000):
        p = rng.choice(PRIMES)
        A, B = rng.randrange(10**6), rng.randrange(10**6)
        assert (digit_sum(A, p) + digit_sum(B, p) - digit_sum(A + B, p)) // (p - 1) == carries_add(A, B, p)


@given(st.integers(1, 10**30), st.sampled_from(PRIMES))
def test_vp_matches_naive(x, p):
    assert vp(x, p) == naive_vp(x, p)


@settings(max_examples=200)
@given(st.integers(0, 400), st.integers(0, 400), st.sampled_from(PRIMES))
def test_vp_of_product_is_additive(a, b, p):
    assert vp_factorial(a + b, p) - vp_factorial(a, p) - vp_factorial(b, p) == carries_add(a, b, p)


@pytest.mark.parametrize("p", (3, 5, 7, 11, 13))
def test_pi_products_divisibility(p):
    for N in range(501):
        assert vp(pi1(N), p) >= 2 * (N // p)
        assert vp(pi3(N), p) >= 2 * (N // p)
        if p % 4 == 1:
            assert vp(pi3(N), p) >= 2 * ((4 * N + 3 * (p - 1)) // (4 * p))
