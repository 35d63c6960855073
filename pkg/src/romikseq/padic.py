"""p-adic valuations, base-p digit sums and carry counts.

Everything here is integer-only; no logarithms are taken anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import DomainError, UndefinedValuationError


@lru_cache(maxsize=1024)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for q in range(3, isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")


def vp(x: int | Fraction, p: int) -> int:
    """Exponent of ``p`` in ``x``.

    Rationals are handled as vp(numerator) - vp(denominator) of the reduced
    fraction, so the result may be negative.
    """
    _check_prime(p)
    if isinstance(x, Fraction):
        if x == 0:
            raise UndefinedValuationError("valuation of 0 is undefined")
        return vp(x.numerator, p) - vp(x.denominator, p)
    x = int(x)
    if x == 0:
        raise UndefinedValuationError("valuation of 0 is undefined")
    x = abs(x)
    e = 0
    # strip big powers first so huge inputs need few divisions
    pk, k = p, 1
    while x % pk == 0:
        x //= pk
        e += k
        pk, k = pk * pk, 2 * k
    while x % p == 0:
        x //= p
        e += 1
    return e


def digit_sum(N: int, p: int) -> int:
    """Sum of the base-``p`` digits of ``N``."""
    if N < 0:
        raise DomainError("digit_sum needs N >= 0")
    s = 0
    while N:
        N, r = divmod(N, p)
        s += r
    return s


def vp_factorial(N: int, p: int) -> int:
    """v_p(N!) by Legendre's digit-sum formula."""
    _check_prime(p)
    if N < 0:
        raise DomainError("vp_factorial needs N >= 0")
    return (N - digit_sum(N, p)) // (p - 1)


def carries_add(A: int, B: int, p: int) -> int:
    """Number of carries when adding ``A`` and ``B`` in base ``p``."""
    if A < 0 or B < 0:
        raise DomainError("carries_add needs non-negative summands")
    carries = carry = 0
    while A or B or carry:
        A, a = divmod(A, p)
        B, b = divmod(B, p)
        carry = 1 if a + b + carry >= p else 0
        carries += carry
    return carries


def vp_binomial(N: int, K: int, p: int) -> int:
    """v_p(C(N, K)) as the carry count of K + (N - K) (Kummer)."""
    _check_prime(p)
    if K < 0 or K > N:
        raise DomainError(f"need 0 <= K <= N, got N={N}, K={K}")
    return carries_add(K, N - K, p)
