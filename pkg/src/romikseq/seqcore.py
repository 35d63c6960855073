"""The integer sequences u(n), v(n), the products Pi_1/Pi_3, v_x(n) and the
Taylor polynomials p_n(t).

Exact values live in fill-once caches.  A cache only grows; once an index is
filled it is never rewritten, so readers can share it freely while fills are
serialised by a per-cache lock.
"""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .errors import DomainError, InconsistencyError, IntegralityError
from .reports import CheckReport, Status
from .series import TruncSeries, coeff, hyp2f1, series_inverse, series_mul, series_sqrt

IntSeq = Callable[[int], int]


class SeqCache:
    """Memoised table of one integer sequence with a monotone fill frontier.

    ``step(values, n)`` must return the n-th value from ``values[:n]``.
    """

    def __init__(self, name: str, step: Callable[[list, int], int]):
        self.name = name
        self._step = step
        self._values: list[int] = []
        self._lock = threading.Lock()

    @property
    def frontier(self) -> int:
        return len(self._values) - 1

    def fill(self, n: int) -> None:
        if n <= self.frontier:
            return
        with self._lock:
            vals = self._values
            for i in range(len(vals), n + 1):
                vals.append(self._step(vals, i))

    def __getitem__(self, n: int) -> int:
        if n < 0:
            raise DomainError(f"{self.name}({n}) is undefined for negative index")
        self.fill(n)
        return self._values[n]

    def upto(self, n: int) -> list[int]:
        """Values 0..n inclusive (a copy)."""
        self.fill(n)
        return self._values[: n + 1]


def _pi1_step(vals, n):
    return 1 if n == 0 else vals[n - 1] * (4 * n - 1) ** 2


def _pi3_step(vals, n):
    return 1 if n == 0 else vals[n - 1] * (4 * n - 3) ** 2


PI1 = SeqCache("pi1", _pi1_step)
PI3 = SeqCache("pi3", _pi3_step)


def pi1(N: int) -> int:
    """prod_{j=1}^{N} (4j-1)^2."""
    return PI1[N]


def pi3(N: int) -> int:
    """prod_{j=1}^{N} (4j-3)^2."""
    return PI3[N]


def _u_step(vals, n):
    if n == 0:
        return 1
    s = 0
    for m in range(n):
        s += comb(2 * n + 1, 2 * m + 1) * PI3[n - m] * vals[m]
    return PI1[n] - s


def _v_step(vals, n):
    if n == 0:
        return 1
    # half of sum_{m=1}^{n-1} C(2n,2m) v(m) v(n-m): pair m with n-m, middle term once
    half = 0
    for m in range(1, (n + 1) // 2):
        half += comb(2 * n, 2 * m) * vals[m] * vals[n - m]
    if n % 2 == 0:
        central = comb(2 * n, n)
        if central % 2:
            raise InconsistencyError(f"odd central binomial C({2 * n},{n}) in v recurrence")
        half += central // 2 * vals[n // 2] ** 2
    return 2 ** (n - 1) * PI3[n] - half


U_CACHE = SeqCache("u", _u_step)
V_CACHE = SeqCache("v", _v_step)


def u(n: int) -> int:
    """u(n) from the Pi-recurrence with memoised smaller values."""
    return U_CACHE[n]


def v(n: int) -> int:
    """v(n) from its halved-convolution recurrence, in integers throughout."""
    return V_CACHE[n]


def u_generating_series(order: int) -> TruncSeries:
    """U(t)/t = 2F1[3/4,3/4;3/2;4s] / 2F1[1/4,1/4;1/2;4s] in s = t^2, through s^order."""
    num = hyp2f1(Fraction(3, 4), Fraction(3, 4), Fraction(3, 2), 4, order)
    den = hyp2f1(Fraction(1, 4), Fraction(1, 4), Fraction(1, 2), 4, order)
    return series_mul(num, series_inverse(den))


def u_oracle(n: int) -> int:
    """u(n) read off the hypergeometric quotient; independent of the recurrence."""
    if n < 0:
        raise DomainError("n must be non-negative")
    c = coeff(u_generating_series(n), n) * factorial(2 * n + 1)
    if c.denominator != 1:
        raise IntegralityError(f"u_oracle({n}) = {c} is not an integer", witness=n)
    return c.numerator


def v_x_all(N: int, x: IntSeq) -> list[int]:
    """v_x(0..N) via the series square root of 1 + sum x(j) s^j / (2j)!."""
    if x(0) != 1:
        raise DomainError("v_x needs x(0) = 1")
    f = TruncSeries.from_coeffs([Fraction(x(j), factorial(2 * j)) for j in range(N + 1)])
    g = series_sqrt(f)
    out = []
    for n in range(N + 1):
        c = g.coeffs[n] * 2**n * factorial(2 * n)
        if c.denominator != 1:
            raise IntegralityError(f"v_x({n}) = {c} is not an integer", witness=n)
        out.append(c.numerator)
    return out


def v_x(n: int, x: IntSeq) -> int:
    """2^n (2n)! [s^n] (1 + sum_{j>=1} x(j) s^j / (2j)!)^(1/2)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return v_x_all(n, x)[n]


@dataclass(frozen=True)
class RatPoly:
    """Polynomial with rational coefficients in ascending degree, trailing zeros trimmed."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        c = [Fraction(a) for a in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def derivative(self) -> "RatPoly":
        return RatPoly(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def __add__(self, other: "RatPoly") -> "RatPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPoly(tuple(x + y for x, y in zip(a, b)))

    def __mul__(self, other: "RatPoly") -> "RatPoly":
        if not self.coeffs or not other.coeffs:
            return RatPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPoly(tuple(out))


def _taylor_step(vals, n):
    # vals holds p_0..p_{n-1}; build p_n from p_{n-1}, p_{n-2}
    if n == 0:
        return RatPoly((Fraction(1),))
    m = n - 1
    pm = vals[m]
    prev = vals[m - 1] if m >= 1 else RatPoly()
    a = RatPoly((Fraction(1, 6), 0, Fraction(-96))) * pm.derivative()
    b = RatPoly((0, Fraction(16 * (4 * m + 1)))) * pm
    c = RatPoly((Fraction(4, 3), 0, Fraction(256))) * prev
    return a + b + c * RatPoly((-Fraction(m) * (m - Fraction(1, 2)),))


TAYLOR_CACHE = SeqCache("taylor_poly", _taylor_step)


def taylor_poly(n: int) -> RatPoly:
    """p_n(t) from the three-term polynomial recurrence, p_0 = 1."""
    return TAYLOR_CACHE[n]


def two_adic_quotient_check(a: int, b: int, c: int, d: int, e: int, f: int, order: int) -> CheckReport:
    """Are all coefficients of 2F1[3/4+a,3/4+b;3/2+c;4t] / 2F1[1/4+d,1/4+e;1/2+f;4t]
    2-adically integral through ``order``?"""
    if order < 0:
        raise DomainError("order must be non-negative")
    t0 = time.perf_counter()
    q = Fraction(1, 4)
    num = hyp2f1(3 * q + a, 3 * q + b, Fraction(3, 2) + c, 4, order)
    den = hyp2f1(q + d, q + e, Fraction(1, 2) + f, 4, order)
    quot = series_mul(num, series_inverse(den))
    bad = next((i for i, x in enumerate(quot.coeffs) if x.denominator % 2 == 0), None)
    params = {"a": a, "b": b, "c": c, "d": d, "e": e, "f": f, "order": order}
    return CheckReport(
        check_id="two-adic-quotient",
        params=params,
        status=Status.CONSISTENT if bad is None else Status.COUNTEREXAMPLE,
        witness=None if bad is None else {"index": bad, "value": str(quot.coeffs[bad])},
        elapsed_ms=int((time.perf_counter() - t0) * 1000),
    )
