"""Exact truncated power series over the rationals.

A :class:`TruncSeries` stores the coefficients of exponents
``offset, offset + 1, ..., offset + order``; everything beyond is unknown and
never read.  Negative offsets give the Laurent series needed for negative
powers of ``U(t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, NotInvertibleError, OutOfRangeError, PoleError


def _rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TruncSeries:
    coeffs: tuple[Fraction, ...]
    offset: int = 0

    def __post_init__(self):
        if not self.coeffs:
            raise DomainError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_rat(c) for c in self.coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, offset: int = 0) -> "TruncSeries":
        return cls(tuple(_rat(c) for c in coeffs), offset)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls((Fraction(1),) + (Fraction(0),) * order)

    @property
    def order(self) -> int:
        """Relative truncation order: the last known exponent is offset + order."""
        return len(self.coeffs) - 1

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise OutOfRangeError(f"cannot extend order {self.order} to {order}")
        return TruncSeries(self.coeffs[: order + 1], self.offset)

    def normalized(self) -> "TruncSeries":
        """Move leading zero coefficients into the offset."""
        i = 0
        while i < self.order and self.coeffs[i] == 0:
            i += 1
        if self.coeffs[i] == 0:
            raise NotInvertibleError("series is zero through its truncation order")
        return TruncSeries(self.coeffs[i:], self.offset + i)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        if self.offset != other.offset:
            raise DomainError("adding series with different offsets is not supported")
        n = min(self.order, other.order) + 1
        return TruncSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), self.offset)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncSeries":
        c = _rat(c)
        return TruncSeries(tuple(c * a for a in self.coeffs), self.offset)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        return series_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.offset == other.offset and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.offset))


def hyp2f1(a, b, c, arg_scale, order: int) -> TruncSeries:
    """Coefficients of 2F1[a, b; c; arg_scale * s] through s**order."""
    a, b, c, z = _rat(a), _rat(b), _rat(c), _rat(arg_scale)
    if order < 0:
        raise DomainError("order must be non-negative")
    if c.denominator == 1 and c <= 0 and -c < order:
        raise PoleError(f"lower parameter {c} hits a pole before order {order}")
    out = [Fraction(1)]
    t = Fraction(1)
    for j in range(order):
        t = t * (a + j) * (b + j) * z / ((c + j) * (1 + j))
        out.append(t)
    return TruncSeries(tuple(out))


def series_mul(f: TruncSeries, g: TruncSeries) -> TruncSeries:
    """Cauchy product; the relative order is the smaller of the two."""
    n = min(f.order, g.order) + 1
    fc, gc = f.coeffs, g.coeffs
    out = []
    for i in range(n):
        s = Fraction(0)
        for j in range(i + 1):
            if fc[j] and gc[i - j]:
                s += fc[j] * gc[i - j]
        out.append(s)
    return TruncSeries(tuple(out), f.offset + g.offset)


def series_inverse(f: TruncSeries) -> TruncSeries:
    """Multiplicative inverse; needs a nonzero first stored coefficient."""
    c0 = f.coeffs[0]
    if c0 == 0:
        raise NotInvertibleError("constant term is zero")
    inv0 = 1 / c0
    out = [inv0]
    fc = f.coeffs
    for i in range(1, f.order + 1):
        s = Fraction(0)
        for j in range(1, i + 1):
            if fc[j]:
                s += fc[j] * out[i - j]
        out.append(-s * inv0)
    return TruncSeries(tuple(out), -f.offset)


def series_sqrt(f: TruncSeries) -> TruncSeries:
    """Square root with constant term 1 via Newton steps g <- (g + f/g) / 2.

    Precision doubles each step, so the work is a few multiplications at the
    full order.
    """
    if f.offset != 0 or f.coeffs[0] != 1:
        raise DomainError("series_sqrt needs offset 0 and constant term 1")
    target = f.order
    g = TruncSeries((Fraction(1),))
    prec = 0
    while prec < target:
        prec = min(2 * prec + 1, target)
        g = TruncSeries(g.coeffs + (Fraction(0),) * (prec - g.order))
        q = series_mul(f.truncate(prec), series_inverse(g))
        g = (g + q).scale(Fraction(1, 2))
    return g


def series_pow(f: TruncSeries, k: int) -> TruncSeries:
    """Exact integer power by binary powering; negative ``k`` inverts first.

    For negative powers the leading monomial is moved into the offset, so
    ``U(t)**-2`` with ``U = t + ...`` has offset -2.
    """
    if k == 0:
        return TruncSeries.one(f.order)
    if k < 0:
        base = series_inverse(f.normalized())
        k = -k
    else:
        base = f
    result = None
    while k:
        if k & 1:
            result = base if result is None else series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def coeff(f: TruncSeries, exponent: int) -> Fraction:
    """Coefficient of t**exponent; raises outside the retained window."""
    i = exponent - f.offset
    if i < 0 or i > f.order:
        raise OutOfRangeError(
            f"exponent {exponent} outside retained window [{f.offset}, {f.offset + f.order}]"
        )
    return f.coeffs[i]


def substitute_square(f: TruncSeries) -> TruncSeries:
    """Return f(t**2) as a series in t, keeping the full known window."""
    if f.offset != 0:
        raise DomainError("substitute_square expects an ordinary power series")
    out = []
    for c in f.coeffs:
        out.extend((c, Fraction(0)))
    out.pop()
    return TruncSeries(tuple(out))
