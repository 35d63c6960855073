"""The matrices R, r and R^{-1}.

R(n, k) = 2^{(n-k)/2} B_{n,k}(a) where B_{n,k} is the partial Bell polynomial
evaluated at a_{2j+1} = u(j), a_{2j} = 0, i.e. (n!/k!) [t^n] U(t)^k.  This keeps
every intermediate an integer.  R^{-1} is built three ways: forward
substitution (production), the Lagrange coefficient formula, and the
odd-partition expansion; the last two serve as oracles.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Iterator, Mapping

from .errors import DomainError, IntegralityError
from .series import TruncSeries, coeff, series_pow
from .seqcore import U_CACHE, u

IntSeq = Callable[[int], int]


class BellTable:
    """Rows B[n][0..n] of partial Bell polynomials at a_{2j+1} = y(j), a_even = 0."""

    def __init__(self, y: IntSeq):
        self._y = y
        self._a: list[int] = [0]  # a[0] unused
        self.rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def _a_at(self, i: int) -> int:
        while len(self._a) <= i:
            j = len(self._a)
            self._a.append(self._y((j - 1) // 2) if j % 2 else 0)
        return self._a[i]

    def grow(self, n: int) -> None:
        if n < len(self.rows):
            return
        with self._lock:
            rows = self.rows
            for m in range(len(rows), n + 1):
                row = [0] * (m + 1)
                for i in range(1, m + 1, 2):
                    c = comb(m - 1, i - 1) * self._a_at(i)
                    if not c:
                        continue
                    prev = rows[m - i]
                    # prev[j] is nonzero only for j = m - i (mod 2)
                    for j in range((m - i) % 2, m - i + 1, 2):
                        if prev[j]:
                            row[j + 1] += c * prev[j]
                rows.append(row)

    def entry(self, n: int, k: int) -> int:
        self.grow(n)
        return self.rows[n][k] if k <= n else 0


U_BELL = BellTable(lambda j: U_CACHE[j])


def R_entry(n: int, k: int) -> int:
    """R(n, k) = 2^{(n-k)/2} (n!/k!) [t^n] U(t)^k; zero off the checkerboard."""
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if (n - k) % 2:
        return 0
    return 2 ** ((n - k) // 2) * U_BELL.entry(n, k)


def r_entry(n: int, k: int) -> int:
    """r(n, k) = R(2n, 2k)."""
    return R_entry(2 * n, 2 * k)


@dataclass
class TriBlock:
    """Lower-triangular N x N integer block; ``rows[n]`` holds entries k = 0..n."""

    rows: list[list[int]]
    parity_checkerboard: bool = True

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, n: int, k: int) -> int:
        return self.rows[n][k] if k <= n else 0

    def check(self) -> None:
        for n, row in enumerate(self.rows):
            if len(row) != n + 1 or row[n] != 1:
                raise IntegralityError(f"row {n} is not unit lower-triangular", witness=n)
            if self.parity_checkerboard and any(row[k] for k in range(n) if (n - k) % 2):
                raise IntegralityError(f"row {n} breaks the checkerboard pattern", witness=n)

    def matmul(self, other: "TriBlock") -> "TriBlock":
        if self.size != other.size:
            raise DomainError("block sizes differ")
        out = []
        for n in range(self.size):
            a = self.rows[n]
            out.append([sum(a[j] * other.rows[j][k] for j in range(k, n + 1)) for k in range(n + 1)])
        return TriBlock(out, self.parity_checkerboard and other.parity_checkerboard)

    def is_identity(self) -> bool:
        return all(row[k] == (1 if k == n else 0) for n, row in enumerate(self.rows) for k in range(n + 1))


def R_block(N: int) -> TriBlock:
    return TriBlock([[R_entry(n, k) for k in range(n + 1)] for n in range(N)])


def invert_unit_lower(rows: list[list[int]], step: int = 1, modulus: int | None = None) -> list[list[int]]:
    """Inverse of a unit lower-triangular integer matrix by forward substitution.

    With ``step=2`` only entries with n - k even are touched (checkerboard).
    """
    N = len(rows)
    out: list[list[int]] = []
    for n in range(N):
        a = rows[n]
        xrow = [0] * (n + 1)
        xrow[n] = 1
        for k in range(n - step, -1, -step):
            s = 0
            for j in range(k, n, step):
                if a[j]:
                    s += a[j] * out[j][k]
            xrow[k] = -s if modulus is None else (-s) % modulus
        out.append(xrow)
    return out


class _EvenInverse:
    """Rows of r^{-1}(n, k) = R^{-1}(2n, 2k), grown by forward substitution."""

    def __init__(self):
        self.rows: list[list[int]] = []
        self._lock = threading.Lock()

    def grow(self, n: int) -> None:
        if n < len(self.rows):
            return
        with self._lock:
            for m in range(len(self.rows), n + 1):
                r = [r_entry(m, k) for k in range(m + 1)]
                x = [0] * (m + 1)
                x[m] = 1
                for k in range(m - 1, -1, -1):
                    s = 0
                    for j in range(k, m):
                        s += r[j] * self.rows[j][k]
                    x[k] = -s
                self.rows.append(x)

    def row(self, n: int) -> list[int]:
        self.grow(n)
        return self.rows[n]


RINV_EVEN = _EvenInverse()


def Rinv_block(N: int) -> TriBlock:
    """Unit lower-triangular inverse of the N x N block of R.

    The checkerboard splits R into its even- and odd-indexed sub-blocks, which
    are inverted separately.
    """
    if N < 1:
        raise DomainError("block size must be at least 1")
    even = [RINV_EVEN.row(n) for n in range((N + 1) // 2)]
    odd_src = [[R_entry(2 * n + 1, 2 * k + 1) for k in range(n + 1)] for n in range(N // 2)]
    odd = invert_unit_lower(odd_src)
    rows = []
    for n in range(N):
        sub = even if n % 2 == 0 else odd
        h = n // 2
        row = [0] * (n + 1)
        for k in range(h + 1):
            row[2 * k + n % 2] = sub[h][k]
        rows.append(row)
    return TriBlock(rows)


def _u_series_t(y: IntSeq, order: int) -> TruncSeries:
    """U_y(t) = sum y(j) t^{2j+1} / (2j+1)! with offset 1, relative order ``order``."""
    coeffs = []
    for i in range(order + 1):
        coeffs.append(Fraction(y(i // 2), factorial(i + 1)) if i % 2 == 0 else Fraction(0))
    return TruncSeries(tuple(coeffs), 1)


def _rinv_from_negative_power(neg: TruncSeries, n: int, k: int) -> int:
    c = coeff(neg, -k) * 2 ** ((n - k) // 2) * Fraction(factorial(n - 1), factorial(k - 1))
    if c.denominator != 1:
        raise IntegralityError(f"R^-1({n},{k}) = {c} is not an integer", witness=(n, k))
    return c.numerator


@lru_cache(maxsize=None)
def _u_negative_power(n: int) -> TruncSeries:
    return series_pow(_u_series_t(u, max(n - 1, 0)), -n)


def _trivial_rinv(n: int, k: int) -> int | None:
    if not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0:
        return 1 if n == 0 else 0
    if (n - k) % 2:
        return 0
    return None


def Rinv_lagrange(n: int, k: int) -> int:
    """R^{-1}(n,k) = 2^{(n-k)/2} ((n-1)!/(k-1)!) [t^{-k}] U(t)^{-n}."""
    t = _trivial_rinv(n, k)
    if t is not None:
        return t
    return _rinv_from_negative_power(_u_negative_power(n), n, k)


def Rinv_y(n: int, k: int, y: IntSeq) -> int:
    """The same coefficient formula with U replaced by U_y = sum y(j) t^{2j+1}/(2j+1)!."""
    if y(0) != 1:
        raise DomainError("Rinv_y needs y(0) = 1")
    t = _trivial_rinv(n, k)
    if t is not None:
        return t
    neg = series_pow(_u_series_t(y, n - k), -n)
    return _rinv_from_negative_power(neg, n, k)


@dataclass(frozen=True)
class OddTuple:
    """Multiplicities c_i of odd parts i, stored as sorted (i, c_i) pairs with c_i > 0."""

    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for i, c in self.counts:
            if i < 1 or i % 2 == 0 or c <= 0:
                raise DomainError(f"invalid odd-tuple entry c_{i} = {c}")

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> "OddTuple":
        return cls(tuple(sorted((i, c) for i, c in d.items() if c)))

    @property
    def N(self) -> int:
        return sum(i * c for i, c in self.counts)

    @property
    def K(self) -> int:
        return sum(c for _, c in self.counts)

    def get(self, i: int) -> int:
        return dict(self.counts).get(i, 0)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)


def _odd_tuples(weight: int, count: int, largest: int, smallest: int) -> Iterator[list[tuple[int, int]]]:
    if count == 0:
        if weight == 0:
            yield []
        return
    if largest < smallest or weight < count * smallest or weight > count * largest:
        return
    for c in range(min(count, weight // largest), -1, -1):
        for rest in _odd_tuples(weight - c * largest, count - c, largest - 2, smallest):
            yield ([(largest, c)] if c else []) + rest


def enumerate_odd_tuples(N: int, K: int, c1_zero: bool = False) -> list[OddTuple]:
    """All tuples with odd parts, sum c_i = K and sum i c_i = N (c_1 = 0 if asked)."""
    if N < 0 or K < 0:
        raise DomainError("N and K must be non-negative")
    if (N - K) % 2:
        return []
    smallest = 3 if c1_zero else 1
    largest = N if N % 2 else N - 1
    return [OddTuple(tuple(sorted(t))) for t in _odd_tuples(N, K, max(largest, 1), smallest)]


def set_partition_fraction(N: int, tup: OddTuple | Mapping[int, int]) -> int:
    """N! / prod(i!^{c_i} c_i!), the number of set partitions with that block profile."""
    d = tup.as_dict() if isinstance(tup, OddTuple) else {i: c for i, c in tup.items() if c}
    if any(i < 1 or c < 0 for i, c in d.items()) or sum(i * c for i, c in d.items()) != N:
        raise DomainError(f"block profile {d} does not partition {N} elements")
    den = 1
    for i, c in d.items():
        den *= factorial(i) ** c * factorial(c)
    q, r = divmod(factorial(N), den)
    if r:
        raise IntegralityError(f"{N}!/{den} is not an integer")
    return q


def Rinv_partition_sum(n: int, k: int, y: IntSeq = u) -> int:
    """R^{-1}(2n, 2k) as the double sum over m and odd tuples with c_1 = 0."""
    if not 1 <= k <= n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    total = Fraction(0)
    for m in range(n - k + 1):
        for tup in enumerate_odd_tuples(2 * n - 2 * k + m, m, c1_zero=True):
            den = factorial(2 * k - 1)
            prod = 1
            for i, c in tup.counts:
                den *= factorial(i) ** c * factorial(c)
                prod *= y((i - 1) // 2) ** c
            total += Fraction((-1) ** m * 2 ** (n - k) * factorial(2 * n + m - 1) * prod, den)
    if total.denominator != 1:
        raise IntegralityError(f"partition sum for R^-1({2 * n},{2 * k}) = {total}", witness=(n, k))
    return total.numerator
