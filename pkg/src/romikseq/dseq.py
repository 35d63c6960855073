"""Romik's sequence d(n) by three independent pipelines.

* recursive: d(n) = v(n) - sum_{k<n} r(n,k) d(k)   (production path)
* inverse:   d(n) = sum_k R^{-1}(2n,2k) v(k)
* poly:      d(n) = 2^{-n} p_{2n}(0)
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, GuardError, InconsistencyError, IntegralityError
from .rmatrix import RINV_EVEN, r_entry
from .seqcore import SeqCache, taylor_poly, v

DEFAULT_EXACT_GUARD = int(os.environ.get("ROMIKSEQ_MAX_N", "400"))


def check_guard(n: int, guard: int | None = DEFAULT_EXACT_GUARD) -> None:
    if guard is not None and n > guard:
        raise GuardError(f"index {n} exceeds the exact-computation guard {guard}")


def _d_step(vals, n):
    if n == 0:
        return 1
    s = 0
    for k in range(n):
        s += r_entry(n, k) * vals[k]
    return v(n) - s


D_CACHE = SeqCache("d", _d_step)


def d_recursive(n: int) -> int:
    if n < 0:
        raise DomainError("n must be non-negative")
    return D_CACHE[n]


def d_via_inverse(n: int) -> int:
    if n < 0:
        raise DomainError("n must be non-negative")
    row = RINV_EVEN.row(n)
    return sum(row[k] * v(k) for k in range(n + 1))


def d_via_poly(n: int) -> int:
    if n < 0:
        raise DomainError("n must be non-negative")
    x = taylor_poly(2 * n)(0) / Fraction(2**n)
    if x.denominator != 1:
        raise IntegralityError(f"2^-{n} p_{2 * n}(0) = {x} is not an integer", witness=n)
    return x.numerator


PIPELINES = {"recursive": d_recursive, "inverse": d_via_inverse, "poly": d_via_poly}


@dataclass(frozen=True)
class DConsensus:
    n: int
    value: int
    pipelines_agreed: frozenset[str]


def d(n: int, pipelines: tuple[str, ...] = ("recursive", "inverse"), guard: int | None = DEFAULT_EXACT_GUARD) -> DConsensus:
    """d(n) agreed on by the requested pipelines (at least two)."""
    check_guard(n, guard)
    if len(set(pipelines)) < 2:
        raise DomainError("consensus needs at least two distinct pipelines")
    values = {name: PIPELINES[name](n) for name in pipelines}
    if len(set(values.values())) != 1:
        raise InconsistencyError(f"pipelines disagree at n={n}: {values}")
    return DConsensus(n, next(iter(values.values())), frozenset(values))


def d_values(N: int, guard: int | None = DEFAULT_EXACT_GUARD) -> list[int]:
    """d(0..N) from the production (recursive) pipeline."""
    check_guard(N, guard)
    return D_CACHE.upto(N)
