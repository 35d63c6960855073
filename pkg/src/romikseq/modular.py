"""Residue pipelines: the recurrences for u, v, R, R^{-1} and d run directly
modulo M, so horizons far beyond the exact guard stay cheap.

The halved sum in the v recurrence needs C(2n, n)/2, which is taken from the
Pascal row modulo 2M.  For M = 2^e the entries r(n, k) = 2^{n-k} * (integer)
vanish once n - k >= e, so only a band of width e around the diagonal of the
Bell table is ever built.
"""
from __future__ import annotations

import os
from math import comb
from typing import Callable, Iterator

import numpy as np

from .errors import DomainError, GuardError
from .seqcore import u as exact_u

IntSeq = Callable[[int], int]

FULL_GUARD = int(os.environ.get("ROMIKSEQ_MODULAR_MAX_N", "1000"))
BANDED_GUARD = int(os.environ.get("ROMIKSEQ_MODULAR_BANDED_MAX_N", "5000"))

_SMALL = 1 << 20  # below this, int64 arithmetic cannot overflow in our sums


def _dtype(M: int):
    return np.int64 if M < _SMALL else object


def is_power_of_two(M: int) -> bool:
    return M >= 2 and M & (M - 1) == 0


def _check_modulus(M: int) -> None:
    if M < 2:
        raise DomainError("modulus must be at least 2")


def pascal_rows(M: int) -> Iterator[np.ndarray]:
    """Yield rows 0, 1, 2, ... of Pascal's triangle reduced modulo M."""
    row = np.ones(1, dtype=_dtype(M))
    while True:
        yield row
        nxt = np.empty(len(row) + 1, dtype=row.dtype)
        nxt[0] = nxt[-1] = 1
        nxt[1:-1] = (row[1:] + row[:-1]) % M
        row = nxt


def _pi_residues(N: int, M: int, offset: int) -> list[int]:
    out = [1 % M]
    for j in range(1, N + 1):
        out.append(out[-1] * (4 * j - offset) ** 2 % M)
    return out


def u_residues(N: int, M: int) -> list[int]:
    """u(0..N) modulo M."""
    _check_modulus(M)
    p1 = _pi_residues(N, M, 1)
    p3 = np.array(_pi_residues(N, M, 3), dtype=_dtype(M))
    out = np.zeros(N + 1, dtype=_dtype(M))
    out[0] = 1 % M
    rows = pascal_rows(M)
    for idx in range(2 * N + 2):
        row = next(rows)
        if idx < 3 or idx % 2 == 0:
            continue
        n = (idx - 1) // 2
        # row = C(2n+1, .); terms m = 0..n-1
        s = (row[1 : 2 * n : 2] * out[:n]) % M
        s = (s * p3[n:0:-1]) % M
        out[n] = (p1[n] - int(s.sum() % M)) % M
    return [int(x) for x in out]


def v_residues(N: int, M: int) -> list[int]:
    """v(0..N) modulo M."""
    _check_modulus(M)
    p3 = _pi_residues(N, M, 3)
    out = np.zeros(N + 1, dtype=_dtype(2 * M))
    out[0] = 1 % M
    if N == 0:
        return [int(out[0])]
    rows = pascal_rows(2 * M)
    next(rows)
    for idx, row in enumerate(rows, start=1):
        if idx % 2:
            continue
        n = idx // 2
        h = (n + 1) // 2  # m = 1..h-1 paired with n-m
        half = 0
        if h > 1:
            t = (row[2 : 2 * h : 2] % M * out[1:h]) % M
            t = (t * out[n - 1 : n - h : -1]) % M
            half = int(t.sum() % M)
        if n % 2 == 0:
            central = int(row[n])
            assert central % 2 == 0
            half += (central // 2) * int(out[n // 2]) ** 2
        out[n] = (pow(2, n - 1, M) * p3[n] - half) % M
        if n >= N:
            break
    return [int(x) for x in out]


def bell_residues(size: int, a: list[int], M: int) -> np.ndarray:
    """B[n, k] modulo M for n, k < size; ``a[i]`` is the i-th argument (a[0] unused)."""
    dt = _dtype(M)
    B = np.zeros((size, size), dtype=dt)
    B[0, 0] = 1 % M
    rows = pascal_rows(M)
    prev_row = next(rows)  # C(n-1, .) lags one step behind n
    for n in range(1, size):
        acc = np.zeros(size, dtype=dt)
        for i in range(1, n + 1, 2):
            c = int(prev_row[i - 1]) * a[i] % M
            if c:
                acc[1:] += c * B[n - i, :-1]
        B[n] = acc % M
        prev_row = next(rows)
    return B


def _odd_args(y: IntSeq, size: int, M: int) -> list[int]:
    return [0] + [y((i - 1) // 2) % M if i % 2 else 0 for i in range(1, size + 1)]


def R_residues(size: int, M: int, y: IntSeq) -> np.ndarray:
    """R_y(n, k) modulo M for n, k < size."""
    _check_modulus(M)
    B = bell_residues(size, _odd_args(y, size, M), M)
    R = np.zeros_like(B)
    for n in range(size):
        for k in range(n % 2, n + 1, 2):
            R[n, k] = pow(2, (n - k) // 2, M) * int(B[n, k]) % M
    return R


def invert_unit_lower_residues(R: np.ndarray, M: int) -> np.ndarray:
    """Inverse of a unit lower-triangular matrix modulo M (forward substitution)."""
    N = R.shape[0]
    X = np.zeros_like(R)
    for n in range(N):
        X[n, n] = 1 % M
        if n:
            X[n, :n] = (-(R[n, :n] @ X[:n, :n])) % M
    return X


def Rinv_residues(size: int, M: int, y: IntSeq) -> np.ndarray:
    """R_y^{-1}(n, k) modulo M for n, k < size."""
    return invert_unit_lower_residues(R_residues(size, M, y), M)


def _d_full(N: int, M: int, u_res: list[int], v_res: list[int]) -> list[int]:
    size = 2 * N + 1
    B = bell_residues(size, _odd_args(lambda j: u_res[j], size, M), M)
    out = [1 % M]
    for n in range(1, N + 1):
        s = 0
        for k in range(n):
            b = int(B[2 * n, 2 * k])
            if b and out[k]:
                s += pow(2, n - k, M) * b * out[k]
        out.append((v_res[n] - s) % M)
    return out


def _d_banded(N: int, M: int, v_res: list[int]) -> list[int]:
    e = M.bit_length() - 1
    W = 2 * e - 1  # band offsets D = n - k in 0..2e-2
    a = [0] + [exact_u((i - 1) // 2) % M if i % 2 else 0 for i in range(1, W + 1)]
    band = [[0] * W for _ in range(2 * N + 1)]  # band[n][D] = B_{n, n-D}
    band[0][0] = 1 % M
    for n in range(1, 2 * N + 1):
        row = band[n]
        for D in range(0, min(W, n), 2):
            s = 0
            for i in range(1, D + 2, 2):
                if a[i]:
                    s += comb(n - 1, i - 1) * a[i] * band[n - i][D + 1 - i]
            row[D] = s % M
    out = [1 % M]
    for n in range(1, N + 1):
        s = 0
        for j in range(1, min(n, e - 1) + 1):
            s += pow(2, j, M) * band[2 * n][2 * j] * out[n - j]
        out.append((v_res[n] - s) % M)
    return out


def d_residues(N: int, M: int) -> list[int]:
    """d(0..N) modulo M via d(n) = v(n) - sum r(n,k) d(k) on residues."""
    _check_modulus(M)
    v_res = v_residues(N, M)
    if is_power_of_two(M):
        return _d_banded(N, M, v_res)
    return _d_full(N, M, u_residues(N, M), v_res)


def check_modular_guard(N: int, M: int, family: str, guard: int | None = None) -> None:
    if guard is None:
        banded = family in ("u", "v") or (family == "d" and is_power_of_two(M))
        guard = BANDED_GUARD if banded else FULL_GUARD
    if N > guard:
        raise GuardError(f"horizon {N} for {family} mod {M} exceeds the guard {guard}")


def residues(family: str, N: int, M: int, guard: int | None = None) -> list[int]:
    """Residues of ``family`` in {u, v, d} for indices 0..N."""
    check_modular_guard(N, M, family, guard)
    if family == "u":
        return u_residues(N, M)
    if family == "v":
        return v_residues(N, M)
    if family == "d":
        return d_residues(N, M)
    raise DomainError(f"unknown sequence {family!r}")
