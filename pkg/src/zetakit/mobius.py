"""Mobius function tables, Mertens sums, and weighted Dirichlet partial sums.

The sieve marks each prime's multiples with a sign flip and kills every
index with a squared prime factor, giving mu(1..N) as one int8 array.
Partial sums sum_{k<=K} mu(k) log^n(k) k^(-rho) are accumulated in
increasing k with compensation so checkpointed values are faithful, not
merely convergent.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath as mp
import numpy as np
from mpmath import mpc, mpf

from .errors import LimitTooLargeError, RangeError
from .precision import PrecisionContext, cpow
from .series import KahanComplexSum

SIEVE_CAP = 10**8


@dataclass
class MobiusTable:
    limit: int
    values: np.ndarray  # values[k-1] = mu(k), dtype int8
    _mertens: np.ndarray | None = field(default=None, repr=False)

    def mobius(self, k: int) -> int:
        if not 1 <= k <= self.limit:
            raise RangeError(f"mobius index {k} outside table limit {self.limit}")
        return int(self.values[k - 1])

    def mertens_prefix(self) -> np.ndarray:
        if self._mertens is None:
            self._mertens = np.cumsum(self.values, dtype=np.int64)
        return self._mertens


def sieve_mobius(N: int) -> MobiusTable:
    """MobiusTable for 1..N.

    Boolean composite sieve finds the primes; each prime p contributes a
    sign flip on its multiples and zeroes multiples of p^2.
    """
    if N < 1:
        raise RangeError("sieve limit must be >= 1")
    if N > SIEVE_CAP:
        raise LimitTooLargeError(f"sieve limit {N} exceeds cap {SIEVE_CAP}")
    comp = np.zeros(N + 1, dtype=bool)
    comp[:2] = True
    p = 2
    while p * p <= N:
        if not comp[p]:
            comp[p * p :: p] = True
        p += 1
    mu = np.ones(N + 1, dtype=np.int8)
    mu[0] = 0
    for p in np.flatnonzero(~comp):
        p = int(p)
        mu[p::p] *= -1
        pp = p * p
        if pp <= N:
            mu[pp::pp] = 0
    return MobiusTable(limit=N, values=mu[1:])


def mertens(x: int, table: MobiusTable) -> int:
    """M(x) = sum_{n <= x} mu(n)."""
    if not 1 <= x <= table.limit:
        raise RangeError(f"mertens argument {x} outside table limit {table.limit}")
    return int(table.mertens_prefix()[x - 1])


def dirichlet_partial(rho, n: int, K: int, table: MobiusTable, ctx: PrecisionContext):
    """sum_{k <= K} mu(k) log^n(k) k^(-rho), compensated, increasing k."""
    if n < 0:
        raise RangeError("log power n must be >= 0")
    if not 1 <= K <= table.limit:
        raise RangeError(f"truncation {K} outside table limit {table.limit}")
    mu = table.values
    with ctx.wp():
        rho = mpc(rho)
        acc = KahanComplexSum()
        if n == 0:
            acc.add(mpf(1))  # k = 1
        for k in range(2, K + 1):
            m = mu[k - 1]
            if m == 0:
                continue
            kp = cpow(k, rho, ctx)
            if n:
                kp *= mp.ln(k) ** n
            acc.add(kp if m == 1 else -kp)
        return acc.total
