"""Stieltjes constants and the Euler constant.

gamma_n comes from Cauchy-ring Taylor coefficients of the regularized
function g(s) = zeta(s) - 1/(s-1) at s = 1, under the normalization
zeta(s) = 1/(s-1) + sum (-1)^n gamma_n (s-1)^n / n!.  The slowly
convergent telescoping series sum (1/k - log(1+1/k)) is kept alongside
as the calibration object: its partial sums increase monotonically to
the Euler constant with an O(1/K) tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import PrecisionEscalationError, RangeError
from .precision import PrecisionContext
from .series import KahanSum, PartialSumSeries, build_partial_series
from .zeta import zeta

N_MAX = 20

_ring_cache: dict[tuple[int, int], list] = {}


def _regularized_ring(nodes: int, ctx: PrecisionContext) -> list:
    """Samples of zeta(s) - 1/(s-1) on |s-1| = 1/2, memoized per precision.

    ctx carries the extraction guard digits so the zeta evaluations are
    as sharp as the widened working precision."""
    key = (nodes, mp.mp.prec)
    hit = _ring_cache.get(key)
    if hit is not None:
        return hit
    samples = []
    for j in range(nodes):
        w = mp.exp(mpc(0, 2) * mp.pi * j / nodes) / 2
        samples.append(zeta(1 + w, ctx).value - 1 / w)
    if len(_ring_cache) < 64:
        _ring_cache[key] = samples
    return samples


def _taylor_at_one(count: int, ctx: PrecisionContext) -> list:
    """First ``count`` Taylor coefficients of the regularized zeta at s=1."""
    nodes = max(64, 8 * ctx.target_digits)
    if count > nodes // 2:
        raise RangeError("coefficient count too large for node budget")
    guard = int(math.ceil(count * math.log10(2))) + 10
    inner = PrecisionContext.from_digits(ctx.target_digits + guard, ctx.escalation_factor)
    with inner.wp():
        samples = _regularized_ring(nodes, inner)
        radius = mpf(1) / 2
        root = mp.exp(mpc(0, -2) * mp.pi / nodes)
        coeffs = []
        rpow = mpf(1)
        for k in range(count):
            wk = root**k
            acc = mpc(0)
            w = mpc(1)
            for j in range(nodes):
                acc += samples[j] * w
                w *= wk
            coeffs.append(acc / (nodes * rpow))
            rpow *= radius
    with ctx.wp():
        return [+c for c in coeffs]


def stieltjes_gamma(n: int, ctx: PrecisionContext) -> mpf:
    """gamma_n = (-1)^n n! a_n, a_n the n-th regularized Taylor coefficient."""
    if not 0 <= n <= N_MAX:
        raise RangeError(f"stieltjes_gamma supports 0 <= n <= {N_MAX}")
    a = _taylor_at_one(n + 1, ctx)[n]
    with ctx.wp():
        val = mp.factorial(n) * a * (-1) ** n
        if abs(val.imag) > ctx.tol * max(1, abs(val.real)):
            raise PrecisionEscalationError(
                f"gamma_{n} extraction left imaginary residue {mp.nstr(val.imag, 5)}"
            )
        return val.real


def euler_gamma_partial(checkpoints, ctx: PrecisionContext) -> PartialSumSeries:
    """Partial sums of sum_{k<=K} (1/k - log(1+1/k)) at each checkpoint."""
    checkpoints = [int(K) for K in checkpoints]
    if not checkpoints or any(b <= a for a, b in zip(checkpoints, checkpoints[1:])):
        raise RangeError("checkpoints must be nonempty and strictly increasing")
    if checkpoints[0] < 1:
        raise RangeError("checkpoints start at K >= 1")
    raws = []
    with ctx.wp():
        acc = KahanSum()
        cp = set(checkpoints)
        ln_k = mpf(0)
        for k in range(1, checkpoints[-1] + 1):
            ln_k1 = mp.ln(k + 1)
            acc.add(mpf(1) / k - (ln_k1 - ln_k))
            if k in cp:
                raws.append(acc.total)
            ln_k = ln_k1
        return build_partial_series(checkpoints, raws)


@dataclass(frozen=True)
class StieltjesTable:
    """gamma_0..gamma_n_max plus margins of the classical bound
    |gamma_n| <= e n! / (2^n sqrt(n)) for n >= 1."""

    n_max: int
    gammas: tuple
    bound_margin: tuple  # entry i is the margin at n = i + 1

    def bound(self, n: int) -> mpf:
        if n < 1:
            raise RangeError("the growth bound applies for n >= 1")
        return mp.e * mp.factorial(n) / (mpf(2) ** n * mp.sqrt(n))


def bound_check(n_max: int, ctx: PrecisionContext) -> StieltjesTable:
    """Tabulate gamma_n and the bound margins e n!/(2^n sqrt(n)) - |gamma_n|."""
    if not 0 <= n_max <= N_MAX:
        raise RangeError(f"bound_check supports 0 <= n_max <= {N_MAX}")
    a = _taylor_at_one(n_max + 1, ctx)
    with ctx.wp():
        gammas = []
        for n in range(n_max + 1):
            val = mp.factorial(n) * a[n] * (-1) ** n
            gammas.append(val.real)
        margins = []
        for n in range(1, n_max + 1):
            bound = mp.e * mp.factorial(n) / (mpf(2) ** n * mp.sqrt(n))
            margins.append(bound - abs(gammas[n]))
        return StieltjesTable(n_max=n_max, gammas=tuple(gammas), bound_margin=tuple(margins))
