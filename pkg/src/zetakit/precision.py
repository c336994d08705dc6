"""Arbitrary-precision arithmetic contract used by every numeric module.

All values are mpmath ``mpf``/``mpc`` numbers created and combined under an
explicit :class:`PrecisionContext`.  Nothing in the package reads or writes
``mpmath.mp`` global state outside a ``workprec`` block, so values are
immutable and safe to share across threads or worker processes.

Tolerances always derive from ``target_digits``; no operation carries a
hidden epsilon of its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import GammaPoleError, PrecisionEscalationError, RangeError

# Public aliases: the package-wide arbitrary-precision number types.
HpReal = mp.mpf
HpComplex = mp.mpc

_LOG2_10 = math.log2(10.0)


@dataclass(frozen=True)
class PrecisionContext:
    """Working mantissa precision and the tolerance policy derived from it.

    ``bits`` is the mantissa size every operation computes with and
    ``target_digits`` the number of decimal digits the caller wants
    certified.  ``escalation_factor`` multiplies ``bits`` when a
    two-precision agreement check fails and the computation is retried.
    """

    bits: int
    target_digits: int
    escalation_factor: float = 2.0

    def __post_init__(self):
        if self.target_digits < 1:
            raise RangeError("target_digits must be >= 1")
        if self.bits < 64:
            raise RangeError("bits must be >= 64")
        if self.bits < self.min_bits(self.target_digits):
            raise RangeError(
                f"bits={self.bits} too small for {self.target_digits} digits "
                f"(need >= {self.min_bits(self.target_digits)})"
            )
        if self.escalation_factor <= 1.0:
            raise RangeError("escalation_factor must exceed 1")

    @staticmethod
    def min_bits(digits: int) -> int:
        # 32 guard bits on top of the decimal-to-binary conversion.
        return max(64, math.ceil(digits * _LOG2_10) + 32)

    @classmethod
    def from_digits(cls, digits: int, escalation_factor: float = 2.0) -> "PrecisionContext":
        return cls(cls.min_bits(digits), digits, escalation_factor)

    def wp(self, extra_bits: int = 0):
        """Context manager setting the working precision for a block."""
        return mp.workprec(self.bits + extra_bits)

    def wp_digits(self, extra_digits: int):
        return mp.workprec(self.bits + math.ceil(extra_digits * _LOG2_10))

    @property
    def tol(self) -> mpf:
        """10^(-target_digits), the package-wide certification tolerance."""
        with mp.workprec(self.bits):
            return mpf(10) ** (-self.target_digits)

    def escalated(self, rounds: int = 1) -> "PrecisionContext":
        bits = self.bits
        for _ in range(rounds):
            bits = int(math.ceil(bits * self.escalation_factor))
        return PrecisionContext(bits, self.target_digits, self.escalation_factor)


DEFAULT_CONTEXT = PrecisionContext.from_digits(30)


def real_from(value, ctx: PrecisionContext) -> mpf:
    """Build an HpReal from a decimal string, int, or float.

    Decimal strings convert exactly-to-precision (correctly rounded at
    ``ctx.bits``).  Non-finite inputs are rejected at construction.
    """
    with ctx.wp():
        x = mpf(value)
    if not mp.isfinite(x):
        raise RangeError(f"non-finite real rejected: {value!r}")
    return x


def complex_from(re, im, ctx: PrecisionContext) -> mpc:
    return mpc(real_from(re, ctx), real_from(im, ctx))


def to_decimal(x, ctx: PrecisionContext, digits: int | None = None) -> str:
    """Round-trippable decimal representation at target_digits.

    Parsing the returned string with :func:`real_from` under the same
    context reproduces the stored value to within one unit in the last
    emitted digit; this is the cache and report serialization format.
    """
    d = digits if digits is not None else ctx.target_digits
    return mp.nstr(x, d, strip_zeros=False)


def agreement_digits(a, b) -> int:
    """Decimal digits to which two evaluations of the same quantity agree."""
    diff = abs(mpc(a) - mpc(b))
    if diff == 0:
        return 10**9
    scale = max(abs(mpc(a)), abs(mpc(b)), mpf(1))
    return int(mp.floor(-mp.log10(diff / scale)))


def certified(fn, ctx: PrecisionContext, retries: int = 3):
    """Two-precision agreement harness.

    Evaluates ``fn(bits)`` at the context precision and again at
    ``escalation_factor * bits``.  On agreement to ``target_digits`` the
    higher-precision value is returned together with the measured digit
    count; otherwise the precision is escalated and the pair re-run, at
    most ``retries`` times before raising.
    """
    bits = ctx.bits
    for _ in range(retries):
        hi_bits = int(math.ceil(bits * ctx.escalation_factor))
        lo = fn(bits)
        hi = fn(hi_bits)
        digits = agreement_digits(lo, hi)
        if digits >= ctx.target_digits:
            return hi, min(digits, ctx.target_digits + int((hi_bits - ctx.bits) / _LOG2_10))
        bits = hi_bits
    raise PrecisionEscalationError(
        f"no {ctx.target_digits}-digit agreement after {retries} escalations"
    )


def _is_nonpositive_integer(z: mpc) -> bool:
    return z.imag == 0 and z.real <= 0 and mp.isint(z.real)


def log_gamma(z, ctx: PrecisionContext) -> mpc:
    """Principal branch of log Gamma(z).

    Stirling's asymptotic series

        log Gamma(z) ~ (z - 1/2) log z - z + log(2 pi)/2
                       + sum_m B_{2m} / (2m (2m-1) z^{2m-1})

    applied after shifting the argument right via
    log Gamma(z) = log Gamma(z + K) - sum_{j<K} log(z + j)
    until Re(z + K) is large enough for the series to reach the target
    accuracy.  Continuous on C minus the real ray (-inf, 0]; conjugate
    symmetric.  exp(log_gamma(z)) equals Gamma(z) for every valid z.
    """
    z = mpc(z)
    if _is_nonpositive_integer(z):
        raise GammaPoleError(f"log_gamma pole at z={z}")
    guard_digits = 12
    with ctx.wp_digits(guard_digits):
        thresh = mpf(10) ** (-(ctx.target_digits + guard_digits - 2))
        # Shift right until the Stirling tail can reach the threshold.
        r0 = max(12.0, 0.40 * (ctx.target_digits + 12))
        shift = max(0, int(math.ceil(r0 - z.real)))
        zs = z + shift
        w = 1 / zs
        w2 = w * w
        acc = (zs - mpf(1) / 2) * mp.log(zs) - zs + mp.log(2 * mp.pi) / 2
        zpow = w  # 1 / zs^(2m-1)
        prev = mp.inf
        m = 1
        while True:
            term = mp.bernoulli(2 * m) / (2 * m * (2 * m - 1)) * zpow
            acc += term
            size = abs(term)
            if size < thresh * max(1, abs(acc)):
                break
            if size > prev or m > 300:
                raise PrecisionEscalationError(
                    f"Stirling series stalled at |z|={abs(zs)}, m={m}"
                )
            prev = size
            zpow *= w2
            m += 1
        for j in range(shift):
            acc -= mp.log(z + j)
    with ctx.wp():
        return mpc(acc)


def cpow(k: int, s, ctx: PrecisionContext) -> mpc:
    """k^(-s) = exp(-s log k) with the principal (real) log of k >= 1."""
    if k < 1:
        raise RangeError("cpow requires k >= 1")
    if k == 1:
        with ctx.wp():
            return mpc(1)
    with ctx.wp():
        s = mpc(s)
        if s.imag == 0 and mp.isint(s.real) and abs(s.real) <= 64:
            return mpc(mpf(k) ** (-int(s.real)))
        return mp.exp(-s * mp.log(mpf(k)))
