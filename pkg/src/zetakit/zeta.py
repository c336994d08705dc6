"""Evaluation of zeta(s), its derivatives, 1/zeta(s), and the Hardy Z function.

The correctness reference at every height is Euler-Maclaurin summation,

    zeta(s) = sum_{n<=N} n^-s + N^(1-s)/(s-1) - N^-s/2
              + sum_{m=1..M} B_2m/(2m)! (s)_{2m-1} N^(-s-2m+1),

with N = max(50, ceil(3 |Im s|)) and M grown until the first omitted term
drops below 10^-(digits+5).  The same expression differentiated term by
term supplies zeta'(s) for contour work.  For Re(s) < 1/2 (away from the
removable point s = 0) values are reflected through the symmetric
functional equation; a float-precision Riemann-Siegel main sum is
available as a scanning tier only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import NearZeroError, PoleError, PrecisionEscalationError, RangeError
from .precision import PrecisionContext, log_gamma

EULER_MACLAURIN = "euler-maclaurin"
REFLECTED = "reflected"
RIEMANN_SIEGEL = "riemann-siegel"

_EM_GUARD_DIGITS = 10

# ln(n) memo keyed by (n, working precision) so results never depend on
# evaluation order; shared across the hot Euler-Maclaurin loops.
_ln_cache: dict[tuple[int, int], mpf] = {}


def _ln_int(n: int) -> mpf:
    key = (n, mp.mp.prec)
    v = _ln_cache.get(key)
    if v is None:
        v = mp.ln(n)
        if len(_ln_cache) < 200_000:
            _ln_cache[key] = v
    return v


@dataclass(frozen=True)
class ZetaValue:
    """A certified zeta evaluation: value, producing method, digit count."""

    value: mpc
    method: str
    certified_digits: int


def _em_pair(s: mpc, digits: int, want_deriv: bool):
    """(zeta(s), zeta'(s) or None) by Euler-Maclaurin at current workprec.

    Truncation is controlled so the first omitted Bernoulli term is below
    10^-(digits+5); if the asymptotic tail stalls first, the main sum is
    lengthened and the evaluation retried.
    """
    N = max(50, int(math.ceil(3 * abs(s.imag))))
    thresh = mpf(10) ** (-(digits + 5))
    for _ in range(4):
        out = _em_attempt(s, N, thresh, want_deriv)
        if out is not None:
            return out
        N *= 2
    raise PrecisionEscalationError(f"Euler-Maclaurin stalled at s={s}, N={N}")


def _em_attempt(s: mpc, N: int, thresh: mpf, want_deriv: bool):
    acc = mpc(1)  # n = 1 term
    dacc = mpc(0)
    for n in range(2, N + 1):
        ln = _ln_int(n)
        term = mp.exp(-s * ln)
        acc += term
        if want_deriv:
            dacc -= ln * term
    lnN = _ln_int(N)
    NmS = mp.exp(-s * lnN)  # N^-s
    sm1 = s - 1
    T1 = NmS * N / sm1
    acc += T1 - NmS / 2
    if want_deriv:
        dacc += -lnN * T1 - T1 / sm1 + lnN * NmS / 2
    # Bernoulli tail: B_2m/(2m)! * s(s+1)...(s+2m-2) * N^(-s-2m+1)
    P = s  # rising-factorial product, currently (s)_1
    dP = mpc(1)
    Npow = NmS / N  # N^(-s-1)
    Nm2 = mpf(1) / (N * N)
    m = 1
    prev = mp.inf
    while True:
        coeff = mp.bernoulli(2 * m) / mp.factorial(2 * m)
        term = coeff * P * Npow
        acc += term
        size = abs(term)
        if want_deriv:
            dterm = coeff * (dP - lnN * P) * Npow
            dacc += dterm
            size = max(size, abs(dterm))
        if size < thresh:
            return (acc, dacc if want_deriv else None)
        if size > prev or m >= 200:
            return None  # asymptotic tail stalled; caller doubles N
        prev = size
        # extend (s)_{2m-1} by the factors (s+2m-1)(s+2m)
        for j in (2 * m - 1, 2 * m):
            dP = dP * (s + j) + P
            P = P * (s + j)
        Npow *= Nm2
        m += 1


def _is_trivial_zero(s: mpc) -> bool:
    return s.imag == 0 and s.real < 0 and mp.isint(s.real) and int(s.real) % 2 == 0


def _chi(s: mpc, ctx: PrecisionContext) -> mpc:
    """chi(s) = pi^(s-1/2) Gamma((1-s)/2) / Gamma(s/2), so zeta = chi * zeta(1-s)."""
    lg1 = log_gamma((1 - s) / 2, ctx)
    lg2 = log_gamma(s / 2, ctx)
    return mp.exp((s - mpf(1) / 2) * mp.log(mp.pi) + lg1 - lg2)


def zeta(s, ctx: PrecisionContext, method: str | None = None, certify: bool = False) -> ZetaValue:
    """zeta(s) to ctx.target_digits.

    Method selection: Euler-Maclaurin for Re(s) >= 1/2 and in a unit
    neighbourhood of s = 0 (where the reflection hits zeta(1)); reflection
    through the functional equation elsewhere on the left.  Passing
    ``method`` forces a path; ``certify=True`` re-runs the evaluation at
    escalated precision and reports the measured agreement.
    """
    with ctx.wp():
        s = mpc(s)
    if s == 1:
        raise PoleError("zeta pole at s=1")
    if method == RIEMANN_SIEGEL:
        return _zeta_rs(s, ctx)
    if method is None:
        method = EULER_MACLAURIN if (s.real >= 0.5 or abs(s) <= 0.5) else REFLECTED

    if method == EULER_MACLAURIN:
        def run(bits):
            with mp.workprec(bits + 40):
                v, _ = _em_pair(s, ctx.target_digits, False)
            with mp.workprec(bits):
                return +v
    elif method == REFLECTED:
        if _is_trivial_zero(s):
            with ctx.wp():
                return ZetaValue(mpc(0), REFLECTED, ctx.target_digits)

        def run(bits):
            rctx = PrecisionContext(max(bits, ctx.bits), ctx.target_digits, ctx.escalation_factor)
            with mp.workprec(bits + 40):
                v, _ = _em_pair(1 - s, ctx.target_digits, False)
                v *= _chi(s, rctx)
            with mp.workprec(bits):
                return +v
    else:
        raise RangeError(f"unknown zeta method {method!r}")

    if certify:
        from .precision import certified

        value, digits = certified(run, ctx)
        return ZetaValue(value, method, digits)
    return ZetaValue(run(ctx.bits), method, ctx.target_digits)


def zeta_and_deriv_raw(s, ctx: PrecisionContext) -> tuple[mpc, mpc]:
    """(zeta(s), zeta'(s)) by direct differentiated Euler-Maclaurin.

    Contour workhorse for winding-number quadrature; valid on the desk
    range Re(s) >= -1.5 without reflection.
    """
    with ctx.wp():
        s = mpc(s)
    if s == 1:
        raise PoleError("zeta pole at s=1")
    if s.real < -1.5:
        raise RangeError("direct Euler-Maclaurin derivative limited to Re(s) >= -1.5")
    with ctx.wp(40):
        v, dv = _em_pair(s, ctx.target_digits, True)
    with ctx.wp():
        return +v, +dv


def zeta_logderiv(s, ctx: PrecisionContext) -> mpc:
    """zeta'(s)/zeta(s) for contour quadrature."""
    v, dv = zeta_and_deriv_raw(s, ctx)
    if v == 0:
        raise PoleError(f"zeta'(s)/zeta(s) singular: zeta({s}) = 0")
    with ctx.wp():
        return dv / v


def inverse_zeta(s, ctx: PrecisionContext) -> mpc:
    """1/zeta(s); refuses evaluation inside a zero's numerical basin."""
    zv = zeta(s, ctx).value
    with ctx.wp():
        if abs(zv) < mpf(10) ** (-mpf(ctx.target_digits) / 2):
            raise NearZeroError(f"|zeta({s})| = {mp.nstr(abs(zv), 6)} is inside a zero basin")
        return 1 / zv


# ----------------------------------------------------------------------
# Cauchy-ring derivative extraction
# ----------------------------------------------------------------------

_ring_cache: dict[tuple, list] = {}


def _ring_key(center: mpc, radius: mpf, nodes: int, prec: int):
    return (mp.nstr(center.real, 40), mp.nstr(center.imag, 40), mp.nstr(radius, 25), nodes, prec)


def clear_ring_cache():
    _ring_cache.clear()


def _zeta_ring_samples(center: mpc, radius: mpf, nodes: int, ctx: PrecisionContext) -> list:
    """zeta on the circle center + radius*e^(2 pi i j / nodes), memoized.

    ctx must already carry the guard digits: coefficient extraction
    divides by radius^k, so sample accuracy has to track the widened
    working precision, not the caller's final target.
    """
    key = _ring_key(center, radius, nodes, mp.mp.prec)
    hit = _ring_cache.get(key)
    if hit is not None:
        return hit
    samples = []
    for j in range(nodes):
        w = mp.exp(mpc(0, 2) * mp.pi * j / nodes)
        samples.append(zeta(center + radius * w, ctx).value)
    if len(_ring_cache) < 4096:
        _ring_cache[key] = samples
    return samples


def taylor_ring(center, radius, count: int, ctx: PrecisionContext, nodes: int | None = None) -> list:
    """First ``count`` Taylor coefficients of zeta at ``center``.

    Trapezoid (equal-weight ring) discretization of the Cauchy integral:
    coefficient k is (1/nodes) sum_j zeta(c + R w^j) w^(-jk) / R^k.  The
    ring is sampled once per (center, radius, precision) and shared by
    every derivative order.  Extraction divides by R^k, so the ring is
    evaluated with k log10(1/R) extra guard digits.
    """
    with ctx.wp():
        center = mpc(center)
        radius = mpf(radius)
    if radius <= 0:
        raise RangeError("taylor_ring needs radius > 0")
    if abs(center - 1) <= radius:
        raise PoleError("derivative contour touches the pole at s=1")
    n = nodes if nodes is not None else max(64, 8 * ctx.target_digits)
    if count > n // 2:
        raise RangeError("coefficient count too large for node budget")
    amplification = count * max(0.0, -math.log10(float(radius))) + 10
    inner = PrecisionContext.from_digits(
        ctx.target_digits + int(math.ceil(amplification)), ctx.escalation_factor
    )
    with inner.wp():
        samples = _zeta_ring_samples(center, radius, n, inner)
        root = mp.exp(mpc(0, -2) * mp.pi / n)
        coeffs = []
        rpow = mpf(1)
        for k in range(count):
            wk = root**k
            acc = mpc(0)
            w = mpc(1)
            for j in range(n):
                acc += samples[j] * w
                w *= wk
            coeffs.append(acc / (n * rpow))
            rpow *= radius
    with ctx.wp():
        return [+c for c in coeffs]


def zeta_deriv(s, k: int, ctx: PrecisionContext) -> mpc:
    """k-th derivative of zeta at s via Cauchy's integral formula.

    Circle radius min(1/4, |s-1|/2) keeps the pole outside; node count is
    8 * target_digits.  k = 0 delegates to :func:`zeta`.
    """
    if k < 0 or k > 8:
        raise RangeError("zeta_deriv supports 0 <= k <= 8")
    if k == 0:
        return zeta(s, ctx).value
    with ctx.wp():
        s = mpc(s)
    if s == 1:
        raise PoleError("zeta pole at s=1")
    with ctx.wp():
        radius = min(mpf(1) / 4, abs(s - 1) / 2)
    coeffs = taylor_ring(s, radius, k + 1, ctx)
    with ctx.wp():
        return coeffs[k] * mp.factorial(k)


# ----------------------------------------------------------------------
# Hardy Z and the Riemann-Siegel scanning tier
# ----------------------------------------------------------------------


def theta(t, ctx: PrecisionContext) -> mpf:
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi.

    Computed from log_gamma, not its asymptotic series, so scanning and
    certification share one code path.
    """
    with ctx.wp(20):
        t = mpf(t)
        lg = log_gamma(mpc(mpf(1) / 4, t / 2), ctx)
        val = lg.imag - t / 2 * mp.log(mp.pi)
    with ctx.wp():
        return +val


def hardy_Z(t, ctx: PrecisionContext) -> mpf:
    """Z(t) = e^(i theta(t)) zeta(1/2 + it), real-valued for real t >= 0."""
    with ctx.wp():
        t = mpf(t)
    if t < 0:
        raise RangeError("hardy_Z requires t >= 0")
    with ctx.wp(20):
        z = zeta(mpc(mpf(1) / 2, t), ctx).value
        rot = mp.exp(mpc(0, 1) * theta(t, ctx))
        val = (rot * z).real
    with ctx.wp():
        return +val


def _theta_float(t: float) -> float:
    u = t / (2 * math.pi)
    return (
        t / 2 * math.log(u)
        - t / 2
        - math.pi / 8
        + 1 / (48 * t)
        + 7 / (5760 * t**3)
    )


def rs_error_bound(t: float) -> float:
    """Heuristic truncation bound for the one-correction Riemann-Siegel sum.

    Gabcke's constant 0.053 (t/2pi)^(-3/4) holds for t >= 200; below that
    a conservative multiple is used.  Scanning treats any |Z| under this
    bound as sign-indeterminate and re-evaluates by Euler-Maclaurin.
    """
    a = t / (2 * math.pi)
    c = 0.053 if t >= 200 else 0.5
    return c * a ** (-0.75)


def hardy_Z_fast(t: float) -> float:
    """Float-precision Riemann-Siegel main sum with the first correction.

    Scanning tier only: error is bounded by :func:`rs_error_bound`, far
    from certified digits.  Valid for t >= 10.
    """
    if t < 10:
        raise RangeError("riemann-siegel tier needs t >= 10")
    a = math.sqrt(t / (2 * math.pi))
    nu = int(a)
    p = a - nu
    th = _theta_float(t)
    acc = 0.0
    for n in range(1, nu + 1):
        acc += math.cos(th - t * math.log(n)) / math.sqrt(n)
    acc *= 2.0
    den = math.cos(2 * math.pi * p)
    if abs(den) < 1e-4:
        # removable point of the correction factor; average across it
        c0 = (_rs_c0(p - 1e-3) + _rs_c0(p + 1e-3)) / 2
    else:
        c0 = _rs_c0(p)
    return acc + (-1) ** (nu - 1) * (t / (2 * math.pi)) ** (-0.25) * c0


def _rs_c0(p: float) -> float:
    return math.cos(2 * math.pi * (p * p - p - 1.0 / 16.0)) / math.cos(2 * math.pi * p)


def _zeta_rs(s: mpc, ctx: PrecisionContext) -> ZetaValue:
    if s.real != 0.5:
        raise RangeError("riemann-siegel tier is defined on the critical line only")
    t = float(s.imag)
    err = rs_error_bound(t)
    digits = max(0, int(-math.log10(err)) - 1)
    if digits < ctx.target_digits:
        raise PrecisionEscalationError(
            f"riemann-siegel tier certifies ~{digits} digits at t={t}, "
            f"target is {ctx.target_digits}"
        )
    with ctx.wp():
        z = hardy_Z_fast(t) * mp.exp(mpc(0, -1) * theta(s.imag, ctx))
    return ZetaValue(z, RIEMANN_SIEGEL, digits)


def functional_equation_sides(s, ctx: PrecisionContext) -> tuple[mpc, mpc]:
    """Both sides of pi^(-s/2) Gamma(s/2) zeta(s) = (s -> 1-s), independently.

    Each side forces the Euler-Maclaurin path, so for strip points the
    comparison never reuses the reflection it is meant to test.
    """
    with ctx.wp():
        s = mpc(s)

    def side(z):
        with ctx.wp(20):
            val = (
                mp.exp(-z / 2 * mp.log(mp.pi) + log_gamma(z / 2, ctx))
                * zeta(z, ctx, method=EULER_MACLAURIN).value
            )
        with ctx.wp():
            return +val

    return side(s), side(1 - s)
