"""Locating, refining, counting, and auditing nontrivial zeros.

Zeros on the critical line are found as sign changes of Hardy Z on an
adaptive grid, polished by Newton iteration, and cross-checked for
completeness against an independent argument-principle count over the
rectangle [-1, 2] x [eps, T].  Each zero's multiplicity is then measured
directly as the winding number of zeta'/zeta around a small circle; the
audit records |zeta'(rho)| against a simplicity floor rather than
asserting simplicity axiomatically.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

import mpmath as mp
from mpmath import mpc, mpf
from numpy.polynomial.legendre import leggauss

from .errors import (
    CacheFormatError,
    ContourNearZeroError,
    GridTooCoarseError,
    NoConvergenceError,
    NonIntegerWindingError,
    RangeError,
)
from .parallel import map_ordered
from .precision import PrecisionContext, real_from, to_decimal
from .zeta import hardy_Z, hardy_Z_fast, rs_error_bound, zeta, zeta_and_deriv_raw, zeta_deriv

STATUS_REFINED = "refined"
STATUS_SIMPLE = "simple-confirmed"
STATUS_SUSPECT = "suspect"

SIMPLICITY_FLOOR = mpf("1e-6")

CACHE_HEADER_PREFIX = "# zeta-zeros v1 digits="

# Internal precision for integer-valued contour work; the quadrature
# only needs to land within 0.1 of an integer.
_COUNT_DIGITS = 12

_GL_X, _GL_W = leggauss(16)


@dataclass(frozen=True)
class ZeroRecord:
    index: int
    t: mpf
    rho: mpc
    zeta_at_rho_abs: mpf
    zeta_prime_at_rho: mpc
    winding: int
    status: str


@dataclass(frozen=True)
class CountReport:
    T: mpf
    n_sign_changes: int
    n_winding: int
    rvm_estimate: mpf
    n_simple: int
    ratio_simple: mpf
    flagged: bool


# ----------------------------------------------------------------------
# Grid scan and Newton refinement
# ----------------------------------------------------------------------

_LOW_CTX = PrecisionContext.from_digits(12)


def _grid_sign(t: float) -> int:
    """Sign of Z(t) for scanning: float Riemann-Siegel when trustworthy,
    low-precision Euler-Maclaurin otherwise."""
    if t >= 30:
        z = hardy_Z_fast(t)
        if abs(z) > 2 * rs_error_bound(t):
            return 1 if z > 0 else -1
    zlow = hardy_Z(mpf(t), _LOW_CTX)
    return 1 if zlow >= 0 else -1


def _scan_brackets(T: float, step: float) -> list[tuple[float, float]]:
    lo = 10.0
    if T <= lo:
        return []
    n = int(math.ceil((T - lo) / step))
    brackets = []
    t_prev = lo
    s_prev = _grid_sign(lo)
    for i in range(1, n + 1):
        t = min(lo + i * step, T)
        s = _grid_sign(t)
        if s != s_prev:
            brackets.append((t_prev, t))
        t_prev, s_prev = t, s
    return brackets


def _newton_refine(a: mpf, b: mpf, ctx: PrecisionContext) -> mpf:
    """Zero of Z in [a, b]: bisect to 1e-3, then Newton with a central
    finite-difference slope until |dt| < 10^-target_digits."""
    with _LOW_CTX.wp():
        lo, hi = mpf(a), mpf(b)
        slo = 1 if hardy_Z(lo, _LOW_CTX) >= 0 else -1
        while hi - lo > mpf("1e-3"):
            mid = (lo + hi) / 2
            smid = 1 if hardy_Z(mid, _LOW_CTX) >= 0 else -1
            if smid == slo:
                lo = mid
            else:
                hi = mid
    with ctx.wp(20):
        t = (mpf(lo) + mpf(hi)) / 2
        start = t
        basin = max(mpf("0.05"), mpf(b) - mpf(a))
        h = mpf(10) ** (-max(6, ctx.target_digits // 3))
        tol = mpf(10) ** (-ctx.target_digits)
        for _ in range(60):
            z0 = hardy_Z(t, ctx)
            dz = (hardy_Z(t + h, ctx) - hardy_Z(t - h, ctx)) / (2 * h)
            if dz == 0:
                raise NoConvergenceError("flat Z slope during Newton refinement")
            dt = z0 / dz
            t -= dt
            if abs(t - start) > basin:
                raise NoConvergenceError(f"Newton left the bracket basin near t={float(start)}")
            if abs(dt) < tol:
                with ctx.wp():
                    return +t
        raise NoConvergenceError(f"Newton did not converge near t={float(start)}")


def _refine_bracket_worker(args: tuple) -> tuple:
    """Refine one bracket; string-typed in and out so results are
    byte-identical whether run inline or in a worker process."""
    a_str, b_str, bits, digits = args
    ctx = PrecisionContext(bits, digits)
    with ctx.wp():
        a = mpf(a_str)
        b = mpf(b_str)
    t = _newton_refine(a, b, ctx)
    with ctx.wp():
        rho = mpc(mpf(1) / 2, t)
    zabs = abs(zeta(rho, ctx).value)
    zp = zeta_deriv(rho, 1, ctx)
    d = ctx.target_digits + 5
    with ctx.wp():
        return (
            to_decimal(t, ctx, d),
            to_decimal(zabs, ctx, d),
            to_decimal(zp.real, ctx, d),
            to_decimal(zp.imag, ctx, d),
        )


def refine_zero(t0, ctx: PrecisionContext) -> ZeroRecord:
    """Polish the zero whose Z sign change lies within 0.05 of t0.

    Returned record carries index 0 and winding 0; scan and audit fill
    those in.
    """
    seed = float(t0)
    pts = [seed + k * 0.01 for k in range(-5, 6)]
    signs = [_grid_sign(max(t, 0.5)) for t in pts]
    bracket = None
    for i in range(len(pts) - 1):
        if signs[i] != signs[i + 1]:
            bracket = (pts[i], pts[i + 1])
            break
    if bracket is None:
        raise NoConvergenceError(f"no Z sign change within 0.05 of t={seed}")
    packed = _refine_bracket_worker(
        (repr(bracket[0]), repr(bracket[1]), ctx.bits, ctx.target_digits)
    )
    return _record_from_strings(0, packed, ctx)


def _record_from_strings(index: int, packed: tuple, ctx: PrecisionContext) -> ZeroRecord:
    t_s, zabs_s, zpre_s, zpim_s = packed
    with ctx.wp():
        t = mpf(t_s)
        return ZeroRecord(
            index=index,
            t=t,
            rho=mpc(mpf(1) / 2, t),
            zeta_at_rho_abs=mpf(zabs_s),
            zeta_prime_at_rho=mpc(mpf(zpre_s), mpf(zpim_s)),
            winding=0,
            status=STATUS_REFINED,
        )


def scan_with_count(T, ctx: PrecisionContext, workers: int = 1) -> tuple[list[ZeroRecord], int]:
    """(records, argument-principle count) for zeros with 0 < t <= T."""
    Tf = float(T)
    if not 10 <= Tf <= 1000:
        raise RangeError("scan height must satisfy 10 <= T <= 1000")
    n_winding = count_by_argument(T, ctx)
    step = 0.25 / math.log(Tf)
    for _ in range(3):
        brackets = _scan_brackets(Tf, step)
        if len(brackets) == n_winding:
            args = [
                (repr(a), repr(b), ctx.bits, ctx.target_digits) for a, b in brackets
            ]
            packs = map_ordered(_refine_bracket_worker, args, workers)
            records = [
                _record_from_strings(i + 1, p, ctx) for i, p in enumerate(packs)
            ]
            if all(r2.t > r1.t for r1, r2 in zip(records, records[1:])):
                return records, n_winding
        step /= 2
    raise GridTooCoarseError(
        f"sign-change count disagrees with winding count {n_winding} at T={Tf} "
        "after two grid refinements"
    )


def scan_zeros(T, ctx: PrecisionContext, workers: int = 1) -> list[ZeroRecord]:
    """All zeros with 0 < t <= T, refined to target_digits and
    completeness-checked against count_by_argument."""
    records, _ = scan_with_count(T, ctx, workers)
    return records


# ----------------------------------------------------------------------
# Argument-principle machinery
# ----------------------------------------------------------------------


def _logderiv_on_contour(s: mpc, ctx: PrecisionContext) -> mpc:
    v, dv = zeta_and_deriv_raw(s, ctx)
    if abs(v) < mpf(10) ** (-_COUNT_DIGITS):
        raise ContourNearZeroError(f"contour point {s} lies numerically on a zero")
    return dv / v


def _gl_panel(f, sa: mpc, sb: mpc) -> mpc:
    half = (sb - sa) / 2
    mid = (sa + sb) / 2
    acc = mpc(0)
    for x, w in zip(_GL_X, _GL_W):
        acc += mpf(w) * f(mid + half * mpf(x))
    return acc * half


def _geometric_breaks(center: float, reach: float, floor: float) -> list[float]:
    """Offsets center +- reach*2^-k down to the floor scale, as sorted
    breakpoints including both extremes and the center."""
    offs = [reach]
    while offs[-1] / 2 > floor:
        offs.append(offs[-1] / 2)
    left = [center - o for o in offs]
    right = [center + o for o in reversed(offs)]
    return left + [center] + right


def _winding_rectangle(T: mpf, ctx: PrecisionContext) -> mpc:
    eps = mpf("0.001")
    sigma_lo, sigma_hi = mpf(-1), mpf(2)

    def f(s):
        return _logderiv_on_contour(s, ctx)

    total = mpc(0)
    # bottom edge, refined toward the pole at s = 1
    bps = _geometric_breaks(1.0, 2.0, 0.001)
    bps = [b for b in bps if -1.0 <= b <= 2.0]
    for a, b in zip(bps, bps[1:]):
        total += _gl_panel(f, mpc(mpf(repr(a)), eps), mpc(mpf(repr(b)), eps))
    # right edge upward, unit-scale oscillation
    t = eps
    while t < T:
        t2 = min(t + 2, T)
        total += _gl_panel(f, mpc(sigma_hi, t), mpc(sigma_hi, t2))
        t = t2
    # top edge right to left, refined toward sigma = 1/2
    tps = _geometric_breaks(0.5, 1.5, 0.04)
    tps = [b for b in tps if -1.0 <= b <= 2.0]
    for a, b in zip(reversed(tps), list(reversed(tps))[1:]):
        total += _gl_panel(f, mpc(mpf(repr(a)), T), mpc(mpf(repr(b)), T))
    # left edge downward
    t = T
    while t > eps:
        t2 = max(t - 2, eps)
        total += _gl_panel(f, mpc(sigma_lo, t), mpc(sigma_lo, t2))
        t = t2
    return total / (2 * mp.pi * mpc(0, 1))


def count_by_argument(T, ctx: PrecisionContext) -> int:
    """Number of zeros in [-1, 2] x [0.001, T] by winding of zeta'/zeta.

    The pole at s = 1 sits just below the rectangle, so the winding
    rounds directly to the zero count with no pole correction.  If the
    contour lands too near a zero, T is nudged up by 0.05, five tries.
    """
    count_ctx = PrecisionContext.from_digits(_COUNT_DIGITS)
    shift = mpf(0)
    last_err: Exception | None = None
    for _ in range(6):
        with count_ctx.wp():
            Ts = mpf(T) + shift
            try:
                w = _winding_rectangle(Ts, count_ctx)
            except ContourNearZeroError as exc:
                last_err = exc
                shift += mpf("0.05")
                continue
            n = int(mp.nint(w.real))
            if abs(w - n) <= mpf("0.1"):
                return n
            last_err = NonIntegerWindingError(
                f"rectangle winding {mp.nstr(w, 8)} is not near an integer at T={Ts}"
            )
            shift += mpf("0.05")
    raise ContourNearZeroError(f"count_by_argument failed after 5 shifts: {last_err}")


def multiplicity_probe(rho, r, ctx: PrecisionContext, nodes: int = 128) -> int:
    """Winding number of zeta'/zeta around |s - rho| = r: the
    multiplicity of rho as a zeta zero.

    The trapezoid rule on the circle integrates the enclosed principal
    part exactly, so modest node counts give integer-sharp results; the
    caller keeps r small enough (r <= 1/16 in routine audits) that no
    neighboring zero falls inside.
    """
    probe_ctx = PrecisionContext.from_digits(_COUNT_DIGITS)
    with probe_ctx.wp():
        rho = mpc(rho)
        r = mpf(r)
        if not 0 < r <= mpf(1) / 4:
            raise RangeError("probe radius must satisfy 0 < r <= 1/4")
        acc = mpc(0)
        for j in range(nodes):
            w = mp.exp(mpc(0, 2) * mp.pi * j / nodes)
            acc += _logderiv_on_contour(rho + r * w, probe_ctx) * r * w
        val = acc / nodes
        m = int(mp.nint(val.real))
        if abs(val - m) > mpf("0.1"):
            raise NonIntegerWindingError(
                f"circle winding {mp.nstr(val, 8)} at rho={rho} is not near an integer"
            )
        return m


def rvm_estimate(T) -> mpf:
    """Smooth zero-count estimate (T/2pi) log(T/2pi) - T/2pi + 7/8."""
    T = mpf(T)
    if T < 2:
        raise RangeError("rvm_estimate needs T >= 2")
    u = T / (2 * mp.pi)
    return u * mp.log(u) - u + mpf(7) / 8


# ----------------------------------------------------------------------
# Audit and reporting
# ----------------------------------------------------------------------


def _probe_worker(args: tuple) -> int:
    rho_re, rho_im, r_str, bits, digits = args
    ctx = PrecisionContext(bits, digits)
    with ctx.wp():
        rho = mpc(mpf(rho_re), mpf(rho_im))
        r = mpf(r_str)
    return multiplicity_probe(rho, r, ctx)


def audit_zeros(records: list[ZeroRecord], ctx: PrecisionContext, workers: int = 1) -> list[ZeroRecord]:
    """Fill winding and status for each record via multiplicity probes.

    Probe radius shrinks with the local zero gap so circles never
    enclose a neighbor.
    """
    if not records:
        return []
    args = []
    d = ctx.target_digits + 5
    with ctx.wp():
        ts = [r.t for r in records]
        for i, rec in enumerate(records):
            gap_lo = ts[i] - ts[i - 1] if i > 0 else mpf(100)
            gap_hi = ts[i + 1] - ts[i] if i + 1 < len(ts) else mpf(100)
            r = min(mpf(1) / 32, mpf("0.4") * min(gap_lo, gap_hi))
            args.append(
                (
                    to_decimal(rec.rho.real, ctx, d),
                    to_decimal(rec.rho.imag, ctx, d),
                    to_decimal(r, ctx, d),
                    ctx.bits,
                    ctx.target_digits,
                )
            )
    windings = map_ordered(_probe_worker, args, workers)
    out = []
    with ctx.wp():
        for rec, w in zip(records, windings):
            simple = w == 1 and abs(rec.zeta_prime_at_rho) > SIMPLICITY_FLOOR
            out.append(
                replace(rec, winding=w, status=STATUS_SIMPLE if simple else STATUS_SUSPECT)
            )
    return out


def density_report(T, ctx: PrecisionContext, records: list[ZeroRecord] | None = None,
                   n_winding: int | None = None, workers: int = 1) -> CountReport:
    """CountReport at height T.

    When records are not supplied, a fresh scan plus audit is run.  The
    report is flagged when the two counting methods disagree or when the
    range is empty (ratio undefined).
    """
    if records is None:
        records, n_winding = scan_with_count(T, ctx, workers)
        records = audit_zeros(records, ctx, workers)
    if n_winding is None:
        n_winding = count_by_argument(T, ctx)
    with ctx.wp():
        T = mpf(T)
        n_sign = len(records)
        n_simple = sum(1 for r in records if r.status == STATUS_SIMPLE)
        flagged = n_sign != n_winding or n_winding == 0
        ratio = mpf(n_simple) / n_winding if n_winding > 0 else mpf(0)
        return CountReport(
            T=T,
            n_sign_changes=n_sign,
            n_winding=n_winding,
            rvm_estimate=rvm_estimate(T),
            n_simple=n_simple,
            ratio_simple=ratio,
            flagged=flagged,
        )


# ----------------------------------------------------------------------
# Zero cache file
# ----------------------------------------------------------------------


def format_cache_line(rec: ZeroRecord, ctx: PrecisionContext) -> str:
    """One cache record as its stored line (trailing newline included)."""
    d = ctx.target_digits + 5
    with ctx.wp():
        return (
            f"{rec.index},{to_decimal(rec.t, ctx, d)},"
            f"{to_decimal(abs(rec.zeta_prime_at_rho), ctx, d)},"
            f"{rec.winding},{rec.status}\n"
        )


def write_cache(path: str, records: list[ZeroRecord], ctx: PrecisionContext) -> None:
    """Write the full cache atomically (used for fresh scans and for
    audit rewrites that update winding/status in place)."""
    tmp = path + ".tmp"
    lines = [f"{CACHE_HEADER_PREFIX}{ctx.target_digits}\n"]
    lines.extend(format_cache_line(rec, ctx) for rec in records)
    with open(tmp, "w") as fh:
        fh.writelines(lines)
    os.replace(tmp, path)


def read_cache(path: str) -> tuple[int, list[ZeroRecord]]:
    """(digits, records) from a cache file.

    Stored fields round-trip exactly; zeta_prime_at_rho is reconstructed
    from the stored magnitude (phase is recomputable, not stored) and
    zeta_at_rho_abs is set to 0 as a recomputable placeholder.
    """
    with open(path) as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith(CACHE_HEADER_PREFIX):
            raise CacheFormatError(f"bad cache header: {header!r}")
        try:
            digits = int(header[len(CACHE_HEADER_PREFIX):])
        except ValueError as exc:
            raise CacheFormatError(f"bad digits in cache header: {header!r}") from exc
        ctx = PrecisionContext.from_digits(digits)
        records = []
        prev_t = None
        with ctx.wp():
            for lineno, line in enumerate(fh, start=2):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                if len(parts) != 5:
                    raise CacheFormatError(f"line {lineno}: expected 5 fields, got {len(parts)}")
                try:
                    idx = int(parts[0])
                    t = real_from(parts[1], ctx)
                    zp_abs = real_from(parts[2], ctx)
                    winding = int(parts[3])
                except (ValueError, RangeError) as exc:
                    raise CacheFormatError(f"line {lineno}: {exc}") from exc
                status = parts[4]
                if status not in (STATUS_REFINED, STATUS_SIMPLE, STATUS_SUSPECT):
                    raise CacheFormatError(f"line {lineno}: unknown status {status!r}")
                if prev_t is not None and not t > prev_t:
                    raise CacheFormatError(f"line {lineno}: ordinates not increasing")
                prev_t = t
                records.append(
                    ZeroRecord(
                        index=idx,
                        t=t,
                        rho=mpc(mpf(1) / 2, t),
                        zeta_at_rho_abs=mpf(0),
                        zeta_prime_at_rho=mpc(zp_abs),
                        winding=winding,
                        status=status,
                    )
                )
    return digits, records
