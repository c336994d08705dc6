"""Laurent data for 1/zeta at a simple zero, computed two ways.

Route one inverts the Taylor series of zeta at the zero (ground truth
for the coefficients c_n).  Route two accumulates the Mobius-weighted
partial sums

    sum_{k<=K} [ mu(k) log^n(k) k^(-rho)
                 - residue (log^(n+1)(k+1) - log^(n+1)(k)) / (n+1) ]

whose behavior as K grows is recorded as a diagnostic, never asserted:
convergence of that series on the critical line is an open matter, so
the artifact measures distances to the oracle coefficients and reports
oscillation instead.  The two routes are kept strictly separate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
from mpmath import mpc, mpf

from .errors import (
    OutsideDiskError,
    RangeError,
    SuspectZeroError,
    ZeroLeadingCoefficientError,
)
from .mobius import MobiusTable
from .precision import PrecisionContext, cpow, to_decimal
from .series import KahanComplexSum, PartialSumSeries, build_partial_series
from .zeros import SIMPLICITY_FLOOR, _grid_sign
from .zeta import inverse_zeta, taylor_ring, zeta_deriv

DEFAULT_CHECKPOINTS = (10**3, 10**4, 10**5, 10**6)


@dataclass(frozen=True)
class LaurentExpansion:
    """Truncated Laurent expansion of 1/zeta at a simple zero rho.

    coeffs holds the first n_terms Taylor coefficients c_0, c_1, ... from
    the inversion oracle (n_terms = 0 keeps only the residue term); the
    mapping to the coefficient series under study is c_n = (-1)^n phi_n/n!.
    """

    rho: mpc
    residue: mpc
    coeffs: tuple
    radius: mpf
    n_terms: int

    def truncated(self, N: int) -> "LaurentExpansion":
        if not 0 <= N <= self.n_terms:
            raise RangeError(f"truncation {N} outside stored order {self.n_terms}")
        return LaurentExpansion(self.rho, self.residue, self.coeffs[:N], self.radius, N)


def residue(rho, ctx: PrecisionContext) -> mpc:
    """1/zeta'(rho), the residue of 1/zeta at a simple zero."""
    zp = zeta_deriv(rho, 1, ctx)
    with ctx.wp():
        if abs(zp) <= SIMPLICITY_FLOOR:
            raise SuspectZeroError(
                f"|zeta'({rho})| = {mp.nstr(abs(zp), 6)} is at or below the simplicity floor"
            )
        return 1 / zp


def taylor_at_zero(rho, N: int, ctx: PrecisionContext) -> list:
    """Taylor coefficients a_1..a_{N+1} of zeta at the zero rho.

    a_j = zeta^(j)(rho)/j!; the constant term is dropped since zeta(rho)
    vanishes to working precision there.
    """
    if not 0 <= N <= 12:
        raise RangeError("taylor_at_zero supports N <= 12")
    with ctx.wp():
        rho = mpc(rho)
        r = min(mpf(1) / 4, abs(rho - 1) / 2)
    coeffs = taylor_ring(rho, r, N + 2, ctx)
    return coeffs[1:]


def invert_series(a: list, N: int):
    """(residue, [c_0..c_{N-1}]): formal reciprocal of x*(a_1 + a_2 x + ...).

    Standard power-series reciprocal recursion at the current working
    precision: b_0 = 1/a_1, b_n = -(1/a_1) sum_{j=1..n} a_{j+1} b_{n-j},
    then residue = b_0 and c_n = b_{n+1}.
    """
    if N < 0 or len(a) < 1:
        raise RangeError("invert_series needs N >= 0 and a_1 present")
    a0 = a[0]
    if a0 == 0:
        raise ZeroLeadingCoefficientError("a_1 = 0: zero is not simple")
    inv = 1 / a0
    b = [inv]
    for n in range(1, N + 1):
        acc = 0
        for j in range(1, n + 1):
            if j < len(a):
                acc += a[j] * b[n - j]
        b.append(-inv * acc)
    return b[0], b[1:]


def _mobius_single(k: int) -> int:
    """mu(k) by trial division; for spot use, not bulk sums."""
    if k < 1:
        raise RangeError("mu(k) needs k >= 1")
    m = 1
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            m = -m
        d += 1
    if k > 1:
        m = -m
    return m


def v_term(k: int, s, rho, residue_val, ctx: PrecisionContext) -> mpc:
    """mu(k) k^(-s) + (residue/(s-rho)) ((k+1)^(-(s-rho)) - k^(-(s-rho)))."""
    if k < 1:
        raise RangeError("v_term needs k >= 1")
    with ctx.wp():
        s = mpc(s)
        rho = mpc(rho)
        w = s - rho
        if w == 0:
            raise RangeError("v_term is undefined at s = rho")
        mu = _mobius_single(k)
        term = mpc(0)
        if mu != 0:
            term = mu * cpow(k, s, ctx)
        bridge = (mpc(residue_val) / w) * (cpow(k + 1, w, ctx) - cpow(k, w, ctx))
        return term + bridge


def phi_series_multi(rho, ns, checkpoints, table: MobiusTable, ctx: PrecisionContext,
                     residue_val=None) -> dict:
    """PartialSumSeries for several log powers n in one sweep over k.

    ln k is carried forward between iterations (the telescoping factor
    needs ln(k+1) anyway), and all requested n share each k's work.
    Compensated accumulation at base precision; sweeps past 10^6 terms
    switch to plain accumulation with widened precision instead.
    """
    ns = sorted(set(int(n) for n in ns))
    if any(n < 0 or n > 6 for n in ns):
        raise RangeError("phi series log power limited to 0 <= n <= 6")
    checkpoints = [int(K) for K in checkpoints]
    if any(b <= a for a, b in zip(checkpoints, checkpoints[1:])) or not checkpoints:
        raise RangeError("checkpoints must be nonempty and strictly increasing")
    if checkpoints[-1] > table.limit:
        raise RangeError(f"checkpoint {checkpoints[-1]} exceeds table limit {table.limit}")
    if residue_val is None:
        residue_val = residue(rho, ctx)

    K_max = checkpoints[-1]
    big = K_max > 10**6
    mu = table.values
    raws = {n: [] for n in ns}
    with ctx.wp(64 if big else 0):
        rho = mpc(rho)
        res = mpc(residue_val)
        if big:
            sums = {n: [mpc(0)] for n in ns}

            def add(n, v):
                sums[n][0] += v

            def total(n):
                return sums[n][0]
        else:
            acc = {n: KahanComplexSum() for n in ns}

            def add(n, v):
                acc[n].add(v)

            def total(n):
                return acc[n].total

        cp = set(checkpoints)
        ln_k = mpf(0)
        for k in range(1, K_max + 1):
            ln_k1 = mp.ln(k + 1)
            m = int(mu[k - 1])
            if m != 0:
                kp = mp.exp(-rho * ln_k) if k > 1 else mpc(1)
                if m < 0:
                    kp = -kp
                for n in ns:
                    add(n, kp if n == 0 else kp * ln_k**n)
            for n in ns:
                add(n, -res * (ln_k1 ** (n + 1) - ln_k ** (n + 1)) / (n + 1))
            if k in cp:
                for n in ns:
                    raws[n].append(total(n))
            ln_k = ln_k1
    with ctx.wp():
        return {
            n: build_partial_series(checkpoints, [+v for v in raws[n]]) for n in ns
        }


def phi_series(rho, n: int, checkpoints, table: MobiusTable, ctx: PrecisionContext) -> PartialSumSeries:
    """Partial sums of the coefficient series for log power n (diagnostic)."""
    return phi_series_multi(rho, [n], checkpoints, table, ctx)[n]


def _neighbor_distance(t_val: float) -> float:
    """Distance from ordinate t to the nearest other zero, located by
    walking the scan grid outward until Z changes sign."""
    h = 0.25 / math.log(max(t_val, 10.0))
    best = None
    for direction in (1.0, -1.0):
        t = t_val + direction * h / 2
        s0 = _grid_sign(max(t, 0.5))
        for i in range(1, 4000):
            t2 = t_val + direction * (h / 2 + i * h)
            if t2 < 0.5:
                break
            s = _grid_sign(t2)
            if s != s0:
                d = abs(t2 - t_val) - h  # nearer bracket edge: conservative
                best = d if best is None else min(best, d)
                break
    if best is None:
        best = 2 * t_val  # nothing found: conjugate partner bounds the gap
    return best


def _expansion_full(rho, N: int, ctx: PrecisionContext, neighbor_ts=None):
    """(LaurentExpansion, extended coefficient list) at a simple zero.

    Validity radius is 0.8 x min(distance to neighboring zeros, |rho-1|);
    neighbors come from supplied ordinates when available, otherwise
    from a local sign-change walk.  The extended list carries a few
    coefficients past the truncation for tail estimates.
    """
    if not 0 <= N <= 12:
        raise RangeError("expansion order limited to 0 <= N <= 12")
    with ctx.wp():
        rho_c = mpc(rho)
        t_val = rho_c.imag
        dist = None
        if neighbor_ts:
            gaps = [abs(mpf(u) - t_val) for u in neighbor_ts]
            gaps = [g for g in gaps if g > mpf("1e-6")]
            if gaps:
                dist = min(gaps)
        if dist is None:
            dist = mpf(repr(_neighbor_distance(float(t_val))))
        radius = mpf("0.8") * min(dist, abs(rho_c - 1))
    M = min(N + 3, 12)
    a = taylor_at_zero(rho_c, M, ctx)
    with ctx.wp():
        res, c = invert_series(a, M)
    return LaurentExpansion(rho_c, res, tuple(c[:N]), radius, N), c


def build_expansion(rho, N: int, ctx: PrecisionContext, neighbor_ts=None) -> LaurentExpansion:
    exp, _ = _expansion_full(rho, N, ctx, neighbor_ts)
    return exp


def laurent_eval(s, exp: LaurentExpansion) -> mpc:
    """residue/(s-rho) + sum c_n (s-rho)^n inside the validity disk.

    Arithmetic runs at the ambient precision, so evaluate under the same
    context the expansion was built with.  The input is not re-rounded:
    passing rho itself hits the exact-pole guard rather than a rounded
    offset of it.
    """
    if not isinstance(s, (mpf, mpc)):
        s = mpc(s)
    h = s - exp.rho
    ah = abs(h)
    if not 0 < ah < exp.radius:
        raise OutsideDiskError(f"|s-rho| = {mp.nstr(ah, 6)} outside disk radius {mp.nstr(exp.radius, 6)}")
    acc = mpc(0)
    for c in reversed(exp.coeffs):
        acc = acc * h + c
    return exp.residue / h + acc


def tail_bound(c_extended: list, N: int, r, radius) -> mpf:
    """Geometric estimate of sum_{n>=N} |c_n| r^n, the tail left by a
    truncation keeping c_0..c_{N-1}.

    Models |c_n| <= B/radius^n with B calibrated on the computed
    coefficients c_N..c_{N+2}; the result is B q^N/(1-q), q = r/radius.
    The validity radius understates the distance to the nearest
    singularity, so q overstates the actual term ratio.
    """
    r = mpf(r)
    radius = mpf(radius)
    q = r / radius
    if not 0 < q < 1:
        raise RangeError("tail bound needs 0 < r < radius")
    top = min(len(c_extended), N + 3)
    B = mpf(0)
    for j in range(N, top):
        B = max(B, abs(c_extended[j]) * radius**j)
    if B == 0:
        B = max(abs(c) * radius**j for j, c in enumerate(c_extended))
    return B * q**N / (1 - q)


def residual_profile(rho, r, N_list, samples: int, ctx: PrecisionContext,
                     neighbor_ts=None) -> dict:
    """Max |1/zeta - truncated expansion| on the circle |s-rho| = r, for
    several truncation orders from one sample sweep."""
    if samples < 16:
        raise RangeError("residual sweep needs at least 16 samples")
    N_list = sorted(set(int(N) for N in N_list))
    if N_list[0] < 0:
        raise RangeError("truncation order must be >= 0")
    N_max = N_list[-1]
    exp, _ = _expansion_full(rho, N_max, ctx, neighbor_ts)
    with ctx.wp():
        r = mpf(r)
        if not 0 < r < exp.radius:
            raise OutsideDiskError(
                f"sweep radius {mp.nstr(r, 6)} outside disk radius {mp.nstr(exp.radius, 6)}"
            )
        points = [exp.rho + r * mp.exp(mpc(0, 2) * mp.pi * j / samples) for j in range(samples)]
        targets = [inverse_zeta(s, ctx) for s in points]
        out = {}
        for N in N_list:
            trunc = exp.truncated(N)
            worst = mpf(0)
            for s, target in zip(points, targets):
                worst = max(worst, abs(target - laurent_eval(s, trunc)))
            out[N] = worst
        return out


def reconstruction_residual(rho, r, N: int, samples: int, ctx: PrecisionContext,
                            neighbor_ts=None) -> mpf:
    """Max reconstruction error of the order-N expansion on |s-rho| = r."""
    return residual_profile(rho, r, [N], samples, ctx, neighbor_ts)[N]


# ----------------------------------------------------------------------
# Report assembly (consumed by the CLI)
# ----------------------------------------------------------------------


def _cplx_str(z, ctx: PrecisionContext) -> dict:
    z = mpc(z)
    return {"re": to_decimal(z.real, ctx), "im": to_decimal(z.imag, ctx)}


def expansion_report(index: int, rho, ctx: PrecisionContext, n_terms: int,
                     table: MobiusTable | None = None, checkpoints=DEFAULT_CHECKPOINTS,
                     phi_ns=(0, 1), residual_r=None, samples: int = 64,
                     neighbor_ts=None) -> dict:
    """JSON-ready expansion report: oracle coefficients, residual ladder,
    and coefficient-series diagnostics.  All numerics decimal strings."""
    exp, _ = _expansion_full(rho, n_terms, ctx, neighbor_ts)
    with ctx.wp():
        r = mpf(residual_r) if residual_r is not None else min(mpf(1) / 32, exp.radius / 2)
    residuals = residual_profile(rho, r, list(range(n_terms + 1)), samples, ctx, neighbor_ts)
    with ctx.wp():
        report = {
            "index": index,
            "rho": _cplx_str(exp.rho, ctx),
            "residue": _cplx_str(exp.residue, ctx),
            "radius": to_decimal(exp.radius, ctx),
            "n_terms": exp.n_terms,
            "coeffs": [_cplx_str(cn, ctx) for cn in exp.coeffs],
            "residual_radius": to_decimal(r, ctx),
            "residuals": {str(N): to_decimal(v, ctx) for N, v in residuals.items()},
            "phi_diagnostics": {},
        }
    if table is not None:
        checkpoints = [K for K in checkpoints if K <= table.limit]
        diag = phi_series_multi(rho, phi_ns, checkpoints, table, ctx, residue_val=exp.residue)
        with ctx.wp():
            for n, series in diag.items():
                # oracle coefficient under the c_n = (-1)^n phi_n / n! mapping
                oracle = exp.coeffs[n] if n < len(exp.coeffs) else None
                dist = []
                if oracle is not None:
                    fact = mp.factorial(n)
                    for v in series.smoothed:
                        mapped = (-1) ** n * v / fact
                        dist.append(to_decimal(abs(mapped - oracle), ctx))
                report["phi_diagnostics"][str(n)] = {
                    "checkpoints": list(series.checkpoints),
                    "raw": [_cplx_str(v, ctx) for v in series.raw],
                    "smoothed": [_cplx_str(v, ctx) for v in series.smoothed],
                    "oscillation": to_decimal(series.oscillation, ctx),
                    "distance_to_oracle": dist,
                }
    return report
