"""High-precision Riemann zeta toolkit.

Computes zeta and its derivatives on the strip, locates nontrivial
zeros, cross-checks the count by the argument principle, and builds the
Laurent expansion of 1/zeta at each zero two independent ways: from the
Taylor ring of zeta and from a Mobius-weighted coefficient series.
"""

from .errors import (
    CacheFormatError,
    ContourNearZeroError,
    GammaPoleError,
    GridTooCoarseError,
    LimitTooLargeError,
    NearZeroError,
    NoConvergenceError,
    NonIntegerWindingError,
    OutsideDiskError,
    PoleError,
    PrecisionEscalationError,
    RangeError,
    SuspectZeroError,
    UnknownIndexError,
    ZeroLeadingCoefficientError,
    ZetaKitError,
)
from .laurent import (
    LaurentExpansion,
    build_expansion,
    expansion_report,
    invert_series,
    laurent_eval,
    phi_series,
    phi_series_multi,
    reconstruction_residual,
    residual_profile,
    residue,
    tail_bound,
    taylor_at_zero,
    v_term,
)
from .mobius import MobiusTable, dirichlet_partial, mertens, sieve_mobius
from .precision import (
    DEFAULT_CONTEXT,
    PrecisionContext,
    agreement_digits,
    certified,
    log_gamma,
    to_decimal,
)
from .series import KahanComplexSum, KahanSum, PartialSumSeries, build_partial_series
from .stieltjes import StieltjesTable, bound_check, euler_gamma_partial, stieltjes_gamma
from .zeros import (
    CountReport,
    ZeroRecord,
    audit_zeros,
    count_by_argument,
    density_report,
    multiplicity_probe,
    read_cache,
    refine_zero,
    rvm_estimate,
    scan_with_count,
    scan_zeros,
    write_cache,
)
from .zeta import (
    ZetaValue,
    functional_equation_sides,
    hardy_Z,
    hardy_Z_fast,
    inverse_zeta,
    rs_error_bound,
    taylor_ring,
    theta,
    zeta,
    zeta_and_deriv_raw,
    zeta_deriv,
    zeta_logderiv,
)

__version__ = "0.1.0"

__all__ = [
    "CacheFormatError",
    "ContourNearZeroError",
    "CountReport",
    "DEFAULT_CONTEXT",
    "GammaPoleError",
    "GridTooCoarseError",
    "KahanComplexSum",
    "KahanSum",
    "LaurentExpansion",
    "LimitTooLargeError",
    "MobiusTable",
    "NearZeroError",
    "NoConvergenceError",
    "NonIntegerWindingError",
    "OutsideDiskError",
    "PartialSumSeries",
    "PoleError",
    "PrecisionContext",
    "PrecisionEscalationError",
    "RangeError",
    "StieltjesTable",
    "SuspectZeroError",
    "UnknownIndexError",
    "ZeroLeadingCoefficientError",
    "ZeroRecord",
    "ZetaKitError",
    "ZetaValue",
    "agreement_digits",
    "audit_zeros",
    "bound_check",
    "build_expansion",
    "build_partial_series",
    "certified",
    "count_by_argument",
    "density_report",
    "dirichlet_partial",
    "euler_gamma_partial",
    "expansion_report",
    "functional_equation_sides",
    "hardy_Z",
    "hardy_Z_fast",
    "invert_series",
    "inverse_zeta",
    "laurent_eval",
    "log_gamma",
    "mertens",
    "multiplicity_probe",
    "phi_series",
    "phi_series_multi",
    "read_cache",
    "reconstruction_residual",
    "refine_zero",
    "residual_profile",
    "residue",
    "rs_error_bound",
    "rvm_estimate",
    "scan_with_count",
    "scan_zeros",
    "sieve_mobius",
    "stieltjes_gamma",
    "tail_bound",
    "taylor_at_zero",
    "taylor_ring",
    "theta",
    "to_decimal",
    "v_term",
    "write_cache",
    "zeta",
    "zeta_and_deriv_raw",
    "zeta_deriv",
    "zeta_logderiv",
]
