import pytest
from mpmath import mp, mpc, mpf

import shared
from zetakit.errors import CacheFormatError, RangeError
from zetakit.precision import PrecisionContext
from zetakit.zeros import (
    STATUS_REFINED,
    STATUS_SIMPLE,
    audit_zeros,
    count_by_argument,
    density_report,
    multiplicity_probe,
    read_cache,
    refine_zero,
    rvm_estimate,
    scan_zeros,
    write_cache,
)

CTX = PrecisionContext.from_digits(30)

# Ordinates of the first five zeros, accurate well past 25 digits.
T_FIRST_FIVE = (
    "14.134725141734693790457251983562",
    "21.022039638771554992628479593897",
    "25.010857580145688763213790992563",
    "30.424876125859513210311897530584",
    "32.935061587739189690662368964074",
)


def test_scan_to_35_finds_five_zeros():
    records, n_winding = shared.zeros_to(35)
    assert len(records) == 5
    assert n_winding == 5
    with CTX.wp():
        for rec, ref in zip(records, T_FIRST_FIVE):
            assert abs(rec.t - mpf(ref)) < mpf(10) ** -25
            assert rec.rho.real == mpf(1) / 2
            assert rec.zeta_at_rho_abs < mpf(10) ** -28
            assert rec.status == STATUS_REFINED
    assert [rec.index for rec in records] == [1, 2, 3, 4, 5]


def test_refine_zero_from_rough_seed():
    rec = refine_zero(14.13, CTX)
    with CTX.wp():
        assert abs(rec.t - mpf(T_FIRST_FIVE[0])) < mpf(10) ** -25


def test_scan_range_validation():
    with pytest.raises(RangeError):
        scan_zeros(1001, CTX)
    with pytest.raises(RangeError):
        scan_zeros(5, CTX)


def test_count_by_argument_low_heights():
    assert count_by_argument(15, CTX) == 1
    assert count_by_argument(30, CTX) == 3


def test_rvm_estimate_reference_points():
    with mp.workdps(30):
        # Closed form at T = 2*pi: the main terms cancel to -1/8.
        assert abs(rvm_estimate(2 * mp.pi) + mpf("0.125")) < mpf(10) ** -9
        assert abs(rvm_estimate(100) - mpf("29.0023440")) < mpf(10) ** -6
    with pytest.raises(RangeError):
        rvm_estimate(1)


def test_multiplicity_probe_counts():
    records, _ = shared.zeros_to(35)
    rho1 = records[0].rho
    assert multiplicity_probe(rho1, mpf(1) / 32, CTX) == 1
    assert multiplicity_probe(rho1, mpf(1) / 4, CTX) == 1
    # Disk well away from any zero or pole.
    assert multiplicity_probe(mpc(mpf(1) / 2, 16.5), mpf(1) / 32, CTX) == 0


def test_multiplicity_probe_radius_guard():
    with pytest.raises(RangeError):
        multiplicity_probe(mpc(0.5, 14.1), 0.3, CTX)
    with pytest.raises(RangeError):
        multiplicity_probe(mpc(0.5, 14.1), 0, CTX)


def test_audit_marks_zeros_simple():
    records, _ = shared.zeros_to(35)
    audited = audit_zeros(records, CTX, workers=shared.workers())
    assert len(audited) == len(records)
    for rec in audited:
        assert rec.status == STATUS_SIMPLE
        assert rec.winding == 1
        assert abs(rec.zeta_prime_at_rho) > mpf(10) ** -6


def test_density_report_flags_disagreement():
    records, n_winding = shared.zeros_to(35)
    clean = density_report(35, CTX, records=records, n_winding=n_winding)
    assert not clean.flagged
    assert clean.n_sign_changes == clean.n_winding == 5
    bad = density_report(35, CTX, records=records, n_winding=n_winding + 1)
    assert bad.flagged


def test_density_report_empty_range():
    report = density_report(10, CTX, records=[], n_winding=0)
    assert report.flagged
    assert report.ratio_simple == 0


def test_cache_round_trip(tmp_path):
    records, _ = shared.zeros_to(35)
    path = str(tmp_path / "zeros.cache")
    write_cache(path, records, CTX)
    digits, loaded = read_cache(path)
    assert digits == 30
    assert len(loaded) == len(records)
    with CTX.wp():
        for a, b in zip(records, loaded):
            assert a.index == b.index
            assert abs(a.t - b.t) < mpf(10) ** -32
            assert abs(abs(a.zeta_prime_at_rho) - abs(b.zeta_prime_at_rho)) < mpf(10) ** -32
            assert a.status == b.status


def test_cache_header_validation(tmp_path):
    path = tmp_path / "bad.cache"
    path.write_text("# something else\n")
    with pytest.raises(CacheFormatError):
        read_cache(str(path))


def test_cache_field_validation(tmp_path):
    path = tmp_path / "bad2.cache"
    path.write_text("# zeta-zeros v1 digits=30\n1,14.13,0.79\n")
    with pytest.raises(CacheFormatError):
        read_cache(str(path))


def test_cache_monotonicity_validation(tmp_path):
    path = tmp_path / "bad3.cache"
    path.write_text(
        "# zeta-zeros v1 digits=30\n"
        "1,21.0,1.1,0,refined\n"
        "2,14.1,0.79,0,refined\n"
    )
    with pytest.raises(CacheFormatError):
        read_cache(str(path))
