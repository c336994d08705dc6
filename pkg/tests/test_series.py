import random
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from zetakit.series import (
    KahanComplexSum,
    KahanSum,
    PartialSumSeries,
    build_partial_series,
)


def test_kahan_beats_plain_summation():
    """Compensated accumulation of ill-scaled doubles against the exact
    rational sum; plain += must not do better."""
    rng = random.Random(3)
    with mp.workprec(53):
        terms = []
        for _ in range(4000):
            num = rng.randint(-10**6, 10**6)
            den = 3 ** rng.randint(0, 12)
            terms.append(Fraction(num, den))
        exact = float(sum(terms))
        ks = KahanSum()
        plain = mpf(0)
        for fr in terms:
            x = mpf(fr.numerator) / fr.denominator
            ks.add(x)
            plain += x
        comp_err = abs(float(ks.total) - exact)
        plain_err = abs(float(plain) - exact)
        assert comp_err <= plain_err + 1e-18


def test_kahan_handles_cancellation():
    with mp.workprec(53):
        ks = KahanSum()
        for x in (mpf(1e100), mpf(1), mpf(-1e100)):
            ks.add(x)
        assert ks.total == 1


def test_complex_kahan_componentwise():
    with mp.workprec(53):
        ks = KahanComplexSum()
        ks.add(mpc(1e100, 2))
        ks.add(mpc(3, -1e50))
        ks.add(mpc(-1e100, 1e50))
        assert ks.total == mpc(3, 2)


def test_smoothing_window_is_trailing_quarter():
    with mp.workdps(20):
        raw = [mpf(x) for x in (1, 2, 3, 4, 5, 6, 7, 8)]
        series = build_partial_series((1, 2, 3, 4, 5, 6, 7, 8), raw)
        # window = max(1, ceil((i+1)/4)): i=3 -> 1 entry, i=7 -> 2 entries
        assert series.smoothed[3] == raw[3]
        assert abs(series.smoothed[7] - (raw[6] + raw[7]) / 2) < mpf(10) ** -18


def test_oscillation_spans_trailing_checkpoints():
    with mp.workdps(20):
        raw = [mpf(x) for x in (0, 10, 2, 5)]
        series = build_partial_series((10, 100, 1000, 10000), raw)
        # last max(2, ceil(4/4)) = 2 entries: |5 - 2|
        assert abs(series.oscillation - 3) < mpf(10) ** -18


def test_single_checkpoint_degenerates_cleanly():
    with mp.workdps(20):
        series = build_partial_series((100,), [mpf(7)])
        assert series.smoothed == (mpf(7),)
        assert series.oscillation == 0


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        PartialSumSeries(
            checkpoints=(1, 2),
            raw=(mpf(1),),
            smoothed=(mpf(1),),
            oscillation=mpf(0),
        )


def test_checkpoints_must_increase():
    with pytest.raises(ValueError):
        build_partial_series((100, 10), [mpf(1), mpf(2)])
