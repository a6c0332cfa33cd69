import math
from fractions import Fraction

import pytest

from xorgens import statcheck
from xorgens.engine import xls, xrs
from xorgens.params import TABLE_ROWS, XorgensParams, lookup
from xorgens.statcheck import (
    binomial_tail,
    hamming_bound_scan,
    linearity_probe,
    low_weight_lag_correlation,
    monobit,
    weyl_lsb_period,
)


def test_binomial_tail_exact():
    assert binomial_tail(32, 4) == Fraction(1 + 32 + 496 + 4960 + 35960, 2**32)
    assert binomial_tail(8, 8) == 1
    assert binomial_tail(64, 0) == Fraction(1, 2**64)


def test_hamming_hand_example():
    y = xrs(xls(0x01, 1, w=8), 7, w=8)
    assert bin(y).count("1") == 2 <= 4
    assert xrs(xls(0, 1, w=8), 7, w=8) == 0


@pytest.mark.parametrize("p", [lookup(32, 4096), lookup(64, 128), XorgensParams(8, 2, 1, 1, 7, 1, 7)])
def test_hamming_scan_clean(p):
    assert hamming_bound_scan(p, 50_000) == 0


def test_hamming_scan_catches_a_broken_transform(monkeypatch):
    # complementing breaks the bound for low-weight x
    monkeypatch.setattr(statcheck, "xrs", lambda x, t, w=64: ~x & ((1 << w) - 1))
    assert hamming_bound_scan(lookup(32, 64), 1000) > 0


class TestLinearity:
    @pytest.mark.parametrize("p", TABLE_ROWS, ids=lambda p: f"w{p.w}-n{p.n}")
    def test_dichotomy(self, p):
        assert linearity_probe(p, 64) == (True, False)

    def test_zero_steps(self):
        assert linearity_probe(lookup(32, 64), 0) == (True, True)


def test_weyl_lsb_period():
    for p in TABLE_ROWS:
        assert weyl_lsb_period(p) == 2


class TestLagCorrelation:
    def test_empty(self):
        rep = low_weight_lag_correlation(lookup(32, 64), 0)
        assert rep.samples == 0
        assert rep.unconditional_rate is None
        assert rep.summary() == "no samples"

    def test_w32_rate(self):
        rep = low_weight_lag_correlation(lookup(32, 4096), 2_000_000)
        assert rep.threshold == 4
        assert rep.sufficient
        # observed count against a Poisson 5-sigma band around the exact rate
        mean = rep.samples * rep.expected_rate
        assert abs(rep.low_count - mean) < 5 * math.sqrt(mean)
        assert "P(low|low@r=128)" in rep.summary()

    def test_w64_insufficient(self):
        rep = low_weight_lag_correlation(lookup(64, 4096), 10_000)
        assert not rep.sufficient
        assert "insufficient samples" in rep.summary()


class TestMonobit:
    def test_generator(self):
        assert abs(monobit(lookup(32, 4096), 10**7)) < 4

    def test_zero_stub(self):
        z = monobit(lookup(32, 4096), 10_000, source=lambda: 0)
        assert z == pytest.approx(-100.0)

    def test_empty(self):
        with pytest.raises(ValueError):
            monobit(lookup(32, 64), 0)

    def test_partial_word(self):
        ones = iter([0xFFFFFFFF, 0x80000000])
        z = monobit(lookup(32, 64), 33, source=lambda: next(ones))
        assert z == pytest.approx((33 - 16.5) / math.sqrt(33 / 4))


def test_selftest_quick():
    rows = statcheck.selftest(quick=True)
    assert all(r.ok is not False for r in rows), [r for r in rows if r.ok is False]
    assert {r.name for r in rows} >= {"hamming-bound", "linearity", "weyl-lsb-period", "monobit"}


@pytest.mark.parametrize("w, mantissa, exponent", [(32, 1.0, -5), (64, 2.8, -10)])
def test_binomial_tail_at_quoted_exponent(w, mantissa, exponent):
    # the w=32 figure only agrees when rounded at its printed exponent:
    # 9.65e-6 is 0.97e-5, which prints as 1.0e-5
    tail = float(binomial_tail(w, w // 8))
    assert round(tail / 10.0**exponent, 1) == mantissa
