"""Diagnostics aimed at the known weaknesses of xorshift recurrences.

These are not a general statistical battery.  They check the Hamming-weight
growth bound, the F2-linearity of the raw recurrence (and its absence once
the Weyl combiner is applied), the low-weight lag correlation, and a
monobit sanity test on the combined output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import engine
from .engine import GeneratorState, xls, xrs
from .params import TABLE_ROWS, XorgensParams

__all__ = [
    "binomial_tail",
    "hamming_bound_scan",
    "linearity_probe",
    "LagCorrelationReport",
    "low_weight_lag_correlation",
    "monobit",
    "weyl_lsb_period",
    "selftest",
]

_CHUNK = 1 << 16
_U64_MAX = np.iinfo(np.uint64).max
_PROBE_SEEDS = (0x1111_2222_3333_4444, 0x5555_6666_7777_8888)


def binomial_tail(w: int, threshold: int) -> Fraction:
    """Exact P(||x|| <= threshold) for x uniform on w-bit words."""
    return Fraction(sum(math.comb(w, i) for i in range(threshold + 1)), 1 << w)


def _popcount(x: np.ndarray) -> np.ndarray:
    return np.bitwise_count(x).astype(np.int64)


def hamming_bound_scan(params: XorgensParams, trials: int, seed: int = 0) -> int:
    """Count violations of ||x(I+L^a)|| <= 2||x||, ||x(I+R^b)|| <= 2||x|| and
    ||x(I+L^a)(I+R^b)|| <= 4||x|| (and the same for c, d) over random words."""
    rng = np.random.default_rng(seed)
    w = params.w
    mask = (1 << w) - 1
    violations = 0
    done = 0
    while done < trials:
        size = min(_CHUNK, trials - done)
        x = rng.integers(0, _U64_MAX, size=size, dtype=np.uint64, endpoint=True) & np.uint64(mask)
        px = _popcount(x)
        for left, right in ((params.a, params.b), (params.c, params.d)):
            lx = xls(x, left, w)
            violations += int(np.count_nonzero(_popcount(lx) > 2 * px))
            violations += int(np.count_nonzero(_popcount(xrs(x, right, w)) > 2 * px))
            violations += int(np.count_nonzero(_popcount(xrs(lx, right, w)) > 4 * px))
        done += size
    return violations


def _probe_words(params: XorgensParams, seed_value: int) -> list[int]:
    mask = (1 << params.w) - 1
    gen = engine.expander(seed_value)
    words = [next(gen)[0] & mask for _ in range(params.r)]
    if not any(words):
        words[0] = 1
    return words


def linearity_probe(params: XorgensParams, steps: int) -> tuple[bool, bool]:
    """(raw_linear, combined_linear) for states S, S', S ^ S' with equal Weyl seeds."""
    s1 = _probe_words(params, _PROBE_SEEDS[0])
    s2 = _probe_words(params, _PROBE_SEEDS[1])
    s3 = [u ^ v for u, v in zip(s1, s2)]
    ga, gb, gc = (GeneratorState(params, s) for s in (s1, s2, s3))
    raw = all(x ^ y == z for x, y, z in zip(ga.raw_words(steps), gb.raw_words(steps), gc.raw_words(steps)))
    ga, gb, gc = (GeneratorState(params, s) for s in (s1, s2, s3))
    combined = all(
        x ^ y == z for x, y, z in zip(ga.next_words(steps), gb.next_words(steps), gc.next_words(steps))
    )
    return raw, combined


@dataclass
class LagCorrelationReport:
    samples: int
    threshold: int
    lags: tuple[int, int]
    expected_rate: float
    low_count: int = 0
    lag_r_pairs: int = 0
    lag_s_pairs: int = 0
    min_expected_events: int = 10

    @property
    def unconditional_rate(self) -> float | None:
        return self.low_count / self.samples if self.samples else None

    def conditional_rate(self, which: str) -> float | None:
        """P(low at k | low at k-lag) for lag 'r' or 's'."""
        pairs = self.lag_r_pairs if which == "r" else self.lag_s_pairs
        return pairs / self.low_count if self.low_count else None

    @property
    def sufficient(self) -> bool:
        return self.samples * self.expected_rate >= self.min_expected_events

    def summary(self) -> str:
        if not self.samples:
            return "no samples"
        def fmt(v):
            return "-" if v is None else f"{v:.3g}"
        note = "" if self.sufficient else " (insufficient samples)"
        return (
            f"threshold={self.threshold} expected={self.expected_rate:.3g} "
            f"observed={fmt(self.unconditional_rate)} ({self.low_count}/{self.samples}) "
            f"P(low|low@r={self.lags[0]})={fmt(self.conditional_rate('r'))} "
            f"P(low|low@s={self.lags[1]})={fmt(self.conditional_rate('s'))}{note}"
        )


def low_weight_lag_correlation(
    params: XorgensParams, samples: int, threshold: int | None = None, seed: int = 1
) -> LagCorrelationReport:
    """Measure how often a low-weight raw word follows one r or s steps earlier."""
    if threshold is None:
        threshold = params.w // 8
    report = LagCorrelationReport(
        samples, threshold, (params.r, params.s), float(binomial_tail(params.w, threshold))
    )
    if samples <= 0:
        report.samples = 0
        return report
    state = engine.seed(params, seed)
    words = np.array(state.raw_words(samples), dtype=np.uint64)
    low = _popcount(words) <= threshold
    report.low_count = int(low.sum())
    r, s = params.r, params.s
    report.lag_r_pairs = int(np.count_nonzero(low[r:] & low[:-r])) if samples > r else 0
    report.lag_s_pairs = int(np.count_nonzero(low[s:] & low[:-s])) if samples > s else 0
    return report


def monobit(
    params: XorgensParams, bits: int, seed: int = 1, source: Callable[[], int] | None = None
) -> float:
    """z-score of the proportion of ones in the first ``bits`` output bits.

    ``source`` replaces the generator with any callable returning w-bit words.
    """
    if bits <= 0:
        raise ValueError("monobit needs at least one bit")
    w = params.w
    nwords, rem = divmod(bits, w)
    if source is None:
        state = engine.seed(params, seed)
        words = state.next_words(nwords + (1 if rem else 0))
    else:
        words = [source() for _ in range(nwords + (1 if rem else 0))]
    ones = sum(v.bit_count() for v in words[:nwords])
    if rem:
        ones += (words[-1] >> (w - rem)).bit_count()
    return (ones - bits / 2) / math.sqrt(bits / 4)


def weyl_lsb_period(params: XorgensParams, steps: int = 64, seed: int = 1) -> int:
    """Smallest p such that the Weyl word's low bit repeats with period p."""
    state = engine.seed(params, seed)
    lsb = []
    for _ in range(steps):
        state.next_word()
        lsb.append(state.weyl & 1)
    for p in range(1, steps):
        if all(lsb[i] == lsb[i + p] for i in range(steps - p)):
            return p
    return steps


@dataclass
class CheckRow:
    name: str
    row: str
    value: str
    ok: bool | None  # None: diagnostic only


def selftest(quick: bool = False) -> list[CheckRow]:
    trials = 10_000 if quick else 1_000_000
    lag_samples = 20_000 if quick else 1_000_000
    mono_bits = 100_000 if quick else 10_000_000
    out: list[CheckRow] = []
    for p in TABLE_ROWS:
        tag = f"w={p.w} n={p.n}"
        v = hamming_bound_scan(p, trials)
        out.append(CheckRow("hamming-bound", tag, f"{v} violations / {trials}", v == 0))
        raw, combined = linearity_probe(p, 64)
        out.append(CheckRow("linearity", tag, f"raw={raw} combined={combined}", raw and not combined))
        period = weyl_lsb_period(p)
        out.append(CheckRow("weyl-lsb-period", tag, str(period), period == 2))
    for w in (32, 64):
        p = max((q for q in TABLE_ROWS if q.w == w), key=lambda q: q.n)
        tag = f"w={p.w} n={p.n}"
        z = monobit(p, mono_bits)
        out.append(CheckRow("monobit", tag, f"z={z:+.3f} over {mono_bits} bits", abs(z) < 4))
        rep = low_weight_lag_correlation(p, lag_samples)
        out.append(CheckRow("low-weight-lags", tag, rep.summary(), None))
    for w, quoted in ((32, 1.0e-5), (64, 2.8e-10)):
        tail = float(binomial_tail(w, w // 8))
        out.append(CheckRow("binomial-tail", f"w={w}", f"{tail:.4g} (quoted {quoted:.1e})", None))
    return out
