"""Characteristic polynomials of xorgens recurrences.

The companion matrix is never built.  Instead one output bit of the raw
recurrence is fed to Berlekamp-Massey.  That bit sequence is annihilated
by P(z), so its minimal polynomial divides P(z); when the recovered
polynomial reaches degree n it *is* P(z).  When every attempt stays below
degree n, P(z) cannot be irreducible and the parameters are rejected.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterable

from . import engine
from .factors import FactorTable, load_table
from .gf2poly import Gf2Poly, is_irreducible, is_primitive
from .params import XorgensParams, lookup, validate

__all__ = [
    "Verdict",
    "CharPolyReport",
    "VerificationError",
    "berlekamp_massey",
    "minimal_polynomial",
    "char_poly",
    "verify_row",
    "raw_bit_sequence",
]

ANALYSIS_SEED = 0xA11A_1515_C0DE_F00D
ATTEMPTS = 8
SLACK_BITS = 64


class Verdict(str, enum.Enum):
    PRIMITIVE = "primitive"
    NOT_PRIMITIVE = "not-primitive"
    NOT_FULL_DEGREE = "not-full-degree"
    UNCHECKED = "unchecked"


class VerificationError(Exception):
    def __init__(self, message: str, report: "CharPolyReport"):
        super().__init__(message)
        self.report = report


@dataclass
class CharPolyReport:
    params: XorgensParams
    poly: Gf2Poly
    verdict: Verdict
    irreducible: bool | None = None
    attempts: int = 1
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.poly.degree or 0

    @property
    def weight(self) -> int:
        return self.poly.weight

    @property
    def full_degree(self) -> bool:
        return self.degree == self.params.n

    @property
    def primitive(self) -> bool:
        return self.verdict is Verdict.PRIMITIVE

    def summary(self) -> str:
        p = self.params
        irr = "-" if self.irreducible is None else ("yes" if self.irreducible else "no")
        return (
            f"w={p.w} n={p.n} degree={self.degree} W={self.weight} irreducible={irr} "
            f"verdict={self.verdict.value} elapsed={self.elapsed:.3f}s"
        )


def _bm(bits: Iterable[int]) -> tuple[int, int]:
    """Berlekamp-Massey over GF(2); returns (connection polynomial bits, L)."""
    c, b = 1, 1
    length, shift = 0, 1
    window = 0  # bit j holds s[N-j]
    for n, bit in enumerate(bits):
        window = (window << 1) | (bit & 1)
        if (c & window).bit_count() & 1:
            t = c
            c ^= b << shift
            if 2 * length <= n:
                length = n + 1 - length
                b = t
                shift = 1
            else:
                shift += 1
        else:
            shift += 1
    return c, length


def berlekamp_massey(bits: Iterable[int]) -> Gf2Poly:
    """Connection polynomial C with C_0 = 1 and sum_j C_j s[k-j] = 0 for k >= L."""
    return Gf2Poly(_bm(bits)[0])


def minimal_polynomial(bits: Iterable[int]) -> Gf2Poly:
    """Minimal polynomial in forward form: sum_j c_j s[k+j] = 0, degree = L."""
    c, length = _bm(bits)
    return Gf2Poly(c).reciprocal(length)


def raw_bit_sequence(params: XorgensParams, seed_value: int, bit: int, count: int) -> list[int]:
    """Bit ``bit`` of ``count`` successive raw words from an expander-filled state."""
    mask = (1 << params.w) - 1
    gen = engine.expander(seed_value)
    words = [next(gen)[0] & mask for _ in range(params.r)]
    if not any(words):
        words[0] = 1
    state = engine.GeneratorState(params, words)
    return [(v >> bit) & 1 for v in state.raw_words(count)]


def char_poly(
    params: XorgensParams,
    factors: FactorTable | None = None,
    *,
    attempts: int = ATTEMPTS,
) -> CharPolyReport:
    """Recover P(z) for ``params`` and, given ``factors``, decide primitivity."""
    problems = [v for v in validate(params) if v.criterion == "shape"]
    if problems:
        raise ValueError("invalid parameters: " + "; ".join(map(str, problems)))
    start = time.perf_counter()
    n = params.n
    best = Gf2Poly(1)
    used = 0
    for attempt in range(attempts):
        used = attempt + 1
        bit = (attempt * 5) % params.w
        seq = raw_bit_sequence(params, ANALYSIS_SEED + attempt, bit, 2 * n + SLACK_BITS)
        poly = minimal_polynomial(seq)
        if (poly.degree or 0) > (best.degree or 0):
            best = poly
        if poly.degree == n:
            break
    if best.degree != n:
        return CharPolyReport(
            params, best, Verdict.NOT_FULL_DEGREE, irreducible=False, attempts=used,
            elapsed=time.perf_counter() - start,
        )
    if factors is None:
        return CharPolyReport(
            params, best, Verdict.UNCHECKED, attempts=used, elapsed=time.perf_counter() - start
        )
    irreducible = is_irreducible(best)
    if irreducible and is_primitive(best, factors):
        verdict = Verdict.PRIMITIVE
    else:
        verdict = Verdict.NOT_PRIMITIVE
    return CharPolyReport(
        params, best, verdict, irreducible=irreducible, attempts=used,
        elapsed=time.perf_counter() - start,
    )


def verify_row(w: int, n: int, factors: FactorTable | None = None, factors_path=None) -> CharPolyReport:
    """Recompute a table row and raise VerificationError on any mismatch."""
    params = lookup(w, n)
    if factors is None:
        factors = load_table(n, factors_path)
    report = char_poly(params, factors)
    if report.degree != n:
        raise VerificationError(f"degree {report.degree} != n = {n}", report)
    if report.weight != params.weight:
        raise VerificationError(f"weight W={report.weight} != table W={params.weight}", report)
    if params.delta != min(params.a, params.b, params.c, params.d):
        raise VerificationError(f"table delta {params.delta} != min(a,b,c,d)", report)
    if not report.primitive:
        raise VerificationError(f"characteristic polynomial is {report.verdict.value}", report)
    return report
