"""Parameter sets for the generalised xorshift recurrence.

``TABLE_ROWS`` holds the published optimal generators for n a power of two
(32-bit and 64-bit words).  :func:`validate` checks the structural
selection criteria and reports every violation it finds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

__all__ = ["XorgensParams", "Violation", "TABLE_ROWS", "UnlistedRowError", "lookup", "rows", "validate"]


class UnlistedRowError(KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unlisted parameter row"


@dataclass(frozen=True)
class XorgensParams:
    """One parameter row (w, r, s, a, b, c, d) with its δ and, if known, W.

    ``delta`` defaults to min(a, b, c, d); table rows store the published
    value so that :func:`validate` can cross-check it.
    """

    w: int
    r: int
    s: int
    a: int
    b: int
    c: int
    d: int
    delta: int = field(default=None)  # type: ignore[assignment]
    weight: int | None = None

    def __post_init__(self):
        if self.delta is None:
            object.__setattr__(self, "delta", min(self.a, self.b, self.c, self.d))

    @property
    def n(self) -> int:
        return self.r * self.w

    @property
    def quintuple(self) -> tuple[int, int, int, int, int]:
        return (self.s, self.a, self.b, self.c, self.d)

    def key_values(self) -> str:
        return (
            f"w={self.w} n={self.n} r={self.r} s={self.s} a={self.a} b={self.b} "
            f"c={self.c} d={self.d} delta={self.delta} W={self.weight if self.weight is not None else '-'}"
        )


def _row(w, n, r, s, a, b, c, d, delta, weight):
    p = XorgensParams(w, r, s, a, b, c, d, delta, weight)
    assert p.n == n
    return p


TABLE_ROWS: tuple[XorgensParams, ...] = (
    # 32-bit generators:  w, n, r, s, a, b, c, d, delta, W
    _row(32, 64, 2, 1, 17, 14, 12, 19, 12, 31),
    _row(32, 128, 4, 3, 15, 14, 12, 17, 12, 55),
    _row(32, 256, 8, 3, 18, 13, 14, 15, 13, 109),
    _row(32, 512, 16, 1, 17, 15, 13, 14, 13, 185),
    _row(32, 1024, 32, 15, 19, 11, 13, 16, 11, 225),
    _row(32, 2048, 64, 59, 19, 12, 14, 15, 12, 213),
    _row(32, 4096, 128, 95, 17, 12, 13, 15, 12, 251),
    # 64-bit generators
    _row(64, 128, 2, 1, 33, 31, 28, 29, 28, 65),
    _row(64, 256, 4, 3, 37, 27, 29, 33, 27, 127),
    _row(64, 512, 8, 1, 37, 26, 29, 34, 26, 231),
    _row(64, 1024, 16, 7, 34, 29, 25, 31, 25, 439),
    _row(64, 2048, 32, 1, 35, 27, 26, 37, 26, 745),
    _row(64, 4096, 64, 53, 33, 26, 27, 29, 26, 961),
)

_BY_KEY = {(p.w, p.n): p for p in TABLE_ROWS}


def lookup(w: int, n: int) -> XorgensParams:
    try:
        return _BY_KEY[(w, n)]
    except KeyError:
        raise UnlistedRowError(f"unlisted parameter row (w={w}, n={n})") from None


def rows(w: int | None = None, n: int | None = None) -> list[XorgensParams]:
    return [p for p in TABLE_ROWS if (w is None or p.w == w) and (n is None or p.n == n)]


@dataclass(frozen=True)
class Violation:
    criterion: str
    detail: str

    def __str__(self) -> str:
        return f"{self.criterion}: {self.detail}"


def validate(p: XorgensParams) -> list[Violation]:
    """All structural violations of ``p``; an empty list means it is admissible.

    Criterion names follow the selection rules: ``criterion-1`` (a+b <= w,
    c+d <= w), ``criterion-2`` (coprime shift pairs), ``criterion-3``
    (a >= b), ``criterion-4`` (c <= d).  ``shape`` covers the remaining
    invariants: shift ranges, lags, and the stored δ.
    """
    out: list[Violation] = []
    if p.w < 2:
        out.append(Violation("shape", f"word length {p.w} < 2"))
    if p.r < 2:
        out.append(Violation("shape", f"r={p.r} < 2"))
    if not 0 < p.s < p.r:
        out.append(Violation("shape", f"lag s={p.s} outside (0, r={p.r})"))
    elif gcd(p.r, p.s) != 1:
        out.append(Violation("shape", f"gcd(r, s) = gcd({p.r}, {p.s}) = {gcd(p.r, p.s)}"))
    for name in "abcd":
        t = getattr(p, name)
        if not 1 <= t < p.w:
            out.append(Violation("shape", f"shift {name}={t} outside [1, {p.w})"))
    if p.a + p.b > p.w:
        out.append(Violation("criterion-1", f"a+b = {p.a + p.b} > w = {p.w}"))
    if p.c + p.d > p.w:
        out.append(Violation("criterion-1", f"c+d = {p.c + p.d} > w = {p.w}"))
    if gcd(p.a, p.b) != 1:
        out.append(Violation("criterion-2", f"gcd(a, b) = gcd({p.a}, {p.b}) = {gcd(p.a, p.b)}"))
    if gcd(p.c, p.d) != 1:
        out.append(Violation("criterion-2", f"gcd(c, d) = gcd({p.c}, {p.d}) = {gcd(p.c, p.d)}"))
    if p.a < p.b:
        out.append(Violation("criterion-3", f"a = {p.a} < b = {p.b}"))
    if p.c > p.d:
        out.append(Violation("criterion-4", f"c = {p.c} > d = {p.d}"))
    if p.delta != min(p.a, p.b, p.c, p.d):
        out.append(Violation("shape", f"stored delta {p.delta} != min(a,b,c,d) = {min(p.a, p.b, p.c, p.d)}"))
    return out
