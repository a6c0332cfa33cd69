"""The xorgens generator: a two-lag xorshift recurrence plus a Weyl combiner.

The raw recurrence is

    x[k] = x[k-r](I + L^a)(I + R^b)  xor  x[k-s](I + L^c)(I + R^d)

with words treated as row vectors, so x(I + L^t) is ``x ^ (x << t)`` and
x(I + R^t) is ``x ^ (x >> t)``.  The last r words live in a circular array.

Output words are ``(v + x[k]) mod 2^w`` where v = weyl ^ (weyl >> gamma),
and weyl advances by an odd constant omega each call.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterator, Sequence

from .params import XorgensParams, validate

__all__ = [
    "GeneratorState",
    "SUPPORTED_W",
    "SEED_OMEGA",
    "xls",
    "xrs",
    "omega_for",
    "gamma_for",
    "expander",
    "seed",
]

SUPPORTED_W = (32, 64)

_MASK64 = (1 << 64) - 1
_HALF53 = 2.0**-53
_ZERO_SEED_REMAP = 0x2545F4914F6CDD1D


def xls(x, t: int, w: int = 64):
    """x(I + L^t): xor of x with x shifted left t places, truncated to w bits.

    Works on Python ints and on numpy unsigned arrays alike.
    """
    return (x ^ (x << t)) & ((1 << w) - 1)


def xrs(x, t: int, w: int = 64):
    """x(I + R^t): xor of x with x shifted right t places."""
    return x ^ (x >> t)


def omega_for(w: int) -> int:
    """Nearest odd integer to 2^(w-1) (sqrt(5) - 1)."""
    if w not in SUPPORTED_W:
        raise ValueError(f"unsupported word length {w}; expected one of {SUPPORTED_W}")
    # floor(2^(w-1) sqrt 5) is exact via isqrt; the irrational target is never an integer
    base = isqrt(5 << (2 * (w - 1))) - (1 << (w - 1))
    return base if base & 1 else base + 1


def gamma_for(w: int) -> int:
    if w not in SUPPORTED_W:
        raise ValueError(f"unsupported word length {w}; expected one of {SUPPORTED_W}")
    return w // 2


SEED_OMEGA = omega_for(64)


def expander(seed_value: int) -> Iterator[tuple[int, int]]:
    """64-bit xorshift (13, 7, 17) plus Weyl sequence, used to fill states.

    Yields ``(output, t)`` pairs where output = (u + t) mod 2^64 and t is the
    Weyl accumulator after the step.
    """
    u = (seed_value & _MASK64) ^ SEED_OMEGA
    if u == 0:
        u = _ZERO_SEED_REMAP
    t = 0
    while True:
        u ^= (u << 13) & _MASK64
        u ^= u >> 7
        u ^= (u << 17) & _MASK64
        t = (t + SEED_OMEGA) & _MASK64
        yield (u + t) & _MASK64, t


def _check_shape(p: XorgensParams) -> None:
    if p.w < 2 or p.r < 2 or not 0 < p.s < p.r:
        raise ValueError(f"bad lags or word length in {p}")
    for name in "abcd":
        t = getattr(p, name)
        if not 1 <= t < p.w:
            raise ValueError(f"shift {name}={t} outside [1, {p.w})")


class GeneratorState:
    """Mutable generator state: r words, circular index, Weyl word.

    ``x[idx]`` always holds the oldest word x[k-r].  ``omega``/``gamma``
    default to the constants for w in {32, 64}; for other (toy) widths they
    stay None and only the raw recurrence is available.
    """

    __slots__ = ("params", "x", "idx", "weyl", "omega", "gamma", "_mask", "_lag")

    def __init__(
        self,
        params: XorgensParams,
        words: Sequence[int],
        *,
        idx: int = 0,
        weyl: int = 0,
        omega: int | None = None,
        gamma: int | None = None,
    ):
        _check_shape(params)
        if len(words) != params.r:
            raise ValueError(f"expected {params.r} state words, got {len(words)}")
        mask = (1 << params.w) - 1
        if any(not 0 <= v <= mask for v in words):
            raise ValueError(f"state words must fit in {params.w} bits")
        if not 0 <= idx < params.r:
            raise ValueError(f"idx {idx} outside [0, {params.r})")
        if omega is None and params.w in SUPPORTED_W:
            omega = omega_for(params.w)
        if gamma is None and params.w in SUPPORTED_W:
            gamma = gamma_for(params.w)
        if omega is not None and omega & 1 == 0:
            raise ValueError("omega must be odd")
        if gamma is not None and not 1 <= gamma < params.w:
            raise ValueError(f"gamma {gamma} outside [1, {params.w})")
        self.params = params
        self.x = list(words)
        self.idx = idx
        self.weyl = weyl & mask
        self.omega = None if omega is None else omega & mask
        self.gamma = gamma
        self._mask = mask
        self._lag = params.r - params.s

    def copy(self) -> "GeneratorState":
        return GeneratorState(
            self.params, self.x, idx=self.idx, weyl=self.weyl, omega=self.omega, gamma=self.gamma
        )

    def words(self) -> list[int]:
        """State words oldest first: x[k-r], ..., x[k-1]."""
        return self.x[self.idx :] + self.x[: self.idx]

    def step_raw(self) -> int:
        p = self.params
        x, i, mask = self.x, self.idx, self._mask
        j = i + self._lag
        if j >= p.r:
            j -= p.r
        t = x[i]
        t ^= (t << p.a) & mask
        t ^= t >> p.b
        v = x[j]
        v ^= (v << p.c) & mask
        v ^= v >> p.d
        t ^= v
        x[i] = t
        i += 1
        self.idx = 0 if i == p.r else i
        return t

    def raw_words(self, count: int) -> list[int]:
        p = self.params
        x, i, mask, r = self.x, self.idx, self._mask, p.r
        a, b, c, d, lag = p.a, p.b, p.c, p.d, self._lag
        out = [0] * count
        for k in range(count):
            j = i + lag
            if j >= r:
                j -= r
            t = x[i]
            t ^= (t << a) & mask
            t ^= t >> b
            v = x[j]
            v ^= (v << c) & mask
            v ^= v >> d
            t ^= v
            x[i] = t
            out[k] = t
            i += 1
            if i == r:
                i = 0
        self.idx = i
        return out

    def _require_weyl(self) -> None:
        if self.omega is None or self.gamma is None:
            raise ValueError(f"no Weyl constants for word length {self.params.w}")

    def next_word(self) -> int:
        self._require_weyl()
        mask = self._mask
        self.weyl = wy = (self.weyl + self.omega) & mask
        return ((wy ^ (wy >> self.gamma)) + self.step_raw()) & mask

    def next_words(self, count: int) -> list[int]:
        self._require_weyl()
        p = self.params
        x, i, mask, r = self.x, self.idx, self._mask, p.r
        a, b, c, d, lag = p.a, p.b, p.c, p.d, self._lag
        wy, omega, gamma = self.weyl, self.omega, self.gamma
        out = [0] * count
        for k in range(count):
            j = i + lag
            if j >= r:
                j -= r
            t = x[i]
            t ^= (t << a) & mask
            t ^= t >> b
            v = x[j]
            v ^= (v << c) & mask
            v ^= v >> d
            t ^= v
            x[i] = t
            i += 1
            if i == r:
                i = 0
            wy = (wy + omega) & mask
            out[k] = ((wy ^ (wy >> gamma)) + t) & mask
        self.idx = i
        self.weyl = wy
        return out

    def next_real(self) -> float:
        """Uniform double in (0, 1) from the top 53 output bits.

        y maps to (y + 1/2) 2^-53.  In the upper half that midpoint is not a
        double, so it is truncated to y 2^-53; the result stays below 1.
        """
        if self.params.w >= 53:
            y = self.next_word() >> (self.params.w - 53)
        else:
            hi = self.next_word()
            lo = self.next_word()
            y = ((hi << self.params.w) | lo) >> (2 * self.params.w - 53)
        return _to_unit(y)

    def next_reals(self, count: int) -> list[float]:
        return [self.next_real() for _ in range(count)]


def _to_unit(y: int) -> float:
    if y < 1 << 52:
        return (y + 0.5) * _HALF53
    return y * _HALF53


def seed(params: XorgensParams, seed_value: int) -> GeneratorState:
    """Deterministically fill a state from a 64-bit seed.

    The expander's first 2r outputs are discarded, the next r (truncated to
    w bits) become the state, and its Weyl accumulator seeds the Weyl word.
    """
    problems = validate(params)
    if problems:
        raise ValueError("invalid parameters: " + "; ".join(map(str, problems)))
    if params.w not in SUPPORTED_W:
        raise ValueError(f"unsupported word length {params.w}; expected one of {SUPPORTED_W}")
    mask = (1 << params.w) - 1
    gen = expander(seed_value)
    for _ in range(2 * params.r):
        next(gen)
    words = []
    t = 0
    for _ in range(params.r):
        out, t = next(gen)
        words.append(out & mask)
    if not any(words):
        words[0] = 1
    return GeneratorState(params, words, weyl=t & mask)
