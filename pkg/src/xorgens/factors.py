"""Prime factorisations of 2^n - 1.

The tables are shipped as data (``factors.txt``) and checked every time
they are loaded: the product must reconstruct 2^n - 1 exactly and every
listed prime must survive 64 strong-pseudoprime rounds.  Nothing here
factors integers; for n a power of two the entries are the known prime
factors of the Fermat numbers F_0 ... F_{k-1}.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = [
    "FactorTable",
    "FactorTableError",
    "FactorFileFormatError",
    "FactorTableIntegrityError",
    "UnsupportedExponentError",
    "SUPPORTED_N",
    "load_table",
    "load_file",
    "parse_factor_text",
    "is_probable_prime",
    "cofactor",
]

SUPPORTED_N = (16, 24, 32, 48, 64, 128, 256, 512, 1024, 2048, 4096)

MR_ROUNDS = 64
_MR_SEED = 0x5EED_2004

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


class FactorTableError(ValueError):
    pass


class FactorFileFormatError(FactorTableError):
    pass


class FactorTableIntegrityError(FactorTableError):
    pass


class UnsupportedExponentError(FactorTableError):
    pass


def is_probable_prime(x: int, rounds: int = MR_ROUNDS) -> bool:
    """Miller-Rabin with ``rounds`` bases drawn from a fixed-seed PRNG.

    A composite survives each round with probability below 1/4, so the
    default 64 rounds give error below 2^-128.  Results are reproducible.
    """
    if x < 2:
        raise ValueError(f"primality is defined for x >= 2, got {x}")
    for p in _SMALL_PRIMES:
        if x == p:
            return True
        if x % p == 0:
            return False
    d, s = x - 1, 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    rng = random.Random(_MR_SEED)
    for _ in range(rounds):
        a = rng.randrange(2, x - 1)
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def cofactor(n: int, d: int) -> int:
    """(2^n - 1) / d, for an exact divisor d."""
    q, rem = divmod((1 << n) - 1, d)
    if rem:
        raise ValueError(f"{d} does not divide 2^{n}-1")
    return q


@dataclass(frozen=True)
class FactorTable:
    """Factorisation of 2^n - 1 as sorted (prime, multiplicity) pairs."""

    n: int
    primes: tuple[tuple[int, int], ...]

    @property
    def modulus_order(self) -> int:
        return (1 << self.n) - 1

    def product(self) -> int:
        out = 1
        for p, e in self.primes:
            out *= p**e
        return out

    def distinct_primes(self) -> list[int]:
        return [p for p, _ in self.primes]

    def cofactors(self) -> list[int]:
        return [cofactor(self.n, p) for p, _ in self.primes]

    def validate(self, rounds: int = MR_ROUNDS) -> None:
        """Raise FactorTableIntegrityError unless the table is exactly right."""
        previous = 1
        for p, e in self.primes:
            if p <= previous:
                raise FactorTableIntegrityError(f"n={self.n}: primes not strictly increasing at {p}")
            if e < 1:
                raise FactorTableIntegrityError(f"n={self.n}: multiplicity {e} for {p}")
            previous = p
        if self.product() != self.modulus_order:
            raise FactorTableIntegrityError(f"n={self.n}: product of factors is not 2^{self.n}-1")
        for p, _ in self.primes:
            if not is_probable_prime(p, rounds):
                raise FactorTableIntegrityError(f"n={self.n}: listed factor {p} is composite")

    def to_line(self) -> str:
        terms = [str(p) if e == 1 else f"{p}^{e}" for p, e in self.primes]
        return f"{self.n}: " + " ".join(terms)


def parse_factor_text(text: str, source: str = "<string>") -> dict[int, FactorTable]:
    """Parse ``n: p1^e1 p2 ...`` lines; ``#`` starts a comment."""
    tables: dict[int, FactorTable] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, body = line.partition(":")
        where = f"{source}:{lineno}"
        if not sep or not head.strip().isdigit():
            raise FactorFileFormatError(f"{where}: expected 'n: p1^e1 p2 ...'")
        n = int(head)
        if n in tables:
            raise FactorFileFormatError(f"{where}: duplicate table for n={n}")
        primes = []
        for term in body.split():
            base, caret, exp = term.partition("^")
            if not base.isdigit() or (caret and not exp.isdigit()):
                raise FactorFileFormatError(f"{where}: malformed factor {term!r}")
            primes.append((int(base), int(exp) if caret else 1))
        if not primes:
            raise FactorFileFormatError(f"{where}: no factors listed")
        tables[n] = FactorTable(n, tuple(sorted(primes)))
    return tables


def load_file(path: str | Path) -> dict[int, FactorTable]:
    """Parse a factor file without validating it."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FactorFileFormatError(f"cannot read factor file {path}: {exc}") from exc
    return parse_factor_text(text, str(path))


@functools.lru_cache(maxsize=None)
def _shipped() -> dict[int, FactorTable]:
    text = resources.files("xorgens").joinpath("factors.txt").read_text()
    return parse_factor_text(text, "factors.txt")


@functools.lru_cache(maxsize=None)
def _load_validated(n: int, path: str | None) -> FactorTable:
    tables = _shipped() if path is None else load_file(path)
    if n not in tables:
        where = "shipped tables" if path is None else path
        raise UnsupportedExponentError(f"no factorisation of 2^{n}-1 in {where}")
    table = tables[n]
    table.validate()
    return table


def load_table(n: int, path: str | Path | None = None) -> FactorTable:
    """Validated factor table for 2^n - 1, from the shipped data or ``path``."""
    if path is None and n not in SUPPORTED_N:
        raise UnsupportedExponentError(
            f"n={n} is not supported; shipped tables cover {', '.join(map(str, SUPPORTED_N))}"
        )
    return _load_validated(n, None if path is None else str(path))
