"""Dense polynomial arithmetic over GF(2).

A polynomial c_n z^n + ... + c_1 z + c_0 is stored as the nonnegative
integer sum(c_j << j), so Python's arbitrary-precision integers give the
little-endian bit packing for free.  Addition is xor; products, remainders
and gcds are computed with shift-xor loops.

Exponentiation modulo a polynomial of large degree goes through
:class:`ModRing`, which precomputes byte-indexed reduction tables so that
squaring modulo a degree-4096 polynomial is cheap enough to prove
primitivity in pure Python.
"""

from __future__ import annotations

import functools
import re
from typing import Iterable

__all__ = [
    "Gf2Poly",
    "ModRing",
    "Z",
    "ONE",
    "ZERO",
    "add",
    "mulmod",
    "modexp",
    "gcd",
    "is_irreducible",
    "is_primitive",
    "weight",
]


def _spread(v: int) -> int:
    r = 0
    for i in range(8):
        if v >> i & 1:
            r |= 1 << (2 * i)
    return r


# bytes.translate tables: squaring interleaves a zero bit after every bit.
_SPREAD_LO = bytes(_spread(v & 0x0F) for v in range(256))
_SPREAD_HI = bytes(_spread(v >> 4) for v in range(256))

# Below this degree the precomputed tables cost more than they save.
_RING_MIN_DEGREE = 48


def _clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-packed polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if b.bit_length() <= 64:
        c = 0
        while b:
            if b & 1:
                c ^= a
            a <<= 1
            b >>= 1
        return c
    # byte windows over the shorter operand
    tab = [0] * 256
    for i in range(8):
        bit = 1 << i
        t = a << i
        for v in range(bit):
            tab[v | bit] = tab[v] ^ t
    acc = 0
    for byte in b.to_bytes((b.bit_length() + 7) // 8, "big"):
        acc = (acc << 8) ^ tab[byte]
    return acc


def _sqr(a: int) -> int:
    if a == 0:
        return 0
    raw = a.to_bytes((a.bit_length() + 7) // 8, "little")
    out = bytearray(2 * len(raw))
    out[0::2] = raw.translate(_SPREAD_LO)
    out[1::2] = raw.translate(_SPREAD_HI)
    return int.from_bytes(out, "little")


def _mod(a: int, m: int) -> int:
    """Schoolbook long division remainder."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _divmod(a: int, m: int) -> tuple[int, int]:
    dm = m.bit_length()
    q = 0
    while a.bit_length() >= dm:
        s = a.bit_length() - dm
        q |= 1 << s
        a ^= m << s
    return q, a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _bits_of(p: "Gf2Poly | int") -> int:
    if isinstance(p, Gf2Poly):
        return p.bits
    if isinstance(p, int) and p >= 0:
        return p
    raise TypeError(f"expected Gf2Poly or nonnegative int, got {p!r}")


_TERM_RE = re.compile(r"^(?:1|[xz](?:\^(\d+))?)$")


class Gf2Poly:
    """Immutable polynomial over GF(2).

    ``Gf2Poly(0b10011)`` is z^4 + z + 1.  The zero polynomial has
    ``degree`` None.
    """

    __slots__ = ("_bits",)

    def __init__(self, bits: int = 0):
        if not isinstance(bits, int) or bits < 0:
            raise ValueError(f"coefficient bits must be a nonnegative int, got {bits!r}")
        object.__setattr__(self, "_bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("Gf2Poly is immutable")

    @classmethod
    def from_exponents(cls, exponents: Iterable[int]) -> "Gf2Poly":
        bits = 0
        for e in exponents:
            if e < 0:
                raise ValueError(f"negative exponent {e}")
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def parse(cls, text: str) -> "Gf2Poly":
        """Parse the textual form, e.g. ``"x^64 + x^17 + 1"`` (z is accepted too)."""
        text = text.strip()
        if text == "0":
            return cls(0)
        bits = 0
        for term in text.replace(" ", "").split("+"):
            match = _TERM_RE.match(term)
            if not match:
                raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
            if term == "1":
                e = 0
            elif match.group(1) is None:
                e = 1
            else:
                e = int(match.group(1))
            bits ^= 1 << e
        return cls(bits)

    @classmethod
    def from_hex(cls, text: str) -> "Gf2Poly":
        return cls(int(text, 16))

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def degree(self) -> int | None:
        return None if self._bits == 0 else self._bits.bit_length() - 1

    @property
    def weight(self) -> int:
        return self._bits.bit_count()

    def coefficient(self, j: int) -> int:
        return self._bits >> j & 1

    def exponents(self) -> list[int]:
        """Exponents of the nonzero terms, descending."""
        bits = self._bits
        out = []
        while bits:
            e = bits.bit_length() - 1
            out.append(e)
            bits ^= 1 << e
        return out

    def reciprocal(self, degree: int | None = None) -> "Gf2Poly":
        """z^degree * p(1/z); degree defaults to deg(p)."""
        if degree is None:
            degree = self.degree
            if degree is None:
                return self
        if self._bits.bit_length() > degree + 1:
            raise ValueError(f"degree {degree} is below the polynomial's degree")
        return Gf2Poly(int(format(self._bits, f"0{degree + 1}b")[::-1], 2))

    def __call__(self, x: int) -> int:
        """Evaluate at x in GF(2)."""
        if x == 0:
            return self._bits & 1
        if x == 1:
            return self._bits.bit_count() & 1
        raise ValueError("GF(2) polynomials are evaluated at 0 or 1")

    def __bool__(self) -> bool:
        return self._bits != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Gf2Poly):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Gf2Poly", self._bits))

    def __add__(self, other) -> "Gf2Poly":
        return Gf2Poly(self._bits ^ _bits_of(other))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other) -> "Gf2Poly":
        return Gf2Poly(_clmul(self._bits, _bits_of(other)))

    __rmul__ = __mul__

    def __divmod__(self, other) -> tuple["Gf2Poly", "Gf2Poly"]:
        m = _bits_of(other)
        if m == 0:
            raise ZeroDivisionError("division by the zero polynomial")
        q, r = _divmod(self._bits, m)
        return Gf2Poly(q), Gf2Poly(r)

    def __floordiv__(self, other) -> "Gf2Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Gf2Poly":
        m = _bits_of(other)
        if m == 0:
            raise ZeroDivisionError("division by the zero polynomial")
        return Gf2Poly(_mod(self._bits, m))

    def __lshift__(self, k: int) -> "Gf2Poly":
        return Gf2Poly(self._bits << k)

    def __pow__(self, e: int) -> "Gf2Poly":
        if e < 0:
            raise ValueError("negative exponent")
        result, base = 1, self._bits
        while e:
            if e & 1:
                result = _clmul(result, base)
            e >>= 1
            if e:
                base = _sqr(base)
        return Gf2Poly(result)

    def hex(self) -> str:
        """Lowercase hex of the coefficient bits, no leading zeros."""
        return format(self._bits, "x")

    def __str__(self) -> str:
        if self._bits == 0:
            return "0"
        terms = []
        for e in self.exponents():
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        if self._bits.bit_length() > 64:
            return f"Gf2Poly(degree={self.degree}, weight={self.weight})"
        return f"Gf2Poly({self})"


ZERO = Gf2Poly(0)
ONE = Gf2Poly(1)
Z = Gf2Poly(2)


class ModRing:
    """Arithmetic in GF(2)[z] / (m).

    Reduction folds the part of a product above degree n back in with one
    table lookup per byte: ``rows[j][v]`` holds ``v * z^(n + 8j) mod m``.
    Table memory grows as 4 n^2 bytes (about 64 MiB at n = 4096).
    """

    def __init__(self, modulus: "Gf2Poly | int"):
        m = _bits_of(modulus)
        if m.bit_length() < 2:
            raise ValueError("modulus must have degree >= 1")
        self.m = m
        self.n = n = m.bit_length() - 1
        self._low_mask = (1 << n) - 1
        rows = []
        t = m ^ (1 << n)  # z^n mod m
        for _ in range((n + 7) // 8):
            tab = [0] * 256
            for i in range(8):
                bit = 1 << i
                for v in range(bit):
                    tab[v | bit] = tab[v] ^ t
                t <<= 1
                if t >> n:
                    t ^= m
            rows.append(tab)
        self._rows = rows

    def reduce(self, g: int) -> int:
        n = self.n
        hi = g >> n
        if hi.bit_length() > n:
            return _mod(g, self.m)
        r = g & self._low_mask
        rows = self._rows
        for j, v in enumerate(hi.to_bytes((hi.bit_length() + 7) // 8, "little")):
            if v:
                r ^= rows[j][v]
        return r

    def square(self, f: int) -> int:
        return self.reduce(_sqr(f))

    def mul(self, f: int, g: int) -> int:
        return self.reduce(_clmul(f, g))

    def mulz(self, f: int) -> int:
        f <<= 1
        if f >> self.n:
            f ^= self.m
        return f

    def pow(self, base: int, e: int) -> int:
        if e < 0:
            raise ValueError("negative exponent")
        base = self.reduce(base)
        if base == 2:
            return self.powz(e)
        result = 1
        for bit in bin(e)[2:]:
            result = self.square(result)
            if bit == "1":
                result = self.mul(result, base)
        return self.reduce(result)

    def powz(self, e: int) -> int:
        """z^e mod m; multiplying by z is a shift plus conditional xor."""
        if e < 0:
            raise ValueError("negative exponent")
        x = 1
        sq, n, m = self.square, self.n, self.m
        for bit in bin(e)[2:]:
            x = sq(x)
            if bit == "1":
                x <<= 1
                if x >> n:
                    x ^= m
        return self.reduce(x)

    def frobenius_powers(self, count: int) -> list[int]:
        """[z^(2^0), z^(2^1), ..., z^(2^count)] mod m."""
        x = self.reduce(2)
        out = [x]
        for _ in range(count):
            x = self.square(x)
            out.append(x)
        return out


@functools.lru_cache(maxsize=4)
def _ring(m: int) -> ModRing:
    return ModRing(m)


def _check_modulus(m: int) -> None:
    if m == 0:
        raise ZeroDivisionError("zero modulus")
    if m.bit_length() < 2:
        raise ValueError("modulus must have degree >= 1")


def add(p, q) -> Gf2Poly:
    return Gf2Poly(_bits_of(p) ^ _bits_of(q))


def mulmod(p, q, m) -> Gf2Poly:
    """p * q mod m."""
    mb = _bits_of(m)
    _check_modulus(mb)
    return Gf2Poly(_mod(_clmul(_bits_of(p), _bits_of(q)), mb))


def modexp(base, e: int, m) -> Gf2Poly:
    """base^e mod m by left-to-right square-and-multiply."""
    mb = _bits_of(m)
    _check_modulus(mb)
    if e < 0:
        raise ValueError("negative exponent")
    b = _bits_of(base)
    if mb.bit_length() - 1 >= _RING_MIN_DEGREE:
        return Gf2Poly(_ring(mb).pow(b, e))
    b = _mod(b, mb)
    result = 1
    for bit in bin(e)[2:]:
        result = _mod(_sqr(result), mb)
        if bit == "1":
            result = _mod(_clmul(result, b), mb)
    return Gf2Poly(_mod(result, mb))


def gcd(p, q) -> Gf2Poly:
    a, b = _bits_of(p), _bits_of(q)
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return Gf2Poly(_gcd(a, b))


def weight(p) -> int:
    return _bits_of(p).bit_count()


def _prime_divisors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius(m: int, count: int) -> list[int]:
    if m.bit_length() - 1 >= _RING_MIN_DEGREE:
        return _ring(m).frobenius_powers(count)
    x = _mod(2, m)
    out = [x]
    for _ in range(count):
        x = _mod(_sqr(x), m)
        out.append(x)
    return out


def is_irreducible(p) -> bool:
    """Frobenius test: z^(2^n) = z mod p and gcd(z^(2^(n/q)) - z, p) = 1 for primes q | n."""
    m = _bits_of(p)
    n = m.bit_length() - 1
    if n < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if n == 1:
        return True
    if m & 1 == 0:
        return False
    powers = _frobenius(m, n)
    z = _mod(2, m)
    if powers[n] != z:
        return False
    for q in _prime_divisors(n):
        if _gcd(m, powers[n // q] ^ z) != 1:
            return False
    return True


def is_primitive(p, factors) -> bool:
    """True iff p is irreducible and z has order 2^n - 1 modulo p.

    ``factors`` is a factor table for 2^n - 1 (anything with ``n`` and
    ``primes`` as (prime, multiplicity) pairs).
    """
    m = _bits_of(p)
    n = m.bit_length() - 1
    if n < 1:
        raise ValueError("primitivity needs degree >= 1")
    if factors.n != n:
        raise ValueError(f"factor table is for n={factors.n}, polynomial has degree {n}")
    order = (1 << n) - 1
    product = 1
    for prime, mult in factors.primes:
        product *= prime**mult
    if product != order:
        raise ValueError(f"factor table product does not equal 2^{n}-1")
    if m & 1 == 0 or not is_irreducible(m):
        return False
    for prime, _ in factors.primes:
        if modexp(Z, order // prime, m).bits == 1:
            return False
    return True
