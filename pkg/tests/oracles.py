"""Brute-force reference computations, independent of the package's arithmetic."""

from __future__ import annotations

import numpy as np


def clmul(a: int, b: int) -> int:
    out = 0
    i = 0
    while b >> i:
        if b >> i & 1:
            out ^= a << i
        i += 1
    return out


def polymod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    for i in range(a.bit_length() - 1, dm - 1, -1):
        if a >> i & 1:
            a ^= m << (i - dm)
    return a


def reducible_sieve(max_degree: int) -> set[int]:
    """All reducible polynomials of degree <= max_degree, by multiplying pairs."""
    out = set()
    for d1 in range(1, max_degree // 2 + 1):
        for p in range(1 << d1, 1 << (d1 + 1)):
            for d2 in range(d1, max_degree - d1 + 1):
                for q in range(1 << d2, 1 << (d2 + 1)):
                    out.add(clmul(p, q))
    return out


def order_of_z(m: int) -> int | None:
    """Multiplicative order of z modulo m by walking the powers; None if z is not a unit."""
    if m & 1 == 0:
        return None
    dm = m.bit_length() - 1
    x = polymod(2, m)
    k = 1
    while x != 1:
        x <<= 1
        if x >> dm & 1:
            x ^= m
        k += 1
        if k > (1 << dm):
            return None
    return k


def trial_factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime_by_trial(n: int) -> bool:
    return n >= 2 and trial_factor(n) == [(n, 1)]


def cycle_length(step, state, limit: int) -> int | None:
    """Steps until ``state()`` first repeats its initial value, or None past ``limit``."""
    start = state()
    for k in range(1, limit + 1):
        step()
        if state() == start:
            return k
    return None


def _word_matrix(w: int, t: int, left: bool) -> np.ndarray:
    m = np.zeros((w, w), dtype=np.int64)
    mask = (1 << w) - 1
    for i in range(w):
        x = 1 << i
        y = (x ^ (x << t)) & mask if left else x ^ (x >> t)
        for j in range(w):
            m[i, j] = y >> j & 1
    return m


def companion_matrix(w, r, s, a, b, c, d) -> np.ndarray:
    """Block companion matrix acting on row vectors (x[k-r] | ... | x[k-1])."""
    A = _word_matrix(w, a, True) @ _word_matrix(w, b, False) % 2
    B = _word_matrix(w, c, True) @ _word_matrix(w, d, False) % 2
    n = r * w
    C = np.zeros((n, n), dtype=np.int64)
    for blk in range(1, r):
        C[blk * w:(blk + 1) * w, (blk - 1) * w:blk * w] = np.eye(w, dtype=np.int64)
    C[0:w, (r - 1) * w:] ^= A
    C[(r - s) * w:(r - s + 1) * w, (r - 1) * w:] ^= B
    return C


def _matpow(m: np.ndarray, e: int) -> np.ndarray:
    out = np.eye(m.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            out = out @ m % 2
        m = m @ m % 2
        e >>= 1
    return out


def matrix_has_full_order(C: np.ndarray, primes: list[int]) -> bool:
    """C^(2^n-1) = I and C^((2^n-1)/p) != I for every prime p."""
    n = C.shape[0]
    eye = np.eye(n, dtype=np.int64)
    order = (1 << n) - 1
    if not np.array_equal(_matpow(C, order), eye):
        return False
    return all(not np.array_equal(_matpow(C, order // p), eye) for p in primes)


def char_poly_by_matrix(C: np.ndarray) -> int:
    """det(C - zI) over GF(2) from a Krylov sequence.

    Solves v C^n = sum_j c_j v C^j by elimination; valid when v, vC, ...,
    vC^(n-1) are independent, which is checked.
    """
    n = C.shape[0]
    rng = np.random.default_rng(7)
    for _ in range(32):
        try:
            return _krylov_char_poly(C, rng.integers(0, 2, size=n))
        except ValueError:
            continue
    raise ValueError("no cyclic vector found; C may be derogatory")


def _krylov_char_poly(C: np.ndarray, v: np.ndarray) -> int:
    n = C.shape[0]
    rows = [v]
    for _ in range(n):
        rows.append(rows[-1] @ C % 2)
    # solve sum_{j<n} c_j v C^j = v C^n over GF(2) by Gaussian elimination
    M = np.array(rows[:n], dtype=np.int64).T
    rhs = rows[n].copy()
    aug = np.concatenate([M, rhs[:, None]], axis=1) % 2
    piv_row = 0
    for col in range(n):
        hit = next((i for i in range(piv_row, n) if aug[i, col]), None)
        if hit is None:
            raise ValueError("Krylov sequence is degenerate")
        aug[[piv_row, hit]] = aug[[hit, piv_row]]
        for i in range(n):
            if i != piv_row and aug[i, col]:
                aug[i] ^= aug[piv_row]
        piv_row += 1
    coeffs = aug[:, n]
    bits = 1 << n
    for j in range(n):
        if coeffs[j]:
            bits |= 1 << j
    return bits
