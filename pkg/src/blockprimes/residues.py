"""Legendre/Jacobi symbols and root counts of polynomials modulo primes."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .polynomial import IntPolynomial, discriminant
from .primes import is_prime

BRUTEFORCE_GUARD = 10**6


class IdenticallyZeroModP(ValueError):
    """A polynomial (or product) vanishes at every residue mod p, so omega = p."""


def jacobi(q: int, n: int) -> int:
    """Jacobi symbol (q/n) for odd n > 0, by binary quadratic reciprocity."""
    if n <= 0 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    q %= n
    sign = 1
    while q:
        while q % 2 == 0:
            q //= 2
            if n % 8 in (3, 5):
                sign = -sign
        q, n = n, q
        if q % 4 == 3 and n % 4 == 3:
            sign = -sign
        q %= n
    return sign if n == 1 else 0


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"Legendre symbol needs an odd prime, got {p}")
    d = 3
    while d <= 1000 and d * d <= p:
        if p % d == 0:
            raise ValueError(f"{p} is composite (divisible by {d})")
        d += 2


def legendre(q: int, p: int) -> int:
    _check_odd_prime(p)
    return jacobi(q, p)


def legendre_euler(q: int, p: int) -> int:
    """Euler's criterion q^((p-1)/2) mod p; independent of the reciprocity path."""
    _check_odd_prime(p)
    e = pow(q % p, (p - 1) // 2, p)
    return -1 if e == p - 1 else e


def jacobi_array(q: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Elementwise Jacobi symbol for int64 arrays; every n odd and positive."""
    a = np.mod(q, n).astype(np.int64)
    m = n.astype(np.int64).copy()
    sign = np.ones(len(m), dtype=np.int64)
    live = np.flatnonzero(a != 0)
    while len(live):
        aa, mm, ss = a[live], m[live], sign[live]
        twos = np.zeros(len(aa), dtype=np.int64)
        even = (aa & 1) == 0
        while even.any():
            aa[even] >>= 1
            twos[even] += 1
            even = (aa & 1) == 0
        r8 = mm & 7
        ss[((twos & 1) == 1) & ((r8 == 3) | (r8 == 5))] *= -1
        ss[((aa & 3) == 3) & ((mm & 3) == 3)] *= -1
        a[live], m[live], sign[live] = mm % aa, aa, ss
        live = live[a[live] != 0]
    return np.where(m == 1, sign, 0)


def mod_array(v: int, primes: np.ndarray) -> np.ndarray:
    """v mod p for every p in an int64 array with p < 2**31; v any Python int."""
    if -(1 << 62) < v < (1 << 62):
        return np.mod(np.int64(v), primes)
    neg = v < 0
    digits = []
    mag = -v if neg else v
    while mag:
        digits.append(mag & 0xFFFFFF)
        mag >>= 24
    acc = np.zeros(len(primes), dtype=np.int64)
    for d in reversed(digits):
        acc = (acc * (1 << 24) + d) % primes
    return (-acc) % primes if neg else acc


def _reduced(f: IntPolynomial, p: int) -> list[int]:
    cs = list(f.mod(p))
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def omega_bruteforce(f: IntPolynomial, p: int) -> int:
    if p > BRUTEFORCE_GUARD:
        raise ValueError(f"p={p} exceeds the brute-force guard {BRUTEFORCE_GUARD}")
    cs = f.mod(p)
    count = 0
    for t in range(p):
        acc = 0
        for c in reversed(cs):
            acc = (acc * t + c) % p
        count += acc == 0
    return count


def omega_quadratic(f: IntPolynomial, p: int) -> int:
    if f.degree != 2:
        raise ValueError("omega_quadratic needs a quadratic")
    if p == 2 or f.leading % p == 0:
        cs = _reduced(f, p)
        if not cs:
            return p
        if len(cs) == 1:
            return 0
        if len(cs) == 2:
            return 1
        return omega_bruteforce(f, p)
    return jacobi(discriminant(f), p) + 1


def sqrt_mod(q: int, p: int) -> int:
    """A square root of the residue q modulo an odd prime p (Tonelli-Shanks)."""
    q %= p
    if q == 0:
        return 0
    if p % 4 == 3:
        return pow(q, (p + 1) // 4, p)
    s, d = 0, p - 1
    while d % 2 == 0:
        d //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, d, p), pow(q, d, p), pow(q, (d + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def roots_mod_p(f: IntPolynomial, p: int) -> list[int]:
    """Sorted roots of f modulo prime p; raises if f vanishes identically."""
    cs = _reduced(f, p)
    if not cs:
        raise IdenticallyZeroModP(f"{f.key} is identically zero mod {p}")
    deg = len(cs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [(-cs[0] * pow(cs[1], -1, p)) % p]
    if deg == 2 and p != 2:
        c, b, a = cs
        d = (b * b - 4 * a * c) % p
        ls = jacobi(d, p)
        if ls == -1:
            return []
        s = sqrt_mod(d, p)
        inv = pow(2 * a, -1, p)
        return sorted({(-b + s) * inv % p, (-b - s) * inv % p})
    if p > BRUTEFORCE_GUARD:
        raise ValueError(f"root finding for degree {deg} beyond p={BRUTEFORCE_GUARD}")
    return [t for t in range(p) if f(t) % p == 0]


def omega_product(fs: Sequence[IntPolynomial], p: int) -> int:
    """Number of residues t mod p at which some f_i(t) = 0 mod p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    roots: set[int] = set()
    for f in fs:
        roots.update(roots_mod_p(f, p))
    if len(roots) == p:
        raise IdenticallyZeroModP(f"product vanishes at every residue mod {p}")
    return len(roots)
