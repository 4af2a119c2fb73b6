"""Exact integer polynomials and the design family f_{n,r}."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Optional, Sequence

import numpy as np

from .primes import is_prime

_INT64_MAX = (1 << 63) - 1


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, stored in ascending degree order."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Sequence[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_key(cls, key: str) -> "IntPolynomial":
        body = key.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"polynomial key must look like [c0,c1,...], got {key!r}")
        inner = body[1:-1].strip()
        return cls([int(tok) for tok in inner.split(",")] if inner else [])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def content(self) -> int:
        return reduce(math.gcd, self.coeffs, 0)

    @property
    def key(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def mod(self, p: int) -> tuple[int, ...]:
        return tuple(c % p for c in self.coeffs)

    def int64_safe(self, t_lo: int, t_hi: int) -> bool:
        """True when Horner evaluation on [t_lo, t_hi] cannot overflow int64.

        sum |c_i| T**i bounds every partial Horner sum in absolute value.
        """
        T = max(abs(t_lo), abs(t_hi), 1)
        bound = sum(abs(c) * T**i for i, c in enumerate(self.coeffs))
        return bound <= _INT64_MAX

    def evaluate_array(self, ts: np.ndarray) -> np.ndarray:
        """Exact int64 evaluation; caller must have checked int64_safe."""
        acc = np.zeros(len(ts), dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = acc * ts + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            coef = "" if (mag == 1 and i > 0) else str(mag)
            var = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + var))
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            out += sign + body
        return out


def eval(f: IntPolynomial, t: int) -> int:  # noqa: A001 - mirrors the op name
    return f(t)


@dataclass(frozen=True)
class FamilyParams:
    n: int
    r: int
    admissible: bool
    triangular_a: Optional[int]

    @property
    def irreducible(self) -> bool:
        return self.triangular_a is None


def is_admissible(n: int, r: int) -> bool:
    return 1 <= r < 4 * n and (r * (r - 1) // 2 - (n + 1)) % (2 * n) == 0


def is_triangular(n: int) -> Optional[int]:
    """a with n == a(a+1)/2, or None."""
    s = 8 * n + 1
    if s < 0:
        return None
    root = math.isqrt(s)
    return (root - 1) // 2 if root * root == s else None


def family(n: int, r: int) -> tuple[IntPolynomial, FamilyParams]:
    if n < 2:
        raise ValueError("family parameter n must be at least 2")
    if r < 1:
        raise ValueError("family parameter r must be at least 1")
    f = IntPolynomial([r * (r - 1) // 2 - n, 2 * n * (2 * r - 1), 8 * n * n])
    return f, FamilyParams(n, r, is_admissible(n, r), is_triangular(n))


def enumerate_pairs(n_max: int, include_triangular: bool = True) -> list[FamilyParams]:
    """All admissible (n, r) with 2 <= n <= n_max, ordered by (n, r)."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    out = []
    for n in range(2, n_max + 1):
        a = is_triangular(n)
        if a is not None and not include_triangular:
            continue
        for r in range(1, 4 * n):
            if is_admissible(n, r):
                out.append(FamilyParams(n, r, True, a))
    return out


def discriminant(f: IntPolynomial) -> int:
    if f.degree != 2:
        raise ValueError(f"discriminant needs a quadratic, got degree {f.degree}")
    c, b, a = f.coeffs
    return b * b - 4 * a * c


@dataclass(frozen=True)
class BunyakovskyReport:
    cond_a: bool
    cond_b: Optional[bool]  # None: irreducibility not decided for degree > 2
    cond_c: bool
    blocking_primes: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cond_a and self.cond_b is True and self.cond_c


def _prime_divisors(m: int) -> list[int]:
    m = abs(m)
    out, d = [], 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out.append(m)
    return out


def bunyakovsky_check(f: IntPolynomial) -> BunyakovskyReport:
    if f.degree < 1:
        raise ValueError("Bunyakovsky conditions concern non-constant polynomials")
    cond_a = f.leading > 0
    if f.content != 1:
        # a non-unit content is a proper factor in Z[t]
        cond_b: Optional[bool] = False
    elif f.degree == 1:
        cond_b = True
    elif f.degree == 2:
        d = discriminant(f)
        cond_b = not (d >= 0 and math.isqrt(d) ** 2 == d)
    else:
        cond_b = None
    blocking = set(_prime_divisors(f.content))
    for p in range(2, f.degree + 1):
        if is_prime(p) and all(f(t) % p == 0 for t in range(p)):
            blocking.add(p)
    return BunyakovskyReport(cond_a, cond_b, not blocking, sorted(blocking))


@dataclass(frozen=True)
class QuadraticFactorization:
    g: IntPolynomial
    h: IntPolynomial
    identity_ok: bool


def factor_family(n: int, r: int) -> QuadraticFactorization:
    """Split reducible f_{n,r} as g*h; the factor with even coefficients absorbs 1/2."""
    a = is_triangular(n)
    if a is None:
        raise ValueError(f"n={n} is not triangular, f_{{{n},{r}}} is irreducible")
    f, _ = family(n, r)
    if (r - a) % 2 == 0:
        g = IntPolynomial([(r + a) // 2, 2 * n])
        h = IntPolynomial([r - a - 1, 4 * n])
    else:
        g = IntPolynomial([r + a, 4 * n])
        h = IntPolynomial([(r - a - 1) // 2, 2 * n])
    return QuadraticFactorization(g, h, (g * h) == f)
