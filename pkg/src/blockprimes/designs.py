"""Design parameters from prime-power values of f_{n,r}, and the t = 0 classification.

A useful pair (n, c) has n >= 2, c a prime power, c = 1 (mod 2n) and
c + n = k(k-1)/2 for some block size k >= 2n. Each such pair gives a design
on v = c*d points with d = 1 + (c-1)/n classes. The Delandtsheer-Doyen
parameter m is 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional, Union

from .polynomial import family, is_admissible, is_triangular
from .primes import Tag, ValueClass, classify_value, is_prime, perfect_power_decompose


@dataclass(frozen=True)
class DesignParams:
    n: int
    c: int
    d: int
    k_block: int
    v: int
    t: int

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "DesignParams":
        return cls(**{k: int(data[k]) for k in ("n", "c", "d", "k_block", "v", "t")})


@dataclass(frozen=True)
class UsefulPairReport:
    ok: bool
    prime_power: bool
    congruent: bool
    k_block: Optional[int]
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _block_size(c: int, n: int) -> Optional[int]:
    """k with k(k-1)/2 = c + n, if any."""
    disc = 8 * (c + n) + 1
    root = math.isqrt(disc)
    if root * root != disc:
        return None
    return (1 + root) // 2


def useful_pair_check(n: int, c: int) -> UsefulPairReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    cls = classify_value(c)
    pp = cls.is_prime_power
    cong = c % (2 * n) == 1
    k = _block_size(c, n) if c + n >= 0 else None
    if not pp:
        reason = f"{c} is not a prime power ({cls})"
    elif not cong:
        reason = f"{c} is not 1 mod {2 * n}"
    elif k is None:
        reason = f"{c + n} is not of the form k(k-1)/2"
    elif k < 2 * n:
        reason = f"block size {k} is below 2n = {2 * n}"
    else:
        reason = "useful"
    ok = pp and cong and k is not None and k >= 2 * n
    return UsefulPairReport(ok, pp, cong, k, reason)


def _require_admissible(n: int, r: int) -> None:
    if n < 2 or not 1 <= r < 4 * n or not is_admissible(n, r):
        raise ValueError(f"(n, r) = ({n}, {r}) is not an admissible pair")


def design_params(n: int, r: int, t: int) -> Optional[DesignParams]:
    """Parameters of the design built from c = f_{n,r}(t); None when c gives no design."""
    _require_admissible(n, r)
    if t < 0:
        raise ValueError("t must be non-negative")
    f, _ = family(n, r)
    c = f(t)
    if not useful_pair_check(n, c).ok:
        return None
    k = 4 * n * t + r
    d = 1 + (c - 1) // n
    return DesignParams(n=n, c=c, d=d, k_block=k, v=c * d, t=t)


def t0_classify(n: int, r: int) -> ValueClass:
    _require_admissible(n, r)
    return classify_value(r * (r - 1) // 2 - n)


class Realization(NamedTuple):
    n: int
    r: int
    a: int


def realize_even_power(p: int, i: int) -> Realization:
    """The reducible pair (n, r) whose value at t = 0 is p**(2i)."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if i < 1:
        raise ValueError("i must be at least 1")
    q = p**i
    if q <= 3:
        raise ValueError("p**i must exceed 3")
    return Realization(n=(q * q - 1) // 8, r=(3 * q + 1) // 2, a=(q - 1) // 2)


@dataclass(frozen=True)
class EvenPowerCase:
    p: int
    i: int

    @property
    def value(self) -> int:
        return self.p ** (2 * self.i)


@dataclass(frozen=True)
class SevenCase:
    value: int = 7


@dataclass(frozen=True)
class NotPrimePower:
    value: int


T0Clause = Union[EvenPowerCase, SevenCase, NotPrimePower]


def _odd_prime_power(q: int) -> Optional[tuple[int, int]]:
    if q < 3 or q % 2 == 0:
        return None
    if is_prime(q):
        return q, 1
    dec = perfect_power_decompose(q)
    if dec is not None and is_prime(dec[0]):
        return dec
    return None


def reducible_t0_classify(n: int, r: int) -> T0Clause:
    """Which clause (if any) makes f_{n,r}(0) a prime power, for triangular n.

    Decided from the shape of (n, r, a) alone: either r = 3a + 2 with
    2a + 1 an odd prime power p**i, or (n, r) = (3, 5).
    """
    a = is_triangular(n)
    if a is None:
        raise ValueError(f"n = {n} is not triangular")
    _require_admissible(n, r)
    if (n, r) == (3, 5):
        return SevenCase()
    if n > 1 and r == 3 * a + 2:
        pp = _odd_prime_power(2 * a + 1)
        if pp is not None:
            return EvenPowerCase(*pp)
    return NotPrimePower(r * (r - 1) // 2 - n)


__all__ = [
    "DesignParams",
    "EvenPowerCase",
    "NotPrimePower",
    "Realization",
    "SevenCase",
    "Tag",
    "UsefulPairReport",
    "design_params",
    "realize_even_power",
    "reducible_t0_classify",
    "t0_classify",
    "useful_pair_check",
]
