"""Prime sieving, primality testing and perfect-power decomposition."""

from __future__ import annotations

import enum
import math
import random
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import gmpy2
import numpy as np

DEFAULT_SEGMENT = 1 << 20

# Smallest strong pseudoprime to all of the first k prime bases (OEIS A014233);
# n below the k-th entry is decided exactly by those k bases.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_WITNESS_BOUNDS = (
    2_047,
    1_373_653,
    25_326_001,
    3_215_031_751,
    2_152_302_898_747,
    3_474_749_660_383,
    341_550_071_728_321,
    341_550_071_728_321,
    3_825_123_056_546_413_051,
    3_825_123_056_546_413_051,
    3_825_123_056_546_413_051,
    318_665_857_834_031_151_167_461,
)
_U64_LIMIT = 1 << 64
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)

_MAGIC = b"BHLPRIME"


class PrimeCacheError(ValueError):
    """Raised when a prime cache file cannot be decoded."""


class CorruptHeaderError(PrimeCacheError):
    pass


class ChecksumError(PrimeCacheError):
    pass


@dataclass(frozen=True)
class PrimeCache:
    """All primes up to ``bound`` as a read-only ascending int64 array."""

    bound: int
    primes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.primes, dtype=np.int64)
        if arr.flags.writeable:
            arr = arr.copy()
            arr.flags.writeable = False
        object.__setattr__(self, "primes", arr)

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, P: int) -> np.ndarray:
        """Primes <= P; P must not exceed the cache bound."""
        if P > self.bound:
            raise ValueError(f"cache bound {self.bound} is below requested {P}")
        return self.primes[: np.searchsorted(self.primes, P, side="right")]

    def restrict(self, P: int) -> "PrimeCache":
        return PrimeCache(P, self.upto(P))


def _base_sieve(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = False
    return np.flatnonzero(flags)


def sieve_upto(P: int, segment: int = DEFAULT_SEGMENT) -> PrimeCache:
    """Segmented sieve of Eratosthenes; memory is O(sqrt(P) + segment)."""
    if P < 2:
        raise ValueError("sieve bound must be at least 2")
    if segment < 2:
        raise ValueError("segment length must be at least 2")
    base = _base_sieve(math.isqrt(P)).tolist()
    chunks = []
    for lo in range(0, P + 1, segment):
        hi = min(lo + segment, P + 1)
        mask = np.ones(hi - lo, dtype=bool)
        if lo == 0:
            mask[: min(2, hi)] = False
        for p in base:
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            mask[start - lo :: p] = False
        chunks.append(np.flatnonzero(mask).astype(np.int64) + lo)
    return PrimeCache(P, np.concatenate(chunks))


_shared: Optional[PrimeCache] = None


def shared_primes(P: int) -> PrimeCache:
    """Process-wide cache; re-sieves only when a larger bound is requested."""
    global _shared
    if _shared is None or _shared.bound < P:
        _shared = sieve_upto(max(P, 2))
    return _shared if _shared.bound == P else _shared.restrict(P)


def current_shared() -> Optional[PrimeCache]:
    return _shared


def install_shared(cache: PrimeCache) -> None:
    global _shared
    if _shared is None or cache.bound > _shared.bound:
        _shared = cache


def _strong_probable_prime(n: int, d: int, s: int, a: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _deterministic_u64(n: int) -> bool:
    # same witness schedule as the pure-Python loop below, run in C by gmpy2
    for a, bound in zip(_WITNESSES, _WITNESS_BOUNDS):
        if not gmpy2.is_strong_prp(n, a):
            return False
        if n < bound:
            return True
    return True


def miller_rabin(n: int, rounds: int = 40, fast: bool = True) -> bool:
    """Strong-pseudoprime test for odd n > 37. Exact below 2**64.

    ``fast=False`` runs the witnesses through the pure-Python strong test.
    """
    if fast and n < _U64_LIMIT:
        return _deterministic_u64(n)
    d, s = n - 1, 0
    while not d & 1:
        d >>= 1
        s += 1
    if n < _U64_LIMIT:
        for a, bound in zip(_WITNESSES, _WITNESS_BOUNDS):
            if not _strong_probable_prime(n, d, s, a):
                return False
            if n < bound:
                return True
        return True
    rng = random.Random(n)
    for _ in range(rounds):
        if not _strong_probable_prime(n, d, s, rng.randrange(2, n - 1)):
            return False
    return True


def is_prime(v: int, rounds: int = 40) -> bool:
    if v < 2:
        return False
    for p in _SMALL_PRIMES:
        if v % p == 0:
            return v == p
    if v < 97 * 97:
        return True
    return miller_rabin(v, rounds)


def iroot(v: int, k: int) -> int:
    """floor(v ** (1/k)) for v >= 0, exact."""
    if v < 0:
        raise ValueError("negative radicand")
    if k == 1 or v < 2:
        return v
    if k == 2:
        return math.isqrt(v)
    x = 1 << -(-v.bit_length() // k)
    while True:
        y = ((k - 1) * x + v // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power_decompose(v: int) -> Optional[tuple[int, int]]:
    """(b, e) with b**e == v, e >= 2 maximal; None if v is not a proper power."""
    if v < 2:
        raise ValueError("perfect_power_decompose expects v >= 2")
    base, exp = v, 1
    found = True
    while found:
        found = False
        for e in _prime_exponents(base.bit_length()):
            r = iroot(base, e)
            if r ** e == base:
                base, exp = r, exp * e
                found = True
                break
    return (base, exp) if exp > 1 else None


def _prime_exponents(bits: int):
    # exponents e with 2**e <= value, value < 2**bits
    e = 2
    while e < bits:
        if e < 4 or all(e % q for q in range(2, math.isqrt(e) + 1)):
            yield e
        e += 1


class Tag(str, enum.Enum):
    ONE = "One"
    PRIME = "Prime"
    PROPER_PRIME_POWER = "ProperPrimePower"
    COMPOSITE = "Composite"
    NON_POSITIVE = "NonPositive"


@dataclass(frozen=True)
class ValueClass:
    tag: Tag
    base: Optional[int] = None
    exponent: Optional[int] = None

    @property
    def is_prime_power(self) -> bool:
        return self.tag in (Tag.PRIME, Tag.PROPER_PRIME_POWER)

    def __str__(self) -> str:
        if self.tag is Tag.PROPER_PRIME_POWER:
            return f"{self.tag.value}({self.base},{self.exponent})"
        return self.tag.value


def classify_value(v: int) -> ValueClass:
    if v <= 0:
        return ValueClass(Tag.NON_POSITIVE)
    if v == 1:
        return ValueClass(Tag.ONE)
    if is_prime(v):
        return ValueClass(Tag.PRIME, v, 1)
    pp = perfect_power_decompose(v)
    if pp is not None and is_prime(pp[0]):
        return ValueClass(Tag.PROPER_PRIME_POWER, pp[0], pp[1])
    return ValueClass(Tag.COMPOSITE)


def count_pi_and_Pi(x: int) -> tuple[int, int]:
    """Exact (pi(x), Pi(x)): primes <= x and prime powers p**e <= x, e >= 1."""
    if x < 2:
        raise ValueError("x must be at least 2")
    primes = shared_primes(x).primes if x <= 10**9 else sieve_upto(x).primes
    pi = len(primes)
    extra = 0
    for p in primes[: np.searchsorted(primes, math.isqrt(x), side="right")].tolist():
        q = p * p
        while q <= x:
            extra += 1
            q *= p
    return pi, pi + extra


def _xor_fold(words: np.ndarray) -> int:
    return int(np.bitwise_xor.reduce(words)) if len(words) else 0


def cache_save(cache: PrimeCache, path) -> None:
    payload = np.empty(len(cache) + 2, dtype="<u8")
    payload[0] = cache.bound
    payload[1] = len(cache)
    payload[2:] = cache.primes
    checksum = _xor_fold(payload)
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(payload.tobytes())
        fh.write(struct.pack("<Q", checksum))


def cache_load(path) -> PrimeCache:
    data = Path(path).read_bytes()
    if len(data) < 24 or data[:8] != _MAGIC:
        raise CorruptHeaderError(f"{path}: not a prime cache file")
    bound, count = struct.unpack_from("<QQ", data, 8)
    expected = 8 + 8 * (count + 3)
    if len(data) != expected:
        raise ChecksumError(f"{path}: expected {expected} bytes, found {len(data)}")
    payload = np.frombuffer(data, dtype="<u8", count=count + 2, offset=8)
    (stored,) = struct.unpack_from("<Q", data, expected - 8)
    if _xor_fold(payload) != stored:
        raise ChecksumError(f"{path}: checksum mismatch")
    return PrimeCache(int(bound), payload[2:].astype(np.int64))
