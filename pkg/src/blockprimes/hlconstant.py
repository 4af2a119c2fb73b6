"""Truncated Hardy-Littlewood / Bateman-Horn constants.

The constant of a tuple (f_1, ..., f_k) truncated at P is

    prod_{p <= P} (1 - 1/p)^(-k) * (1 - omega(p)/p)

where omega(p) counts residues mod p killed by some f_i. The product only
converges conditionally, so the factors are taken in ascending prime order and
accumulated as an exactly rounded sum of logarithms.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

import numpy as np

from .polynomial import IntPolynomial, bunyakovsky_check, discriminant
from .primes import shared_primes
from .residues import (
    IdenticallyZeroModP,
    jacobi_array,
    mod_array,
    omega_bruteforce,
    omega_product,
    omega_quadratic,
)

DEFAULT_P = 10**7
SMALL_PRIME_CUTOFF = 50


@dataclass(frozen=True)
class HLConstant:
    value: float
    prime_bound: int
    k: int
    poly_keys: tuple[str, ...]
    computed_at: str

    @property
    def ledger_key(self) -> str:
        return ";".join(self.poly_keys)


def degree_normalised(const: HLConstant, fs: Sequence[IntPolynomial]) -> float:
    """C / prod(deg f_i): the normalisation used with an integrand in ln t."""
    return const.value / math.prod(f.degree for f in fs)


def _validate(fs: Sequence[IntPolynomial]) -> list[IntPolynomial]:
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    for f in fs:
        if f.degree < 1:
            raise ValueError(f"{f.key} is constant")
        rep = bunyakovsky_check(f)
        if not rep.cond_a:
            raise ValueError(f"{f.key} has a non-positive leading coefficient")
        if rep.cond_b is False:
            raise ValueError(f"{f.key} is reducible over the integers")
    return fs


def _omega_single(f: IntPolynomial, primes: np.ndarray) -> np.ndarray:
    """omega_f(p) for primes p >= SMALL_PRIME_CUTOFF (vectorised where possible)."""
    if f.degree == 1:
        b = mod_array(f.coeffs[1], primes)
        c = mod_array(f.coeffs[0], primes)
        return np.where(b != 0, 1, np.where(c == 0, primes, 0))
    if f.degree == 2:
        out = jacobi_array(mod_array(discriminant(f), primes), primes) + 1
        for i in np.flatnonzero(mod_array(f.leading, primes) == 0).tolist():
            out[i] = omega_quadratic(f, int(primes[i]))
        return out
    return np.array([omega_bruteforce(f, p) for p in primes.tolist()], dtype=np.int64)


def _det(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    n, det = len(m), Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            factor = m[r][col] / m[col][col]
            for c in range(col, n):
                m[r][c] -= factor * m[col][c]
    return int(det)


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Sylvester resultant; zero iff f and g share a factor."""
    m, n = f.degree, g.degree
    a, b = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = [[0] * i + a + [0] * (n - 1 - i) for i in range(n)]
    rows += [[0] * i + b + [0] * (m - 1 - i) for i in range(m)]
    return _det(rows)


def omega_array(fs: Sequence[IntPolynomial], primes: np.ndarray) -> np.ndarray:
    """omega of the product f_1...f_k at each prime of an ascending array."""
    primes = np.asarray(primes, dtype=np.int64)
    out = np.zeros(len(primes), dtype=np.int64)
    cut = int(np.searchsorted(primes, SMALL_PRIME_CUTOFF))
    for i, p in enumerate(primes[:cut].tolist()):
        out[i] = omega_product(fs, p)
    big = primes[cut:]
    if not len(big):
        return out
    total = np.zeros(len(big), dtype=np.int64)
    for f in fs:
        om = _omega_single(f, big)
        bad = np.flatnonzero(om == big)
        if len(bad):
            raise IdenticallyZeroModP(f"{f.key} vanishes identically mod {int(big[bad[0]])}")
        total += om
    # shared roots are only possible at primes dividing a pairwise resultant
    shared = np.zeros(len(big), dtype=bool)
    for f, g in combinations(fs, 2):
        res = resultant(f, g)
        shared |= True if res == 0 else (mod_array(res, big) == 0)
    for i in np.flatnonzero(shared).tolist():
        total[i] = omega_product(fs, int(big[i]))
    if (total >= big).any():
        p = int(big[np.flatnonzero(total >= big)[0]])
        raise IdenticallyZeroModP(f"product vanishes at every residue mod {p}")
    out[cut:] = total
    return out


def log_factors(fs: Sequence[IntPolynomial], primes: np.ndarray) -> np.ndarray:
    """log of (1 - 1/p)^(-k) (1 - omega(p)/p) for each prime, ascending."""
    primes = np.asarray(primes, dtype=np.int64)
    om = omega_array(fs, primes)
    inv = 1.0 / primes
    return -len(fs) * np.log1p(-inv) + np.log1p(-om * inv)


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def convergence_trace(fs: Sequence[IntPolynomial], checkpoints: Sequence[int]) -> list[tuple[int, float]]:
    fs = _validate(fs)
    cps = [int(c) for c in checkpoints]
    if not cps:
        raise ValueError("no checkpoints given")
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if cps[0] < 2:
        raise ValueError("prime bound must be at least 2")
    primes = shared_primes(cps[-1]).primes
    terms = log_factors(fs, primes)
    out = []
    for P in cps:
        end = int(np.searchsorted(primes, P, side="right"))
        # fsum is exactly rounded, hence independent of chunking and order of partials
        out.append((P, math.exp(math.fsum(terms[:end].tolist()))))
    return out


def compute_constant(fs: Sequence[IntPolynomial], P: int = DEFAULT_P) -> HLConstant:
    fs = _validate(fs)
    ((_, value),) = convergence_trace(fs, [P])
    return HLConstant(value, int(P), len(fs), tuple(f.key for f in fs), _now())


def _format_record(c: HLConstant) -> str:
    return "\t".join([c.ledger_key, str(c.prime_bound), str(c.k), f"{c.value:.12g}", c.computed_at])


def _parse_record(line: str) -> HLConstant:
    keys, P, k, value, stamp = line.rstrip("\n").split("\t")
    poly_keys = tuple(keys.split(";"))
    for key in poly_keys:
        IntPolynomial.from_key(key)
    const = HLConstant(float(value), int(P), int(k), poly_keys, stamp)
    if const.k != len(poly_keys) or not math.isfinite(const.value) or const.value <= 0:
        raise ValueError("inconsistent record")
    datetime.fromisoformat(stamp)
    return const


def read_ledger(path) -> list[HLConstant]:
    path = Path(path)
    if not path.exists():
        return []
    out = []
    with path.open() as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(_parse_record(line))
            except ValueError as exc:
                warnings.warn(f"{path}:{lineno}: skipping malformed ledger record ({exc})", stacklevel=2)
    return out


def ledger_get_or_compute(fs: Sequence[IntPolynomial], P: int, ledger_path) -> HLConstant:
    """Look up (polynomials, P) in the ledger; compute and append on a miss.

    Values go through the ledger's 12-digit text form on both paths, so a cold
    and a warm call return the same float.
    """
    fs = _validate(fs)
    key = ";".join(f.key for f in fs)
    for rec in reversed(read_ledger(ledger_path)):
        if rec.ledger_key == key and rec.prime_bound == P:
            return rec
    const = compute_constant(fs, P)
    line = _format_record(const)
    path = Path(ledger_path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("a") as fh:
        fh.write(line + "\n")
    return _parse_record(line)
