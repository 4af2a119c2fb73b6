"""Exact prime-value counts Q(x), proper prime-power scans and estimate reports.

The t-range [1, x] is cut into contiguous chunks. Each chunk is surveyed
independently: values are sieved by the roots of f modulo small primes, the
survivors go through the deterministic Miller-Rabin test, and (for a single
polynomial) a floating-point root test flags candidate perfect powers that
are then confirmed exactly. Completed chunks can be journalled so long runs
resume where they stopped.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .estimator import EstimateRequest, estimate_E
from .hlconstant import compute_constant, ledger_get_or_compute
from .polynomial import IntPolynomial
from .primes import Tag, ValueClass, classify_value, is_prime, miller_rabin, shared_primes
from .residues import roots_mod_p

DEFAULT_CHUNK = 1 << 16
SIEVE_BOUND = 1 << 16

Polys = Union[IntPolynomial, Sequence[IntPolynomial]]


@dataclass(frozen=True)
class PrimePowerHit:
    t: int
    value: int
    base: int
    exponent: int


@dataclass(frozen=True)
class SurveyResult:
    Q: int
    hits: list[PrimePowerHit]


@dataclass(frozen=True)
class EstimateReport:
    poly_key: str
    x: int
    Q: int
    E: float
    relative_error: float
    constant_bound: int


def _as_list(fs: Polys) -> list[IntPolynomial]:
    return [fs] if isinstance(fs, IntPolynomial) else list(fs)


def _poly_key(fs: Sequence[IntPolynomial]) -> str:
    return ";".join(f.key for f in fs)


def sieve_table(f: IntPolynomial, bound: int = SIEVE_BOUND) -> list[tuple[int, tuple[int, ...]]]:
    """(p, roots of f mod p) for primes p <= bound with at least one root."""
    table = []
    for p in shared_primes(bound).primes.tolist():
        roots = tuple(roots_mod_p(f, p))
        if roots:
            table.append((p, roots))
    return table


# worker state, set once per process
_STATE: dict = {}


def _init_worker(coeffs: list[tuple[int, ...]], tables, bound: int) -> None:
    _STATE["fs"] = [IntPolynomial(c) for c in coeffs]
    _STATE["tables"] = tables
    _STATE["bound"] = bound


def _prime_mask(f: IntPolynomial, table, bound: int, ts: np.ndarray, vals: np.ndarray) -> np.ndarray:
    lo = int(ts[0])
    mask = vals > 1
    for p, roots in table:
        for r in roots:
            mask[(r - lo) % p :: p] = False
    small = np.flatnonzero((vals > 1) & (vals <= bound))
    for i in small.tolist():
        mask[i] = is_prime(int(vals[i]))
    bound_sq = bound * bound
    for i in np.flatnonzero(mask & (vals > bound)).tolist():
        v = int(vals[i])
        # no prime factor <= bound remains, so anything below bound**2 is prime
        mask[i] = v < bound_sq or miller_rabin(v)
    return mask


_EXPONENTS = [e for e in range(2, 63) if all(e % q for q in range(2, e))]


_FLOAT_GUARD = 9.2233720368e18  # 2**63 less a margin for float rounding


def _power_candidates(vals: np.ndarray) -> np.ndarray:
    """Indices where vals is an exact perfect power b**e (e prime, b >= 2)."""
    ok = vals >= 4
    vf = np.where(ok, vals, 4).astype(np.float64)
    cand = np.zeros(len(vals), dtype=bool)
    top = float(vals.max()) if len(vals) else 0.0
    for e in _EXPONENTS:
        if 2.0**e > top:
            break
        r0 = np.rint(np.power(vf, 1.0 / e)).astype(np.int64)
        for delta in (-1, 0, 1):
            r = r0 + delta
            safe = (r >= 2) & (r.astype(np.float64) ** e < _FLOAT_GUARD)
            pw = np.ones(len(vals), dtype=np.int64)
            rs = np.where(safe, r, 0)
            for _ in range(e):
                pw = pw * rs
            cand |= ok & safe & (pw == vals)
    return np.flatnonzero(cand)


def _hit(t: int, v: int) -> Optional[PrimePowerHit]:
    if v < 4:
        return None
    cls = classify_value(v)
    if cls.tag is Tag.PROPER_PRIME_POWER:
        return PrimePowerHit(t, v, cls.base, cls.exponent)
    return None


def _survey_chunk(lo: int, hi: int) -> tuple[int, int, int, list[PrimePowerHit]]:
    """Survey t in [lo, hi): (lo, hi, #t with all f_i(t) prime, prime-power hits)."""
    fs, tables, bound = _STATE["fs"], _STATE["tables"], _STATE["bound"]
    single = len(fs) == 1
    hits: list[PrimePowerHit] = []
    if all(f.int64_safe(lo, hi - 1) for f in fs):
        ts = np.arange(lo, hi, dtype=np.int64)
        mask = np.ones(hi - lo, dtype=bool)
        for f, table in zip(fs, tables):
            vals = f.evaluate_array(ts)
            mask &= _prime_mask(f, table, bound, ts, vals)
            if single:
                for i in _power_candidates(vals).tolist():
                    h = _hit(lo + i, int(vals[i]))
                    if h is not None:
                        hits.append(h)
        return lo, hi, int(mask.sum()), hits
    count = 0
    for t in range(lo, hi):
        values = [f(t) for f in fs]
        if all(is_prime(v) for v in values):
            count += 1
        elif single:
            h = _hit(t, values[0])
            if h is not None:
                hits.append(h)
    return lo, hi, count, hits


def _encode_hits(hits: Iterable[PrimePowerHit]) -> str:
    return ",".join(f"{h.t}:{h.value}:{h.base}:{h.exponent}" for h in hits)


def _decode_hits(text: str) -> list[PrimePowerHit]:
    out = []
    for item in filter(None, text.split(",")):
        t, v, b, e = (int(x) for x in item.split(":"))
        if b**e != v:
            raise ValueError(f"inconsistent hit {item}")
        out.append(PrimePowerHit(t, v, b, e))
    return out


def read_journal(path, key: str) -> dict[tuple[int, int], tuple[int, list[PrimePowerHit]]]:
    done: dict = {}
    path = Path(path)
    if not path.exists():
        return done
    for line in path.read_text().splitlines():
        parts = line.split("\t")
        if len(parts) != 5 or parts[0] != key:
            continue
        try:
            lo, hi, count = int(parts[1]), int(parts[2]), int(parts[3])
            done[(lo, hi)] = (count, _decode_hits(parts[4]))
        except ValueError:
            continue
    return done


def survey(
    fs: Polys,
    x: int,
    workers: int = 1,
    chunk: int = DEFAULT_CHUNK,
    journal=None,
    sieve_bound: int = SIEVE_BOUND,
) -> SurveyResult:
    """Count t in [1, x] where every f_i(t) is prime and, for one polynomial,
    collect the t where f(t) is a proper prime power."""
    fs = _as_list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    if x < 1:
        return SurveyResult(0, [])
    if chunk < 1:
        raise ValueError("chunk length must be positive")
    key = _poly_key(fs)
    ranges = [(lo, min(lo + chunk, x + 1)) for lo in range(1, x + 1, chunk)]
    done = read_journal(journal, key) if journal else {}
    todo = [r for r in ranges if r not in done]
    tables = [sieve_table(f, sieve_bound) for f in fs]
    results = {r: done[r] for r in ranges if r in done}

    jfh = open(journal, "a") if journal else None
    try:
        def record(lo, hi, count, hits):
            results[(lo, hi)] = (count, hits)
            if jfh:
                jfh.write(f"{key}\t{lo}\t{hi}\t{count}\t{_encode_hits(hits)}\n")
                jfh.flush()

        init = ([f.coeffs for f in fs], tables, sieve_bound)
        if workers <= 1 or len(todo) <= 1:
            saved = dict(_STATE)
            _init_worker(*init)
            try:
                for lo, hi in todo:
                    record(*_survey_chunk(lo, hi))
            finally:
                _STATE.clear()
                _STATE.update(saved)
        else:
            with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=init) as pool:
                los, his = zip(*todo)
                for res in pool.map(_survey_chunk, los, his, chunksize=1):
                    record(*res)
    finally:
        if jfh:
            jfh.close()
    Q = sum(results[r][0] for r in ranges)
    hits = sorted((h for r in ranges for h in results[r][1]), key=lambda h: h.t)
    return SurveyResult(Q, hits)


def count_Q(fs: Polys, x: int, workers: int = 1, chunk: int = DEFAULT_CHUNK, journal=None) -> int:
    return survey(fs, x, workers, chunk, journal).Q


def scan_prime_powers(f: IntPolynomial, x: int, workers: int = 1, chunk: int = DEFAULT_CHUNK,
                      journal=None) -> list[PrimePowerHit]:
    return survey([f], x, workers, chunk, journal).hits


def default_workers() -> int:
    return os.cpu_count() or 1


def compare(
    f: IntPolynomial,
    x: int,
    P: int,
    ledger=None,
    workers: int = 1,
    tolerance: float = 1e-9,
    journal=None,
) -> EstimateReport:
    const = ledger_get_or_compute([f], P, ledger) if ledger else compute_constant([f], P)
    Q = count_Q(f, x, workers=workers, journal=journal)
    E = estimate_E(EstimateRequest([f], const, x, tolerance=tolerance))
    rel = (E - Q) / Q if Q else math.inf
    return EstimateReport(f.key, x, Q, E, rel, P)


def first_hits(f: IntPolynomial, limit: int) -> list[tuple[int, int, ValueClass]]:
    """Classify f(0), ..., f(limit - 1)."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return [(t, f(t), classify_value(f(t))) for t in range(limit)]


REPORT_COLUMNS = ("x", "Q(x)", "E(x)", "relative error")


def _report_row(rep: EstimateReport) -> list[str]:
    return [str(rep.x), str(rep.Q), f"{rep.E:.2f}", f"{100 * rep.relative_error:.4f}%"]


def reports_csv(reports: Sequence[EstimateReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["poly", "x", "Q", "E", "relative_error", "P"])
    for r in reports:
        w.writerow([r.poly_key, r.x, r.Q, repr(r.E), repr(r.relative_error), r.constant_bound])
    return buf.getvalue()


def aligned_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    fmt = lambda row: " | ".join(str(c).rjust(w) for c, w in zip(row, widths))  # noqa: E731
    lines = [fmt(header), "-+-".join("-" * w for w in widths)]
    lines += [fmt(r) for r in rows]
    return "\n".join(lines) + "\n"


def reports_table(reports: Sequence[EstimateReport]) -> str:
    return aligned_table(REPORT_COLUMNS, [_report_row(r) for r in reports])
