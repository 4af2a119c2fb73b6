"""Command-line front end: ``blockprimes <command> [options]``.

Exit status is 0 on success, 1 on a usage error and 2 when a computation
fails (including a failed ``verify`` run).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any, Optional, Sequence

from . import acceptance
from .counter import aligned_table, compare, scan_prime_powers
from .designs import design_params, realize_even_power, useful_pair_check
from .estimator import QuadratureError
from .hlconstant import DEFAULT_P, compute_constant, convergence_trace, degree_normalised, ledger_get_or_compute
from .polynomial import IntPolynomial, enumerate_pairs, family, is_admissible
from .primes import PrimeCacheError, cache_load, cache_save, current_shared, install_shared

GLOBAL_DEFAULTS: dict[str, Any] = {
    "format": "table",
    "threads": None,  # hardware parallelism
    "prime_cache": None,
    "ledger": None,
    "tolerance": 1e-9,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def parse_count(text: str) -> int:
    """Exact non-negative integer from '100000', '1e5' or '10**5'."""
    s = str(text).strip().replace("_", "")
    if "**" in s:
        base, _, exp = s.partition("**")
        value = Decimal(base) ** int(exp)
    else:
        try:
            value = Decimal(s)
        except InvalidOperation:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value.is_finite() or value != value.to_integral_value() or value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return int(value)


def parse_count_list(text: str) -> list[int]:
    items = [s for s in str(text).split(",") if s.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return [parse_count(s) for s in items]


def parse_pair(text: str) -> tuple[int, int]:
    try:
        n, r = (int(s) for s in str(text).split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected n,r, got {text!r}") from None
    return n, r


def parse_poly(text: str) -> IntPolynomial:
    try:
        return IntPolynomial.from_key(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# output ------------------------------------------------------------------

def emit(records: Sequence[dict], fmt: str, single: bool = False) -> str:
    if fmt == "json":
        body = records[0] if single and records else list(records)
        return json.dumps(body, indent=2) + "\n"
    if not records:
        return ""
    cols = list(records[0])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(records)
        return buf.getvalue()
    if single:
        width = max(len(c) for c in cols)
        return "".join(f"{c.ljust(width)} : {records[0][c]}\n" for c in cols)
    return aligned_table(cols, [[str(r[c]) for c in cols] for r in records])


# commands ----------------------------------------------------------------

def _family_or_fail(pair: tuple[int, int]) -> IntPolynomial:
    n, r = pair
    if not is_admissible(n, r):
        raise ValueError(f"(n, r) = ({n}, {r}) is not admissible")
    return family(n, r)[0]


def cmd_enumerate(args) -> str:
    rows = []
    for fp in enumerate_pairs(args.n_max, include_triangular=args.include_triangular):
        f, _ = family(fp.n, fp.r)
        rows.append({"n": fp.n, "r": fp.r, "polynomial": str(f), "reducible": not fp.irreducible})
    return emit(rows, args.format)


def cmd_constant(args) -> str:
    fs = [_family_or_fail(p) for p in args.pair or []] + list(args.poly or [])
    if not fs:
        raise UsageError("constant: give --pair or --poly")
    if args.trace:
        rows = [{"P": P, "C": f"{v:.12g}"} for P, v in convergence_trace(fs, args.trace)]
        return emit(rows, args.format)
    const = ledger_get_or_compute(fs, args.P, args.ledger) if args.ledger else compute_constant(fs, args.P)
    row = {
        "polynomials": const.ledger_key,
        "P": const.prime_bound,
        "k": const.k,
        "C": f"{const.value:.12g}",
        "C_over_deg": f"{degree_normalised(const, fs):.12g}",
    }
    return emit([row], args.format, single=True)


def cmd_table1(args) -> str:
    f = _family_or_fail(args.pair)
    reps = [compare(f, x, args.P, ledger=args.ledger, workers=args.threads, tolerance=args.tolerance,
                    journal=args.journal) for x in args.x]
    if args.format == "table":
        rows = [{"x": r.x, "Q(x)": r.Q, "E(x)": f"{r.E:.2f}",
                 "relative error": f"{100 * r.relative_error:.4f}%"} for r in reps]
    else:
        rows = [{"poly": r.poly_key, "x": r.x, "Q": r.Q, "E": r.E,
                 "relative_error": r.relative_error, "P": r.constant_bound} for r in reps]
    return emit(rows, args.format)


def cmd_scan_powers(args) -> str:
    f = _family_or_fail(args.pair)
    hits = scan_prime_powers(f, args.x, workers=args.threads, journal=args.journal)
    rows = [{"t": h.t, "value": h.value, "base": h.base, "exponent": h.exponent,
             "power": f"{h.base}^{h.exponent}"} for h in hits]
    if not rows:
        return "no proper prime power values\n" if args.format == "table" else emit(rows, args.format)
    return emit(rows, args.format)


def cmd_design(args) -> str:
    n, r = args.pair
    d = design_params(n, r, args.t)
    if d is None:
        c = family(n, r)[0](args.t)
        report = useful_pair_check(n, c)
        if args.format == "json":
            return json.dumps({"design": None, "c": c, "reason": report.reason}, indent=2) + "\n"
        return f"f_{n},{r}({args.t}) = {c}: no design ({report.reason})\n"
    return emit([d.to_json()], args.format, single=True)


def cmd_realize(args) -> str:
    n, r, a = realize_even_power(args.p, args.i)
    f = family(n, r)[0]
    row = {"n": n, "r": r, "a": a, "polynomial": str(f), "f(0)": f(0),
           "power": f"{args.p}^{2 * args.i}"}
    return emit([row], args.format, single=True)


def cmd_verify(args) -> tuple[str, int]:
    checks = acceptance.run(args.profile, args.criteria)
    if args.format == "json":
        out = json.dumps([c.__dict__ for c in checks], indent=2) + "\n"
    elif args.format == "csv":
        out = emit([c.__dict__ for c in checks], "csv")
    else:
        out = "\n".join(acceptance.summary_lines(checks)) + "\n"
    return out, 0 if all(c.passed for c in checks) else 2


# parser ------------------------------------------------------------------

def _add_globals(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--format", choices=("table", "csv", "json"), default=d)
    p.add_argument("--threads", type=int, default=d, help="worker processes (default: all cores)")
    p.add_argument("--prime-cache", dest="prime_cache", default=d, help="binary prime cache file")
    p.add_argument("--ledger", default=d, help="constant ledger file")
    p.add_argument("--tolerance", type=float, default=d, help="relative quadrature tolerance")
    p.add_argument("--config", default=d, help="JSON file with defaults for any option")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="blockprimes", description=__doc__.splitlines()[0])
    _add_globals(parser, suppress=False)
    common = _Parser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="admissible pairs (n, r)")
    p.add_argument("--n-max", dest="n_max", type=parse_count, required=True)
    p.add_argument("--include-triangular", dest="include_triangular", action="store_true", default=None)
    p.set_defaults(handler=cmd_enumerate)

    p = sub.add_parser("constant", parents=[common], help="truncated constant C(f)")
    p.add_argument("--pair", type=parse_pair, action="append")
    p.add_argument("--poly", type=parse_poly, action="append", help="coefficients low to high, e.g. [41,1,1]")
    p.add_argument("--P", type=parse_count, default=None)
    p.add_argument("--trace", type=parse_count_list, default=None, help="ascending checkpoints")
    p.set_defaults(handler=cmd_constant)

    p = sub.add_parser("table1", parents=[common], help="Q(x), E(x) and relative error")
    p.add_argument("--pair", type=parse_pair, default=None)
    p.add_argument("--x", type=parse_count_list, required=True)
    p.add_argument("--P", type=parse_count, default=None)
    p.add_argument("--journal", default=None)
    p.set_defaults(handler=cmd_table1)

    p = sub.add_parser("scan-powers", parents=[common], help="proper prime power values")
    p.add_argument("--pair", type=parse_pair, required=True)
    p.add_argument("--x", type=parse_count, required=True)
    p.add_argument("--journal", default=None)
    p.set_defaults(handler=cmd_scan_powers)

    p = sub.add_parser("design", parents=[common], help="design parameters from f_{n,r}(t)")
    p.add_argument("--pair", type=parse_pair, required=True)
    p.add_argument("--t", type=parse_count, required=True)
    p.set_defaults(handler=cmd_design)

    p = sub.add_parser("realize", parents=[common], help="reducible pair with f(0) = p^(2i)")
    p.add_argument("--p", type=parse_count, required=True)
    p.add_argument("--i", type=parse_count, required=True)
    p.set_defaults(handler=cmd_realize)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance checks")
    p.add_argument("--profile", choices=acceptance.PROFILES, default=None)
    p.add_argument("--criteria", type=parse_count_list, default=None)
    p.set_defaults(handler=cmd_verify)
    return parser


COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "enumerate": {"include_triangular": False},
    "constant": {"P": DEFAULT_P},
    "table1": {"pair": (2, 3), "P": DEFAULT_P},
    "verify": {"profile": "quick"},
}


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return {k.replace("-", "_"): v for k, v in data.items()}


_CONFIG_PARSERS = {
    "P": parse_count, "x": lambda v: v if isinstance(v, list) else parse_count_list(v),
    "n_max": parse_count, "t": parse_count, "p": parse_count, "i": parse_count,
    "pair": lambda v: tuple(v) if isinstance(v, list) else parse_pair(v),
}


def resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from the config file, then from built-in defaults; flags win."""
    config = _load_config(getattr(args, "config", None))
    defaults = {**GLOBAL_DEFAULTS, **COMMAND_DEFAULTS.get(args.command, {})}
    for key in set(config) | set(defaults):
        if getattr(args, key, None) is not None:
            continue
        if key in config:
            value = config[key]
            conv = _CONFIG_PARSERS.get(key)
            if conv is not None and isinstance(value, (str, list)):
                value = conv(value)
            if key == "x" and isinstance(value, list):
                value = [parse_count(v) for v in value]
            setattr(args, key, value)
        elif key in defaults:
            setattr(args, key, defaults[key])
    if args.threads is None:
        args.threads = os.cpu_count() or 1
    if args.command == "constant" and args.pair:
        pairs = args.pair
        args.pair = [tuple(pairs)] if isinstance(pairs[0], int) else [tuple(q) for q in pairs]
    return args


def _with_prime_cache(path: Optional[str]):
    loaded = None
    if path and Path(path).exists():
        loaded = cache_load(path)
        install_shared(loaded)
    return loaded


def _save_prime_cache(path: Optional[str], loaded) -> None:
    cache = current_shared()
    if path and cache is not None and (loaded is None or cache.bound > loaded.bound):
        cache_save(cache, path)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = resolve(parser.parse_args(argv))
        if args.command == "table1" and not args.x:
            raise UsageError("table1: --x needs at least one value")
        loaded = _with_prime_cache(args.prime_cache)
        result = args.handler(args)
        _save_prime_cache(args.prime_cache, loaded)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError, QuadratureError, PrimeCacheError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out, code = result if isinstance(result, tuple) else (result, 0)
    sys.stdout.write(out)
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
