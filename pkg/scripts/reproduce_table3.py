"""Proper prime-power values f_{n,r}(t) = p^e, 1 <= t <= x, for every irreducible f_{n,r} with n <= 9.

    python scripts/reproduce_table3.py --x 1e6
"""

import argparse
import sys

from blockprimes.cli import parse_count
from blockprimes.counter import default_workers, scan_prime_powers
from blockprimes.polynomial import enumerate_pairs, family


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--x", type=parse_count, default=10**5)
    ap.add_argument("--threads", type=int, default=default_workers())
    ap.add_argument("--journal", default=None)
    args = ap.parse_args(argv)

    empty = []
    print(f"{'n':>3} {'r':>3} {'t':>9} {'value':>24} {'p^e':>16}")
    for fp in enumerate_pairs(args.n_max, include_triangular=False):
        hits = scan_prime_powers(family(fp.n, fp.r)[0], args.x, workers=args.threads, journal=args.journal)
        if not hits:
            empty.append(f"({fp.n},{fp.r})")
        for h in hits:
            print(f"{fp.n:>3} {fp.r:>3} {h.t:>9} {h.value:>24} {f'{h.base}^{h.exponent}':>16}", flush=True)
    print(f"no proper prime power values for t <= {args.x}:", ", ".join(empty) or "none")
    return 0


if __name__ == "__main__":
    sys.exit(main())
