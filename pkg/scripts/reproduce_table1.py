"""Q(x), E(x) and relative error for f_{2,3}, with an optional reconciliation column.

The reconciliation column counts t in [0, x] (not [1, x]) whose value is 1 or
passes a single base-2 Fermat test. That convention accounts for the
published Q column exactly; see the project notes.

    python scripts/reproduce_table1.py --x 1e3,1e4,1e5,1e6 --P 1e7 --reconcile
"""

import argparse
import sys
import time

import gmpy2

from blockprimes.cli import parse_count, parse_count_list
from blockprimes.counter import compare, default_workers
from blockprimes.polynomial import family


def fermat_count_from_zero(f, x):
    c2, c1, c0 = f.coeffs[2], f.coeffs[1], f.coeffs[0]
    count = 0
    for t in range(x + 1):
        v = (c2 * t + c1) * t + c0
        if v == 1 or gmpy2.is_fermat_prp(v, 2):
            count += 1
    return count


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pair", default="2,3")
    ap.add_argument("--x", type=parse_count_list, default=parse_count_list("1e3,1e4,1e5,1e6"))
    ap.add_argument("--P", type=parse_count, default=10**7)
    ap.add_argument("--threads", type=int, default=default_workers())
    ap.add_argument("--ledger", default=None)
    ap.add_argument("--reconcile", action="store_true")
    args = ap.parse_args(argv)

    n, r = (int(s) for s in args.pair.split(","))
    f = family(n, r)[0]
    header = f"{'x':>12} {'Q(x)':>10} {'E(x)':>14} {'rel. error':>11}"
    if args.reconcile:
        header += f" {'Q (t>=0, base-2 Fermat)':>24}"
    print(f"f_{n},{r}(t) = {f}, constant truncated at P = {args.P}")
    print(header)
    for x in args.x:
        t0 = time.perf_counter()
        rep = compare(f, x, args.P, ledger=args.ledger, workers=args.threads)
        line = f"{x:>12} {rep.Q:>10} {rep.E:>14.2f} {100 * rep.relative_error:>10.3f}%"
        if args.reconcile:
            line += f" {fermat_count_from_zero(f, x):>24}"
        print(line + f"   ({time.perf_counter() - t0:.1f} s)", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
