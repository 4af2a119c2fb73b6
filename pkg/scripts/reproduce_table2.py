"""Constants, estimates and exact counts for every irreducible f_{n,r} with n <= 9.

    python scripts/reproduce_table2.py --P 1e6 --x 1e5
"""

import argparse
import sys

from blockprimes.cli import parse_count
from blockprimes.counter import count_Q, default_workers
from blockprimes.estimator import EstimateRequest, estimate_E
from blockprimes.hlconstant import compute_constant, ledger_get_or_compute
from blockprimes.polynomial import enumerate_pairs, family


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--P", type=parse_count, default=10**6)
    ap.add_argument("--x", type=parse_count, default=10**5)
    ap.add_argument("--threads", type=int, default=default_workers())
    ap.add_argument("--ledger", default=None)
    args = ap.parse_args(argv)

    print(f"C truncated at P = {args.P}; Q and E at x = {args.x}")
    print(f"{'n':>3} {'r':>3} {'f(t)':>18} {'C':>10} {'Q(x)':>10} {'E(x)':>14} {'rel. error':>11}")
    for fp in enumerate_pairs(args.n_max, include_triangular=False):
        f = family(fp.n, fp.r)[0]
        C = ledger_get_or_compute([f], args.P, args.ledger) if args.ledger else compute_constant([f], args.P)
        Q = count_Q(f, args.x, workers=args.threads)
        E = estimate_E(EstimateRequest(f, C, args.x))
        print(f"{fp.n:>3} {fp.r:>3} {str(f):>18} {C.value:>10.5f} {Q:>10} {E:>14.2f} {100 * (E - Q) / Q:>10.3f}%",
              flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
