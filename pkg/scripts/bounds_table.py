#!/usr/bin/env python3
"""Tabulate the two support-size lower bounds across (d, t).

Shows, in natural logs, where the volume-argument bound overtakes the
moment-counting bound; with the placeholder constant 1 the crossover sits
around d = 16 at t = 4 d^2 ln 4.

Example:
    python scripts/bounds_table.py --d 8 12 16 20 --t-mult 1 2 4
"""

import argparse
import math

from prulab.bounds import improved_support_bound, prior_support_bound


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, nargs="+", default=[8, 12, 16, 20, 24])
    ap.add_argument("--t-mult", type=float, nargs="+", default=[1.0, 2.0, 4.0],
                    help="multiples of 4 d^2 ln 4")
    ap.add_argument("--delta", type=float, default=0.0)
    ap.add_argument("--c-design", type=float, default=1.0)
    args = ap.parse_args()

    print(f"{'d':>4} {'t':>8} {'ln prior':>12} {'ln improved':>12}  winner")
    for d in args.d:
        for mult in args.t_mult:
            t = math.ceil(4 * d * d * math.log(4.0) * mult)
            pri = prior_support_bound(d, t, args.delta, as_log=True)
            imp = improved_support_bound(d, t, args.delta, args.c_design, as_log=True)
            winner = "improved" if imp > pri else "prior"
            print(f"{d:>4} {t:>8} {pri:>12.2f} {imp:>12.2f}  {winner}")


if __name__ == "__main__":
    main()
