#!/usr/bin/env python3
"""Sweep every brute-checkable closed form against direct enumeration.

Prints one CSV row per parameter cell: formula id, parameters, enumerated
count, closed-form value, and whether they agree.  Exits nonzero on any
disagreement.
"""

import argparse
import sys

from crossfam.constructions import (
    four_star_pair,
    split_cross_sperner_pair,
    top_layer_antichain,
    triangle_family,
    window_family,
)
from crossfam.formulas import eval_formula
from crossfam.search import brute_count


def rows(n_max):
    for k in range(2, 6):
        for n in range(max(6, 2 * k), n_max + 1):
            a1, a2 = four_star_pair(n, k)
            yield ("I_A1A2_15", {"n": n, "k": k},
                   brute_count("I_pair", a1, a2),
                   eval_formula("I_A1A2_15", n=n, k=k))
    for t in (1, 2, 3):
        for k in range(t + 1, 6):
            for n in range(2 * k - t + 1, n_max + 1):
                fam = window_family(n, k, t)
                yield ("I_Ankt_17", {"n": n, "k": k, "t": t},
                       brute_count("I_self", fam),
                       eval_formula("I_Ankt_17", n=n, k=k, t=t))
    for k in (2, 3, 4):
        for n in range(2 * k, n_max + 1):
            yield ("I_A3_case31", {"n": n, "k": k},
                   brute_count("I_self", triangle_family(n, k)),
                   eval_formula("I_A3_case31", n=n, k=k))
    for n in range(1, min(n_max, 10) + 1):
        yield ("example52", {"n": n},
               brute_count("I_self", top_layer_antichain(n)),
               eval_formula("example52", n=n))
    for n in range(2, min(n_max, 10) + 1):
        for x_size in range(1, n):
            a, b = split_cross_sperner_pair(n, list(range(1, x_size + 1)))
            yield ("cross_sperner_54", {"n": n, "x": x_size},
                   brute_count("I_pair", a, b),
                   2 ** n - 2 ** x_size - 2 ** (n - x_size) + 1)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=12)
    args = parser.parse_args()

    print("formula,params,enumerated,closed_form,agree")
    bad = 0
    for fid, params, got, want in rows(args.n_max):
        agree = got == want
        bad += not agree
        ptxt = " ".join(f"{k}={v}" for k, v in params.items())
        print(f"{fid},{ptxt},{got},{want},{str(agree).lower()}")
    if bad:
        print(f"{bad} disagreements", file=sys.stderr)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
