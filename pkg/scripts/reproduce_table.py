"""Print m(n) for n = 2..6 by exhaustive orbit search, plus an n = 7 run.

    python scripts/reproduce_table.py [--n7-mode bnb|anneal]
"""

import argparse
import time

from hyperlines.core import summarize
from hyperlines.formats import format_hl3
from hyperlines.generators import compose, empty
from hyperlines.search import anneal_min, bnb_min, exhaustive_min


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n7-mode", choices=("bnb", "anneal"), default="bnb")
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--steps", type=int, default=50_000)
    args = ap.parse_args()

    for n in range(2, 7):
        t = time.perf_counter()
        rep = exhaustive_min(n)
        print(f"n={n} m={rep.best_m} orbits={rep.nodes_visited} ({time.perf_counter() - t:.2f}s)")

    t = time.perf_counter()
    if args.n7_mode == "bnb":
        rep = bnb_min(7)
    else:
        rep = anneal_min(7, seed=args.seed, steps=args.steps)
    tag = "exact" if rep.exhaustive else "upper bound"
    print(f"n=7 m={rep.best_m} ({tag}, {rep.mode}, {time.perf_counter() - t:.2f}s)")
    print(f"compose(empty(3), empty(4)) m={summarize(compose(empty(3), empty(4))).m}")
    print("witness:")
    print(format_hl3(rep.witness), end="")


if __name__ == "__main__":
    main()
