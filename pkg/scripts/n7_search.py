"""Annealing restarts at a given n, reporting the spread of final values.

    python scripts/n7_search.py --n 7 --seeds 10 --steps 50000
"""

import argparse
from collections import Counter

from hyperlines.search import anneal_min


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--steps", type=int, default=50_000)
    args = ap.parse_args()

    results = {s: anneal_min(args.n, seed=s, steps=args.steps).best_m for s in range(args.seeds)}
    for s, m in results.items():
        print(f"seed={s} m={m}")
    print("histogram:", dict(sorted(Counter(results.values()).items())))


if __name__ == "__main__":
    main()
