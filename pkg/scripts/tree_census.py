"""Tabulate tree-derived systems: classes per n, blue-formula agreement and
the trees that meet the m lower bound.

    python scripts/tree_census.py [--max-n 8]
"""

import argparse

from hyperlines.core import summarize
from hyperlines.treespace import (
    is_extremal_tree,
    tree_blue_count,
    tree_census,
    tree_m_lower_bound,
    tree_system,
    twin_decomposition,
)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    print(f"{'n':>2} {'classes':>7} {'bound':>5} {'min_m':>5} {'tight':>5} blue_ok")
    for n in range(3, args.max_n + 1):
        trees = tree_census(n)
        ms, blue_ok, tight = [], True, []
        for T in trees:
            L = summarize(tree_system(T))
            ms.append(L.m)
            blue_ok &= L.m_blue == tree_blue_count(twin_decomposition(T))
            if L.m == tree_m_lower_bound(n):
                tight.append(T)
        assert all(is_extremal_tree(T) for T in tight)
        print(f"{n:>2} {len(trees):>7} {tree_m_lower_bound(n):>5} {min(ms):>5} {len(tight):>5} {blue_ok}")
        for T in tight:
            print(f"   tight: {T.edges}")


if __name__ == "__main__":
    main()
