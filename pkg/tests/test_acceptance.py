"""Acceptance criteria, one test each.

Every test records a one-line verdict ``ACCEPT <id> pass|fail <summary>``;
the lines are printed as they are produced (visible with ``-s``) and repeated
in the terminal summary by ``conftest.py``.  Run standalone with
``python tests/test_acceptance.py``.
"""

import random
import sys
import time
from math import comb

import pytest

from hyperlines.analysis import (
    check_composition,
    check_lemma_simple,
    check_pair_count,
    check_small_intersection,
    check_tree,
    easy_bound_census,
    upper_bound_nlogn,
)
from hyperlines.core import BLUE, RED, Colouring, max_red_intersection, num_triples, summarize
from hyperlines.generators import btree_colouring, compose, empty, planar, grid, projective_plane, steiner, uniform
from hyperlines.search import anneal_min, exhaustive_min
from hyperlines.treespace import random_tree, tree_census
from hyperlines.verify import random_composition_pairs, weight_invariance

from oracle import naive_lines, red_triple_set

RESULTS = []
N7_SEED, N7_STEPS = 1, 50_000


def record(cid, ok, summary):
    text = f"ACCEPT {cid:>2} {'pass' if ok else 'fail'} {summary}"
    RESULTS.append(text)
    print(text)
    assert ok, text


def test_01_small_table():
    expected = {2: 2, 3: 4, 4: 7, 5: 11, 6: 14}
    got, times = {}, {}
    for n in expected:
        t = time.perf_counter()
        got[n] = exhaustive_min(n).best_m
        times[n] = time.perf_counter() - t
    ok = got == expected and max(times[n] for n in (2, 3, 4, 5)) < 10 and times[6] < 600
    record(1, ok, f"m(2..6)={[got[n] for n in expected]} t6={times[6]:.1f}s")


def test_02_n7_witness():
    t = time.perf_counter()
    rep = anneal_min(7, seed=N7_SEED, steps=N7_STEPS)
    elapsed = time.perf_counter() - t
    fallback = summarize(compose(empty(3), empty(4))).m
    ok = rep.best_m <= 17 and summarize(rep.witness).m == rep.best_m and elapsed < 600 and fallback <= 18
    record(2, ok, f"anneal seed={N7_SEED} m={rep.best_m} ({elapsed:.1f}s) compose fallback m={fallback}")


def test_03_product_census():
    t = time.perf_counter()
    rep = easy_bound_census(5)
    elapsed = time.perf_counter() - t
    ok = rep.passed and rep.details["scanned"] == 1024 and rep.details["equality_codes"] == [0, 1023] and elapsed < 1
    record(3, ok, f"{rep.measured} in {elapsed:.3f}s")


def test_04_lemma_simple():
    violations = 0
    for n in range(2, 6):
        violations += sum(not check_lemma_simple(Colouring(n, c)).passed for c in range(1 << num_triples(n)))
    rng = random.Random(4)
    for n in (6, 7, 8):
        violations += sum(not check_lemma_simple(Colouring(n, rng.getrandbits(num_triples(n)))).passed
                          for _ in range(10_000))
    record(4, violations == 0, f"violations={violations}")


def test_05_btree_upper_bound():
    t = time.perf_counter()
    bad = [n for n in range(2, 65) if summarize(btree_colouring(n)).m > upper_bound_nlogn(n)]
    elapsed = time.perf_counter() - t
    record(5, not bad and elapsed < 30, f"violations={bad} in {elapsed:.1f}s")


def test_06_composition():
    S = compose(empty(3), empty(3))
    r, b = naive_lines(6, red_triple_set(S))
    L = summarize(S)
    base_ok = (L.m_red, L.m_blue, L.m) == (len(r), len(b), 14) == (9, 5, 14)
    failed = [rep for rep in (check_composition(a, c) for a, c in random_composition_pairs(100, 12, 7))
              if not rep.passed]
    record(6, base_ok and not failed, f"empty3+empty3=({L.m_red},{L.m_blue},{L.m}) random failures={len(failed)}")


def test_07_08_tree_census():
    counts = [len(tree_census(n)) for n in range(2, 9)]
    census_fail = [T for n in range(3, 9) for T in tree_census(n) if not check_tree(T).passed]
    rng = random.Random(8)
    sampled = [random_tree(rng.randint(3, 16), rng) for _ in range(200)]
    sample_fail = [T for T in sampled if not check_tree(T).passed]
    ok7 = counts == [1, 1, 2, 3, 6, 11, 23] and not census_fail and not sample_fail
    record(7, ok7, f"classes={counts} census failures={len(census_fail)} sampled failures={len(sample_fail)}")
    inv = weight_invariance(100, seed=8)
    record(8, ok7 and inv.passed, f"bound/equality failures={len(census_fail)} weight-invariance failures={inv.measured}")


SMALL_INTER = {
    "steiner9": lambda: steiner(9),
    "steiner15": lambda: steiner(15),
    "pg2": lambda: projective_plane(2),
    "pg3": lambda: projective_plane(3),
    "grid3": lambda: planar(grid(3)),
    "grid4": lambda: planar(grid(4)),
}


def test_09_small_intersection():
    reps = {name: check_small_intersection(make()) for name, make in SMALL_INTER.items()}
    failed = [name for name, rep in reps.items() if not rep.passed]
    record(9, not failed, " ".join(f"{k}:m={r.measured}>={r.bound}" for k, r in reps.items()))


def test_10_pair_count():
    failed = []
    for name, make in SMALL_INTER.items():
        S = make()
        for c in (RED, BLUE):
            rep = check_pair_count(S, c)
            if not rep.passed:
                failed.append(f"{name}{c.value}")
        if name.startswith(("grid", "pg")) and not check_pair_count(S, RED).details["strengthened"]:
            failed.append(f"{name} strengthened")
    g3 = check_pair_count(planar(grid(3)), RED)
    dist = g3.details["distribution"]
    ok = not failed and (dist[3], dist[2], g3.measured) == (8, 12, 36)
    record(10, ok, f"failures={failed} grid3: 8*3+12*1={g3.measured}")


def test_11_named_counts():
    pg3 = summarize(projective_plane(3)).counts()[:2]
    s9 = summarize(steiner(9)).counts()[:2]
    uni = all(summarize(uniform(n, RED)).counts()[:2] == (1, comb(n, 2)) for n in range(4, 11))
    pg2 = summarize(projective_plane(2))
    k = max_red_intersection(projective_plane(2))
    ok = pg3 == (13, 78) and s9 == (12, 9) and uni and pg2.m_red == 7
    record(11, ok, f"pg3={pg3} steiner9={s9} uniform ok={uni} pg2 m_red={pg2.m_red} m_blue={pg2.m_blue} k={k}")


def test_12_oracle_equivalence():
    rng = random.Random(12)
    mismatches = 0
    for _ in range(1000):
        n = rng.randint(2, 8)
        S = Colouring(n, rng.getrandbits(num_triples(n)))
        r, b = naive_lines(n, red_triple_set(S))
        L = summarize(S)
        got_r = {tuple(x.points()) for x in L.red_lines}
        got_b = {tuple(x.points()) for x in L.blue_lines}
        if (got_r, got_b) != (r, b) or L.counts() != (len(r), len(b), len(r) + len(b), len(r) * len(b)):
            mismatches += 1
    record(12, mismatches == 0, f"mismatches={mismatches}/1000")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
