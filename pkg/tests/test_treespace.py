import random
from math import comb

import networkx as nx
import numpy as np
import pytest

from hyperlines.core import CapabilityError, Colouring, summarize
from hyperlines.treespace import (
    DistanceMatrix,
    WeightedGraph,
    all_pairs_shortest,
    derive,
    double_broom,
    enumerate_trees,
    is_extremal_tree,
    is_red_floor_extremal,
    path,
    prufer_decode,
    random_tree,
    random_weighting,
    s_tree,
    spider,
    star,
    tree,
    tree_blue_count,
    tree_census,
    tree_code,
    tree_m_lower_bound,
    tree_red_floor,
    tree_system,
    twin_decomposition,
)

from oracle import between, naive_counts, red_triple_set


def _counts(T):
    return naive_counts(T.n, red_triple_set(tree_system(T)))


# --- metrics ----------------------------------------------------------------

def test_shortest_paths_examples():
    d = all_pairs_shortest(WeightedGraph.of(3, [(0, 1), (1, 2)])).d
    assert d[0, 2] == 2
    d = all_pairs_shortest(WeightedGraph.of(3, [(0, 1, 1), (1, 2, 1), (0, 2, 3)])).d
    assert d[0, 2] == 2
    d = all_pairs_shortest(star(5).unit_graph()).d
    assert all(d[i, j] == 2 for i in range(1, 5) for j in range(1, 5) if i != j)


def test_shortest_paths_match_networkx():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(2, 12)
        G = nx.gnm_random_graph(n, rng.randint(n - 1, n * (n - 1) // 2), seed=rng.randrange(10 ** 6))
        if not nx.is_connected(G):
            continue
        edges = [(u, v, rng.randint(1, 9)) for u, v in G.edges]
        D = all_pairs_shortest(WeightedGraph.of(n, edges))
        H = nx.Graph()
        H.add_weighted_edges_from(edges)
        ref = dict(nx.all_pairs_dijkstra_path_length(H))
        assert all(D.d[u, v] == ref[u][v] for u in range(n) for v in range(n))


def test_disconnected_graph_rejected():
    with pytest.raises(ValueError):
        all_pairs_shortest(WeightedGraph.of(4, [(0, 1), (2, 3)]))


def test_graph_invariants():
    for edges in ([(0, 0)], [(0, 1), (1, 0)], [(0, 1, 0)], [(0, 5)]):
        with pytest.raises(ValueError):
            WeightedGraph.of(3, edges)


def test_distance_matrix_invariants():
    with pytest.raises(ValueError):
        DistanceMatrix(3, np.array([[0, 1, 5], [1, 0, 1], [5, 1, 0]]))
    with pytest.raises(ValueError):
        DistanceMatrix(2, np.array([[0, 1], [2, 0]]))


def test_derive_matches_betweenness_oracle():
    rng = random.Random(4)
    for _ in range(20):
        n = rng.randint(3, 9)
        G = nx.gnm_random_graph(n, rng.randint(n, n * (n - 1) // 2), seed=rng.randrange(10 ** 6))
        if not nx.is_connected(G):
            continue
        D = all_pairs_shortest(WeightedGraph.of(n, [(u, v, rng.randint(1, 4)) for u, v in G.edges]))
        S = derive(D)
        d = D.d.tolist()
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    assert S.is_red(i, j, k) == between(d, i, j, k)


@pytest.mark.parametrize("n", [3, 5, 8])
def test_path_and_star_systems(n):
    assert summarize(tree_system(path(n))).counts()[:2] == (1, comb(n, 2))
    if n >= 4:
        assert summarize(tree_system(star(n))).counts()[:2] == (comb(n - 1, 2) + 1, n)


def test_weights_immaterial_on_trees():
    rng = random.Random(3)
    for _ in range(100):
        T = random_tree(rng.randint(3, 14), rng)
        unit = derive(all_pairs_shortest(T.unit_graph()))
        assert derive(all_pairs_shortest(random_weighting(T, rng))) == unit


# --- tree constructors and twins --------------------------------------------

def test_s_tree():
    T = s_tree(2, 3)
    dec = twin_decomposition(T)
    assert T.n == 5 and (dec.s, dec.a, dec.b) == (1, 2, 3)
    assert dec.classes[0] == frozenset({3, 4}) and dec.anchor(0) == 0
    for p, q in ((1, 3), (2, 2), (40, 30)):
        with pytest.raises(ValueError):
            s_tree(p, q)


@pytest.mark.parametrize("n", [2, 4, 5, 9])
def test_path_has_no_twins(n):
    dec = twin_decomposition(path(n))
    assert (dec.s, dec.a, dec.b) == (0, 0, n)


def test_path3_ends_are_twins():
    dec = twin_decomposition(path(3))
    assert (dec.s, dec.a, dec.b) == (1, 2, 1)


@pytest.mark.parametrize("n", [4, 5, 10])
def test_star_twins(n):
    dec = twin_decomposition(star(n))
    assert (dec.s, dec.a, dec.b) == (1, n - 1, 1)


def test_double_star_twins():
    dec = twin_decomposition(double_broom(2, 2, 2))
    assert (dec.s, dec.a, dec.b) == (2, 4, 2)
    assert set(dec.anchors) == {0, 1}


def test_tree_rejects_cycles_and_forests():
    with pytest.raises(ValueError):
        tree([(0, 1), (1, 2), (2, 0)], 4)
    with pytest.raises(ValueError):
        tree([(0, 1), (2, 3), (0, 1)], 4)


# --- closed forms -----------------------------------------------------------

def test_tree_blue_count_examples():
    assert tree_blue_count(twin_decomposition(path(7))) == comb(7, 2)
    assert tree_blue_count(twin_decomposition(star(7))) == 7
    assert tree_blue_count(twin_decomposition(s_tree(2, 3))) == 8
    assert _counts(s_tree(2, 3))[1] == 8


def test_tree_red_floor_examples():
    assert tree_red_floor(s_tree(2, 3)) == 4 == _counts(s_tree(2, 3))[0]
    sp = spider(3, 2)
    assert tree_red_floor(sp) == 1 and _counts(sp)[0] > 1
    db = double_broom(3, 2, 2)
    assert db.n == 7 and tree_red_floor(db) == 11 == _counts(db)[0]
    assert is_red_floor_extremal(db) and is_red_floor_extremal(s_tree(3, 4))
    assert not is_red_floor_extremal(sp)
    for T in (path(6), star(6)):
        with pytest.raises(CapabilityError):
            tree_red_floor(T)


@pytest.mark.parametrize("n, value", [(3, 4), (5, 11), (6, 16), (9, 30), (8, 25)])
def test_tree_m_lower_bound(n, value):
    assert tree_m_lower_bound(n) == value


def test_both_branches_agree_at_6():
    assert 36 // 4 + 6 + 1 == comb(6, 2) + 1 == tree_m_lower_bound(6)


def test_is_extremal_tree_examples():
    assert is_extremal_tree(path(5))
    assert is_extremal_tree(s_tree(4, 5))
    assert _counts(s_tree(4, 5)) == (11, 19)
    assert not is_extremal_tree(star(8))
    assert sum(_counts(star(8))) == comb(8, 2) + 2 > tree_m_lower_bound(8)
    assert is_extremal_tree(path(6)) and is_extremal_tree(s_tree(2, 4)) and is_extremal_tree(s_tree(3, 3))
    assert not is_extremal_tree(path(7))


# --- enumeration ------------------------------------------------------------

def test_census_sizes():
    assert [len(tree_census(n)) for n in range(2, 9)] == [1, 1, 2, 3, 6, 11, 23]


def test_census_matches_networkx():
    for n in range(3, 9):
        ours = {tree_code(T) for T in tree_census(n)}
        ref = {tree_code(tree(G.edges, n)) for G in nx.nonisomorphic_trees(n)}
        assert ours == ref


def test_tree_code_is_an_isomorphism_invariant():
    rng = random.Random(8)
    for _ in range(50):
        T = random_tree(rng.randint(2, 15), rng)
        sigma = rng.sample(range(T.n), T.n)
        U = tree([(sigma[u], sigma[v]) for u, v in T.edges], T.n)
        assert tree_code(U) == tree_code(T)
        assert nx.is_isomorphic(nx.Graph(T.edges), nx.Graph(U.edges))


def test_prufer_decode():
    T = prufer_decode([3, 3, 3])
    assert T.is_star() and T.n == 5


def test_sampled_mode_is_seeded():
    a = [T.edges for T in enumerate_trees(20, "sampled", count=5, seed=1)]
    b = [T.edges for T in enumerate_trees(20, "sampled", count=5, seed=1)]
    assert a == b and all(len(e) == 19 for e in a)


def test_enumeration_range_errors():
    with pytest.raises(CapabilityError):
        list(enumerate_trees(9))
    with pytest.raises(CapabilityError):
        list(enumerate_trees(65, "sampled"))


# --- census properties ------------------------------------------------------

@pytest.mark.parametrize("n", range(3, 9))
def test_census_formulas(n):
    bound = tree_m_lower_bound(n)
    for T in tree_census(n):
        r, b = _counts(T)
        dec = twin_decomposition(T)
        assert b == tree_blue_count(dec)
        if not (T.is_path() or T.is_star()):
            floor = tree_red_floor(T, dec)
            assert r >= floor
            assert (r == floor) == is_red_floor_extremal(T)
        assert r + b >= bound
        assert (r + b == bound) == is_extremal_tree(T)


def test_sampled_blue_formula_and_bound():
    rng = random.Random(12)
    for _ in range(200):
        T = random_tree(rng.randint(9, 16), rng)
        L = summarize(tree_system(T))
        assert L.m_blue == tree_blue_count(twin_decomposition(T))
        assert L.m >= tree_m_lower_bound(T.n)
        assert (L.m == tree_m_lower_bound(T.n)) == is_extremal_tree(T)


@pytest.mark.parametrize("n", [9, 10, 15, 16, 40])
def test_extremal_family_attains_bound(n):
    for a in ((n - 1) // 2,) if n % 2 else (n // 2 - 1, n // 2):
        T = s_tree(a, n - a)
        assert summarize(tree_system(T)).m == tree_m_lower_bound(n)
