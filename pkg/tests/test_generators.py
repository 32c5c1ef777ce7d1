import itertools
from math import comb

import pytest

from hyperlines.analysis import composition_families, upper_bound_nlogn
from hyperlines.core import BLUE, RED, CapabilityError, Colouring, generating_pairs, line_size_distribution, summarize
from hyperlines.generators import (
    bose_triples,
    btree_colouring,
    compose,
    empty,
    grid,
    planar,
    projective_plane,
    projective_points,
    steiner,
    uniform,
)

from oracle import naive_counts, red_triple_set


def test_uniform():
    assert summarize(uniform(5, RED)).counts()[:2] == (1, 10)
    assert summarize(uniform(5, BLUE)).counts() == (10, 1, 11, 10)
    S = uniform(2, RED)
    assert S.num_triples == 0 and summarize(S).m == 2
    for n in (1, 65):
        with pytest.raises(ValueError):
            uniform(n)


@pytest.mark.parametrize("n", [7, 9, 15, 21, 27, 63])
def test_steiner_every_pair_once(n):
    S = steiner(n)
    assert S.num_red() == comb(n, 2) // 3
    cover = {}
    for t in S.red_triples():
        for p in itertools.combinations(t, 2):
            cover[p] = cover.get(p, 0) + 1
    assert len(cover) == comb(n, 2) and set(cover.values()) == {1}


@pytest.mark.parametrize("n", [9, 15, 21])
def test_steiner_lines(n):
    L = summarize(steiner(n))
    assert (L.m_red, L.m_blue) == (comb(n, 2) // 3, n)
    assert all(len(p) == 3 for p in generating_pairs(steiner(n)).red.values())


def test_steiner_inadmissible():
    for n in (5, 8, 13, 69):
        with pytest.raises(CapabilityError):
            steiner(n)


def test_bose_blocks_sorted_and_distinct():
    blocks = bose_triples(15)
    assert len(set(blocks)) == 35 and all(b == tuple(sorted(b)) for b in blocks)


@pytest.mark.parametrize("q", [2, 3, 5, 7])
def test_projective_plane_structure(q):
    n = q * q + q + 1
    S = projective_plane(q)
    gp = generating_pairs(S)
    assert S.n == n and len(gp.red) == n
    for L, pairs in gp.red.items():
        assert len(L) == q + 1 and len(pairs) == comb(q + 1, 2)
    for a, b in itertools.combinations(gp.red, 2):
        assert len(a & b) == 1


def test_projective_counts():
    assert summarize(projective_plane(3)).counts()[:2] == (13, 78)
    # q = 2: pairs on one Fano line share the blue line V minus the third point
    assert summarize(projective_plane(2)).counts()[:2] == (7, 7)
    assert projective_points(2)[0] == (0, 0, 1)
    for q in (4, 11):
        with pytest.raises(CapabilityError):
            projective_plane(q)


def test_planar():
    assert planar([(0, 0), (1, 1), (2, 2)]).bits == 1
    assert planar([(0, 0), (1, 0), (0, 1)]).bits == 0
    L = summarize(planar(grid(3)))
    assert L.m_red == 20
    d = line_size_distribution(planar(grid(3)), RED)
    assert (d[3], d[2]) == (8, 12)
    with pytest.raises(ValueError):
        planar([(0, 0), (0, 0), (1, 2)])
    big = 2 ** 30
    assert planar([(-big, -big), (0, 0), (big, big)]).bits == 1


def test_btree_rule_n4():
    S = btree_colouring(4)
    # leaves 0,1 form the left subtree of the root
    assert S.is_red(0, 1, 2) and S.is_red(0, 1, 3)
    assert not S.is_red(0, 2, 3) and not S.is_red(1, 2, 3)
    m = summarize(S).m
    assert 7 <= m <= 8


def test_btree_bound_all_n():
    for n in range(2, 65):
        assert summarize(btree_colouring(n)).m <= upper_bound_nlogn(n)
    assert summarize(btree_colouring(8)).m <= 24


def test_compose_empty3_empty3():
    S = compose(empty(3), empty(3))
    assert summarize(S).counts()[:3] == (9, 5, 14)
    assert naive_counts(6, red_triple_set(S)) == (9, 5)


def test_compose_crossing_rule():
    S = compose(uniform(3, RED), empty(2))
    assert S.is_red(0, 1, 3) and not S.is_red(0, 3, 4) and S.is_red(0, 1, 2)


def test_compose_families_present():
    S1, S2 = projective_plane(2), empty(4)
    L = summarize(compose(S1, S2))
    red = {x.mask for x in L.red_lines}
    blue = {x.mask for x in L.blue_lines}
    for name, (c, masks) in composition_families(S1, S2).items():
        assert masks <= (red if c is RED else blue), name
    assert L.m <= summarize(S1).m + summarize(S2).m + 11


def test_compose_overflow():
    with pytest.raises(ValueError):
        compose(Colouring(40), Colouring(30))
