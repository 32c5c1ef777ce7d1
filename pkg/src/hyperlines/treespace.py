"""Metric-derived systems and the twin structure of trees.

A system is derived from a metric by colouring ``{a, b, c}`` red when one of
the three points lies between the other two, i.e. ``d(x,y) + d(y,z) == d(x,z)``
for some labelling.  For trees the colouring only depends on the shape, and
the line counts are governed by the twin classes: maximal groups (size >= 2)
of leaves hanging off the same vertex.
"""

from __future__ import annotations

import heapq
import itertools
import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .core import MAX_POINTS, CapabilityError, Colouring, triple_array


@dataclass(frozen=True)
class WeightedGraph:
    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_POINTS:
            raise ValueError(f"n must be in 1..{MAX_POINTS}")
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if w < 1 or int(w) != w:
                raise ValueError(f"edge weight must be a positive integer, got {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    @classmethod
    def of(cls, n: int, edges) -> "WeightedGraph":
        norm = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = int(e[2]) if len(e) > 2 else 1
            norm.append((u, v, w))
        return cls(n, tuple(norm))


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    n: int
    d: np.ndarray

    def __post_init__(self):
        d = self.d
        if d.shape != (self.n, self.n):
            raise ValueError("distance matrix has the wrong shape")
        if not np.array_equal(d, d.T) or np.any(np.diag(d) != 0):
            raise ValueError("distance matrix must be symmetric with zero diagonal")
        off = d[~np.eye(self.n, dtype=bool)]
        if np.any(off <= 0):
            raise ValueError("off-diagonal distances must be positive")
        if np.any(d[:, None, :] > d[:, :, None] + d[None, :, :]):
            raise ValueError("triangle inequality violated")

    def __eq__(self, other):
        return isinstance(other, DistanceMatrix) and self.n == other.n and np.array_equal(self.d, other.d)


def all_pairs_shortest(G: WeightedGraph) -> DistanceMatrix:
    """Exact integer Floyd-Warshall."""
    n = G.n
    inf = np.iinfo(np.int64).max // 4
    d = np.full((n, n), inf, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v, w in G.edges:
        d[u, v] = d[v, u] = min(d[u, v], w)
    for k in range(n):
        np.minimum(d, d[:, k:k + 1] + d[k:k + 1, :], out=d)
    if np.any(d >= inf):
        raise ValueError("graph is disconnected")
    return DistanceMatrix(n, d)


def derive(D: DistanceMatrix) -> Colouring:
    """Red triples are those with one point metrically between the others."""
    n = D.n
    if n < 2:
        raise ValueError("need at least two points")
    if n == 2:
        return Colouring(2, 0)
    t = triple_array(n)
    d = D.d
    ab, bc, ac = d[t[:, 0], t[:, 1]], d[t[:, 1], t[:, 2]], d[t[:, 0], t[:, 2]]
    red = (ab + bc == ac) | (ab + ac == bc) | (ac + bc == ab)
    return Colouring.from_array(n, red)


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_POINTS:
            raise ValueError(f"n must be in 1..{MAX_POINTS}")
        if len(self.edges) != self.n - 1:
            raise ValueError(f"a tree on {self.n} vertices has {self.n - 1} edges")
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u == v or not (0 <= u < self.n and 0 <= v < self.n) or v in adj[u]:
                raise ValueError(f"bad edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {0}, [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.n:
            raise ValueError("edges do not form a connected tree")
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if len(self.adj[v]) == 1]

    def is_path(self) -> bool:
        return all(len(a) <= 2 for a in self.adj)

    def is_star(self) -> bool:
        return self.n >= 3 and any(len(a) == self.n - 1 for a in self.adj)

    def distances(self) -> DistanceMatrix:
        n = self.n
        d = np.zeros((n, n), dtype=np.int64)
        for src in range(n):
            dist = {src: 0}
            frontier = [src]
            while frontier:
                nxt = []
                for x in frontier:
                    for y in self.adj[x]:
                        if y not in dist:
                            dist[y] = dist[x] + 1
                            nxt.append(y)
                frontier = nxt
            for v, dv in dist.items():
                d[src, v] = dv
        return DistanceMatrix(n, d)

    def path_between(self, x: int, y: int) -> list[int]:
        parent = {x: None}
        stack = [x]
        while stack:
            a = stack.pop()
            for b in self.adj[a]:
                if b not in parent:
                    parent[b] = a
                    stack.append(b)
        out = [y]
        while out[-1] != x:
            out.append(parent[out[-1]])
        return out[::-1]

    def weighted(self, weights: Sequence[int]) -> WeightedGraph:
        return WeightedGraph.of(self.n, [(u, v, w) for (u, v), w in zip(self.edges, weights)])

    def unit_graph(self) -> WeightedGraph:
        return self.weighted([1] * len(self.edges))


def tree(edges, n: int | None = None) -> Tree:
    edges = tuple((int(u), int(v)) for u, v in edges)
    if n is None:
        n = len(edges) + 1
    return Tree(n, edges)


def path(n: int) -> Tree:
    return tree([(i, i + 1) for i in range(n - 1)], n)


def star(n: int) -> Tree:
    """Centre 0 with leaves 1..n-1."""
    return tree([(0, i) for i in range(1, n)], n)


def s_tree(p: int, q: int) -> Tree:
    """Path on q vertices 0..q-1 with p extra leaves q..q+p-1 on vertex 0."""
    if p < 2 or q < 3 or p + q > MAX_POINTS:
        raise ValueError(f"s_tree needs p >= 2, q >= 3, p + q <= {MAX_POINTS}; got p={p}, q={q}")
    return tree([(i, i + 1) for i in range(q - 1)] + [(0, q + i) for i in range(p)], p + q)


def double_broom(q: int, p1: int, p2: int) -> Tree:
    """Path on q vertices with p1 leaves on one end and p2 on the other."""
    if q < 2:
        raise ValueError("double_broom needs a path of at least 2 vertices")
    edges = [(i, i + 1) for i in range(q - 1)]
    nxt = q
    for end, count in ((0, p1), (q - 1, p2)):
        for _ in range(count):
            edges.append((end, nxt))
            nxt += 1
    return tree(edges, nxt)


def spider(legs: int, length: int) -> Tree:
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return tree(edges, nxt)


def tree_system(T: Tree) -> Colouring:
    return derive(T.distances())


# ---------------------------------------------------------------------------
# twins and closed forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwinDecomposition:
    n: int
    classes: tuple[frozenset[int], ...]
    anchors: tuple[int, ...]

    @property
    def s(self) -> int:
        return len(self.classes)

    @property
    def a(self) -> int:
        return sum(len(c) for c in self.classes)

    @property
    def b(self) -> int:
        return self.n - self.a

    def anchor(self, i: int) -> int:
        return self.anchors[i]

    def class_of(self, v: int) -> int | None:
        for i, c in enumerate(self.classes):
            if v in c:
                return i
        return None


def twin_decomposition(T: Tree) -> TwinDecomposition:
    groups: dict[int, list[int]] = {}
    for v in T.leaves():
        (nb,) = T.adj[v]
        # a leaf adjacent to another leaf (n = 2) shares no neighbourhood with it
        if T.degree(nb) == 1:
            continue
        groups.setdefault(nb, []).append(v)
    items = sorted((min(vs), nb, vs) for nb, vs in groups.items() if len(vs) >= 2)
    return TwinDecomposition(
        T.n,
        tuple(frozenset(vs) for _, _, vs in items),
        tuple(nb for _, nb, _ in items),
    )


def tree_blue_count(dec: TwinDecomposition) -> int:
    """Closed-form blue-line count C(b,2) + a + b*s + C(s,2) of a tree system."""
    a, b, s = dec.a, dec.b, dec.s
    return comb(b, 2) + a + b * s + comb(s, 2)


def tree_red_floor(T: Tree, dec: TwinDecomposition | None = None) -> int:
    """Lower bound C(a,2) + a + 1 on red lines; only for non-path, non-star trees."""
    if T.is_path() or T.is_star():
        raise CapabilityError("red-line floor does not apply to paths or stars")
    dec = twin_decomposition(T) if dec is None else dec
    return comb(dec.a, 2) + dec.a + 1


def is_red_floor_extremal(T: Tree) -> bool:
    """S(a, b), or a path whose two ends each carry >= 2 twin leaves."""
    dec = twin_decomposition(T)
    if dec.s == 1:
        a = dec.a
        b = T.n - a
        return b >= 3 and tree_code(T) == tree_code(s_tree(a, b))
    if dec.s == 2:
        core_vertices = [v for v in range(T.n) if dec.class_of(v) is None]
        core = set(core_vertices)
        if any(sum(1 for w in T.adj[v] if w in core) > 2 for v in core):
            return False
        ends = [v for v in core if sum(1 for w in T.adj[v] if w in core) <= 1]
        return sorted(ends) == sorted(dec.anchors)
    return False


def tree_m_lower_bound(n: int) -> int:
    if n < 3:
        raise ValueError("bound stated for n >= 3")
    if n >= 6:
        return n * n // 4 + n + 1
    return comb(n, 2) + 1


def extremal_twin_counts(n: int) -> tuple[int, ...]:
    if n % 2:
        return ((n - 1) // 2,)
    return (n // 2 - 1, n // 2)


def is_extremal_tree(T: Tree) -> bool:
    n = T.n
    if n < 3:
        raise ValueError("extremal characterisation stated for n >= 3")
    if n <= 6 and T.is_path():
        return True
    if n >= 6:
        code = tree_code(T)
        return any(n - a >= 3 and code == tree_code(s_tree(a, n - a)) for a in extremal_twin_counts(n))
    return False


# ---------------------------------------------------------------------------
# canonical encoding and enumeration
# ---------------------------------------------------------------------------

def _centres(adj, n: int) -> list[int]:
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def centres(T: Tree) -> list[int]:
    return _centres(T.adj, T.n)


def _rooted_code(adj, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    codes: dict[int, str] = {}
    for v in reversed(order):
        kids = sorted(codes[w] for w in adj[v] if w != parent[v])
        codes[v] = "(" + "".join(kids) + ")"
    return codes[root]


def _code(adj, n: int) -> str:
    return min(_rooted_code(adj, c) for c in _centres(adj, n))


def tree_code(T: Tree) -> str:
    """Isomorphism invariant: least AHU string over the tree's centres."""
    return _code(T.adj, T.n)


def _prufer_edges(seq: Sequence[int]) -> list[tuple[int, int]]:
    n = len(seq) + 2
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for x in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(heap, x)
    edges.append((heapq.heappop(heap), heapq.heappop(heap)))
    return edges


def prufer_decode(seq: Sequence[int]) -> Tree:
    return Tree(len(seq) + 2, tuple(_prufer_edges(seq)))


@lru_cache(maxsize=None)
def tree_census(n: int) -> tuple[Tree, ...]:
    """One labelled tree per isomorphism class, from all Prufer sequences."""
    if not 2 <= n <= 8:
        raise CapabilityError("exhaustive tree enumeration supports 2 <= n <= 8")
    if n == 2:
        return (Tree(2, ((0, 1),)),)
    reps: dict[str, Tree] = {}
    for seq in itertools.product(range(n), repeat=n - 2):
        edges = _prufer_edges(seq)
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        code = _code(adj, n)
        if code not in reps:
            reps[code] = Tree(n, tuple(edges))
    return tuple(reps[k] for k in sorted(reps))


def random_tree(n: int, rng: random.Random) -> Tree:
    if n == 1:
        return Tree(1, ())
    if n == 2:
        return Tree(2, ((0, 1),))
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)])


def enumerate_trees(n: int, mode: str = "exhaustive", count: int = 100, seed: int = 0) -> Iterator[Tree]:
    """Exhaustive: one tree per isomorphism class (n <= 8).
    Sampled: ``count`` uniform random labelled trees."""
    if mode == "exhaustive":
        yield from tree_census(n)
    elif mode == "sampled":
        if not 2 <= n <= MAX_POINTS:
            raise CapabilityError(f"sampled mode supports 2 <= n <= {MAX_POINTS}")
        rng = random.Random(seed)
        for _ in range(count):
            yield random_tree(n, rng)
    else:
        raise ValueError(f"unknown mode {mode!r}")


def random_weighting(T: Tree, rng: random.Random, max_weight: int = 20) -> WeightedGraph:
    return T.weighted([rng.randint(1, max_weight) for _ in T.edges])
