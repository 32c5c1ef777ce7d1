"""Minimising m = m(R) + m(B) over all colourings of n points.

Three modes:

* ``exhaustive_min`` scans every colouring (n <= 6), optionally one
  representative per orbit of relabelling x colour swap;
* ``anneal_min`` is single-triple-flip simulated annealing with O(1)
  incremental line bookkeeping;
* ``bnb_min`` extends orbit representatives on n-1 points by every possible
  colouring of the triples through the last point, pruning prefixes whose own
  line count already reaches the incumbent (restricting a system to a subset
  never increases either line count).
"""

from __future__ import annotations

import logging
import math
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import (
    CapabilityError,
    Colouring,
    batch_line_counts,
    full_mask,
    iter_triples,
    line_counts,
    num_triples,
    pair_list,
    red_masks,
    sorted_rank,
)

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 6
CHUNK = 1 << 17


@dataclass
class SearchReport:
    n: int
    best_m: int
    witness: Colouring
    exhaustive: bool
    nodes_visited: int
    mode: str
    seed: int | None = None

    def line(self) -> str:
        return f"MIN n={self.n} m={self.best_m} exhaustive={str(self.exhaustive).lower()}"


# ---------------------------------------------------------------------------
# orbits
# ---------------------------------------------------------------------------

def _image_codes(n: int, codes: np.ndarray, sigma) -> np.ndarray:
    """Codes of the colourings relabelled by ``sigma``."""
    out = np.zeros_like(codes)
    one = np.uint64(1)
    for r, (i, j, k) in enumerate(iter_triples(n)):
        dest = np.uint64(sorted_rank(sigma[i], sigma[j], sigma[k]))
        out |= ((codes >> np.uint64(r)) & one) << dest
    return out


@lru_cache(maxsize=None)
def orbit_table(n: int) -> np.ndarray:
    """For every code on n <= 6 points, the least code in its orbit under
    relabelling and colour complementation."""
    if n > EXHAUSTIVE_MAX_N:
        raise CapabilityError(f"orbit table limited to n <= {EXHAUSTIVE_MAX_N}")
    size = 1 << num_triples(n)
    codes = np.arange(size, dtype=np.uint64)
    if n < 3:
        return codes
    full = np.uint64(size - 1)
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    cycle = [(i + 1) % n for i in range(n)]
    targets = [_image_codes(n, codes, swap), _image_codes(n, codes, cycle), codes ^ full]
    src = np.concatenate([codes] * len(targets)).astype(np.int64)
    dst = np.concatenate(targets).astype(np.int64)
    graph = coo_matrix((np.ones(src.size, dtype=np.int8), (src, dst)), shape=(size, size))
    ncomp, labels = connected_components(graph, directed=True, connection="weak")
    least = np.full(ncomp, np.iinfo(np.int64).max, dtype=np.int64)
    np.minimum.at(least, labels, codes.astype(np.int64))
    table = least[labels].astype(np.uint64)
    table.setflags(write=False)
    return table


def orbit_representatives(n: int) -> np.ndarray:
    table = orbit_table(n)
    return np.flatnonzero(table == np.arange(table.size, dtype=np.uint64)).astype(np.uint64)


# ---------------------------------------------------------------------------
# exhaustive
# ---------------------------------------------------------------------------

def _min_over(n: int, codes: np.ndarray) -> tuple[int, int]:
    best_m, best_code = None, None
    for start in range(0, codes.size, CHUNK):
        chunk = codes[start:start + CHUNK]
        mr, mb = batch_line_counts(n, chunk)
        m = mr + mb
        idx = int(np.argmin(m))
        if best_m is None or int(m[idx]) < best_m:
            best_m, best_code = int(m[idx]), int(chunk[idx])
    return best_m, best_code


def exhaustive_min(n: int, symmetry: bool = True) -> SearchReport:
    if not 2 <= n <= EXHAUSTIVE_MAX_N:
        raise CapabilityError(f"exhaustive search supports 2 <= n <= {EXHAUSTIVE_MAX_N}; use anneal or bnb")
    if symmetry:
        codes = orbit_representatives(n)
    else:
        codes = np.arange(1 << num_triples(n), dtype=np.uint64)
    best_m, code = _min_over(n, codes)
    return SearchReport(n, best_m, Colouring(n, code), True, int(codes.size), "exhaustive")


# ---------------------------------------------------------------------------
# annealing
# ---------------------------------------------------------------------------

class _LineState:
    """Red-line masks per pair with multiset counts for O(1) flips."""

    def __init__(self, S: Colouring):
        self.n = S.n
        self.full = full_mask(S.n)
        self.index = {pair: i for i, pair in enumerate(pair_list(S.n))}
        self.red = [int(x) for x in red_masks(S).tolist()]
        self.pairbits = [(1 << u) | (1 << v) for u, v in pair_list(S.n)]
        self.red_count = Counter(self.red)
        self.blue_count = Counter(self._blue(i) for i in range(len(self.red)))
        self.bits = S.bits

    def _blue(self, i: int) -> int:
        return (self.full & ~self.red[i]) | self.pairbits[i]

    @property
    def m(self) -> int:
        return len(self.red_count) + len(self.blue_count)

    def _replace(self, i: int, new_red: int) -> None:
        old_red, old_blue = self.red[i], self._blue(i)
        for counter, key in ((self.red_count, old_red), (self.blue_count, old_blue)):
            counter[key] -= 1
            if not counter[key]:
                del counter[key]
        self.red[i] = new_red
        self.red_count[new_red] += 1
        self.blue_count[self._blue(i)] += 1

    def flip(self, r: int, triple: tuple[int, int, int]) -> None:
        i, j, k = triple
        self.bits ^= 1 << r
        for (a, b), c in (((i, j), k), ((i, k), j), ((j, k), i)):
            idx = self.index[(a, b)]
            self._replace(idx, self.red[idx] ^ (1 << c))


def anneal_min(
    n: int,
    seed: int = 0,
    steps: int = 200_000,
    cooling: float | None = None,
    t_start: float = 2.0,
    t_end: float = 0.05,
    initial: Colouring | None = None,
) -> SearchReport:
    """Simulated annealing on single-triple flips with geometric cooling.

    ``cooling`` defaults to the rate taking ``t_start`` to ``t_end`` in ``steps``.
    """
    if not 3 <= n <= 64:
        raise CapabilityError("annealing supports 3 <= n <= 64")
    rng = random.Random(seed)
    T = num_triples(n)
    if initial is None:
        initial = Colouring(n, rng.getrandbits(T))
    elif initial.n != n:
        raise ValueError("initial colouring has the wrong size")
    if cooling is None:
        cooling = (t_end / t_start) ** (1.0 / max(steps, 1))
    triples = list(iter_triples(n))
    state = _LineState(initial)
    current = state.m
    best_m, best_bits = current, state.bits
    temp = t_start
    for _ in range(steps):
        r = rng.randrange(T)
        state.flip(r, triples[r])
        cand = state.m
        delta = cand - current
        if delta <= 0 or rng.random() < math.exp(-delta / temp):
            current = cand
            if current < best_m:
                best_m, best_bits = current, state.bits
        else:
            state.flip(r, triples[r])
        temp *= cooling
    return SearchReport(n, best_m, Colouring(n, best_bits), False, steps, "anneal", seed)


def _anneal_job(args):
    return anneal_min(*args)


def anneal_best_of(n: int, seeds, steps: int = 200_000, threads: int = 1, **kw) -> SearchReport:
    """Independent annealing runs; the lowest m wins, ties go to the earlier seed."""
    seeds = list(seeds)
    jobs = [(n, s, steps, kw.get("cooling"), kw.get("t_start", 2.0), kw.get("t_end", 0.05), kw.get("initial"))
            for s in seeds]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(_anneal_job, jobs))
    else:
        reports = [_anneal_job(j) for j in jobs]
    best = min(reports, key=lambda rep: rep.best_m)
    best.nodes_visited = sum(rep.nodes_visited for rep in reports)
    return best


# ---------------------------------------------------------------------------
# branch and bound
# ---------------------------------------------------------------------------

def bnb_min(
    n: int,
    budget: int | None = None,
    initial_upper: int | None = None,
    initial_witness: Colouring | None = None,
) -> SearchReport:
    """Exact minimum by extending (n-1)-point orbit representatives.

    A prefix is pruned when its own m already meets the incumbent (or exceeds
    ``initial_upper`` while no witness is known).  ``budget`` caps the number
    of evaluated colourings; running out returns the best found with
    ``exhaustive=False``.
    """
    if not 2 <= n <= EXHAUSTIVE_MAX_N + 1:
        raise CapabilityError(f"branch and bound supports 2 <= n <= {EXHAUSTIVE_MAX_N + 1}")
    from .analysis import sum_lower_bound

    if n == 2:
        return SearchReport(2, 2, Colouring(2, 0), True, 1, "bnb")
    incumbent = initial_upper if initial_upper is not None else math.inf
    witness = initial_witness
    if witness is not None:
        wm = sum(line_counts(witness))
        incumbent = min(incumbent, wm) if initial_upper is not None else wm
        if wm > incumbent:
            witness = None
    floor = sum_lower_bound(n)

    k = n - 1
    reps = orbit_representatives(k)
    mr, mb = batch_line_counts(k, reps)
    prefix_m = (mr + mb).astype(np.int64)
    order = np.argsort(prefix_m, kind="stable")
    shift = np.uint64(num_triples(k))
    ext = np.arange(1 << comb(k, 2), dtype=np.uint64) << shift

    nodes = 0
    exhaustive = True
    for idx in order:
        bound = max(int(prefix_m[idx]), floor)
        if bound > incumbent or (witness is not None and bound >= incumbent):
            break  # prefixes are sorted, everything after is pruned too
        if budget is not None and nodes + 1 + ext.size > budget:
            exhaustive = False
            break
        nodes += 1 + ext.size
        codes = ext | reps[idx]
        m = np.add(*batch_line_counts(n, codes))
        j = int(np.argmin(m))
        if int(m[j]) < incumbent or witness is None and int(m[j]) <= incumbent:
            incumbent, witness = int(m[j]), Colouring(n, int(codes[j]))
            log.info("bnb n=%d incumbent %d after %d nodes", n, incumbent, nodes)
    if witness is None:
        raise CapabilityError(f"no colouring with m <= {initial_upper} found")
    return SearchReport(n, int(incumbent), witness, exhaustive, nodes, "bnb")


def best_known(n: int) -> SearchReport:
    """Exact value for n <= 6; otherwise the n=7 default run used by the table."""
    if n <= EXHAUSTIVE_MAX_N:
        return exhaustive_min(n)
    raise CapabilityError("no cached search for n > 6")
