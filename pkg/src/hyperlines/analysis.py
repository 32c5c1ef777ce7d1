"""Bound calculators and executable checks of the line-count results.

Every ``check_*`` function returns a :class:`CheckReport`; a failed check is a
report with ``passed=False`` and a witness, never an exception.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from math import comb, isqrt
from typing import Any

import numpy as np

from .core import (
    BLUE,
    RED,
    CapabilityError,
    Colour,
    Colouring,
    batch_line_counts,
    full_mask,
    generating_pairs,
    line_size_distribution,
    max_red_intersection,
    num_triples,
    pair_line_masks,
    pair_list,
    summarize,
)
from .generators import compose
from .treespace import (
    Tree,
    is_extremal_tree,
    is_red_floor_extremal,
    tree_blue_count,
    tree_m_lower_bound,
    tree_red_floor,
    tree_system,
    twin_decomposition,
)


@dataclass
class CheckReport:
    name: str
    passed: bool
    measured: Any = None
    bound: Any = None
    details: dict = field(default_factory=dict)
    witness: Colouring | None = None

    def line(self) -> str:
        return f"CHECK {self.name} {'pass' if self.passed else 'fail'} {self.measured} {self.bound}"


def _mask(points) -> int:
    out = 0
    for p in points:
        out |= 1 << p
    return out


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def sum_lower_bound(n: int) -> int:
    """ceil(2 * sqrt(C(n,2))), computed exactly."""
    if n < 2:
        raise ValueError("n >= 2 required")
    N = comb(n, 2)
    return isqrt(4 * N - 1) + 1


def product_lower_bound(n: int) -> int:
    if n < 2:
        raise ValueError("n >= 2 required")
    return comb(n, 2)


def small_intersection_bound(n: int, k: int) -> int:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    return -(-comb(n, 2) // comb(k + 2, 2))


def upper_bound_nlogn(n: int) -> int:
    """n * ceil(log2 n)."""
    return n * (n - 1).bit_length()


# ---------------------------------------------------------------------------
# general systems
# ---------------------------------------------------------------------------

def is_uniform(S: Colouring) -> bool:
    return S.bits == 0 or S.bits == (1 << S.num_triples) - 1


def check_easy_bound(S: Colouring) -> CheckReport:
    L = summarize(S)
    n = S.n
    sum_ok = L.m >= sum_lower_bound(n)
    prod_ok = L.m_star >= product_lower_bound(n)
    equality = L.m_star == product_lower_bound(n)
    uniform = is_uniform(S)
    passed = sum_ok and prod_ok and equality == uniform
    return CheckReport(
        "easy_bound",
        passed,
        measured=f"m={L.m},m*={L.m_star}",
        bound=f"m>={sum_lower_bound(n)},m*>={product_lower_bound(n)}",
        details={"equality": equality, "uniform": uniform, "m": L.m, "m_star": L.m_star},
        witness=None if passed else S,
    )


def easy_bound_census(n: int) -> CheckReport:
    """Scan every colouring on n <= 6 points."""
    if num_triples(n) > 20:
        raise CapabilityError("exhaustive census limited to n <= 6")
    codes = np.arange(1 << num_triples(n), dtype=np.uint64)
    mr, mb = batch_line_counts(n, codes)
    m, ms = mr + mb, mr * mb
    bad_sum = np.flatnonzero(m < sum_lower_bound(n))
    bad_prod = np.flatnonzero(ms < product_lower_bound(n))
    eq = np.flatnonzero(ms == product_lower_bound(n))
    uniform_codes = {0, (1 << num_triples(n)) - 1}
    eq_set = {int(c) for c in eq}
    passed = bad_sum.size == 0 and bad_prod.size == 0 and eq_set == uniform_codes
    witness = None
    if not passed:
        stray = sorted(set(bad_sum.tolist()) | set(bad_prod.tolist()) | (eq_set ^ uniform_codes))
        witness = Colouring(n, int(stray[0]))
    return CheckReport(
        f"easy_census_n{n}",
        passed,
        measured=f"min_m={int(m.min())},min_m*={int(ms.min())},equality={len(eq_set)}",
        bound=f"m>={sum_lower_bound(n)},m*>={product_lower_bound(n)},equality=2",
        details={"scanned": int(codes.size), "equality_codes": sorted(eq_set)},
        witness=witness,
    )


def check_lemma_simple(S: Colouring) -> CheckReport:
    """Pairs generating one line of a colour give distinct lines of the other
    colour, each meeting the pairs' union X exactly in its own pair."""
    gp = generating_pairs(S)
    red, blue = pair_line_masks(S)
    by_pair = {c: dict(zip(pair_list(S.n), masks)) for c, masks in ((RED, red), (BLUE, blue))}
    violations = []
    checked = 0
    for c in (RED, BLUE):
        other = by_pair[c.other]
        for L, pairs in gp.of(c).items():
            X = _mask(p for pair in pairs for p in pair)
            lines = [other[pair] for pair in pairs]
            if len(set(lines)) != len(lines):
                violations.append((c.value, L.points(), "repeated"))
            for pair, om in zip(pairs, lines):
                checked += 1
                if om & X != _mask(pair):
                    violations.append((c.value, L.points(), pair))
    return CheckReport(
        "lemma_simple",
        not violations,
        measured=len(violations),
        bound=0,
        details={"pairs_checked": checked, "violations": violations[:5]},
        witness=S if violations else None,
    )


def check_small_intersection(S: Colouring) -> CheckReport:
    k = max_red_intersection(S)
    n = S.n
    L = summarize(S)
    bound = small_intersection_bound(n, k)
    red, blue = pair_line_masks(S)
    cap = k + 2
    entries = []
    for rm, bm in zip(red, blue):
        if rm.bit_count() <= cap:
            entries.append((RED, rm))
        else:
            entries.append((BLUE, bm))
    counts = Counter(entries)
    red_rep = max((v for (c, _), v in counts.items() if c is RED), default=0)
    blue_rep = max((v for (c, _), v in counts.items() if c is BLUE), default=0)
    facts_ok = len(entries) == comb(n, 2) and red_rep <= comb(cap, 2) and blue_rep <= 1
    passed = L.m >= bound and facts_ok
    return CheckReport(
        "small_intersection",
        passed,
        measured=L.m,
        bound=bound,
        details={
            "k": k,
            "entries": len(entries),
            "max_red_repeat": red_rep,
            "red_repeat_cap": comb(cap, 2),
            "max_blue_repeat": blue_rep,
        },
        witness=None if passed else S,
    )


def check_pair_count(S: Colouring, c: Colour = RED) -> CheckReport:
    """Partition identity sum_L gp(L) = C(n,2) (always), plus whether every
    line is generated by all of its own pairs, which gives
    sum_t C(t,2) m_t = C(n,2)."""
    gp = generating_pairs(S).of(c)
    n = S.n
    total = sum(len(v) for v in gp.values())
    partition = total == comb(n, 2)
    strengthened = all(len(v) == comb(len(L), 2) for L, v in gp.items())
    dist = line_size_distribution(S, c)
    weighted = sum(comb(t, 2) * m_t for t, m_t in dist.items())
    return CheckReport(
        f"pair_count_{c.value}",
        partition,
        measured=weighted if strengthened else total,
        bound=comb(n, 2),
        details={"partition": partition, "strengthened": strengthened, "distribution": dist, "generators": total},
        witness=None if partition else S,
    )


def composition_families(S1: Colouring, S2: Colouring) -> dict[str, tuple[Colour, set[int]]]:
    """The six line families expected in compose(S1, S2), as masks."""
    n1, n2 = S1.n, S2.n
    V1 = full_mask(n1)
    V2 = full_mask(n2) << n1
    L1, L2 = summarize(S1), summarize(S2)
    return {
        "red V1+v": (RED, {V1 | 1 << v for v in range(n1, n1 + n2)}),
        "blue v+V2": (BLUE, {1 << v | V2 for v in range(n1)}),
        "red L1+V2": (RED, {L.mask | V2 for L in L1.red_lines}),
        "blue L1": (BLUE, {L.mask for L in L1.blue_lines}),
        "red L2": (RED, {L.mask << n1 for L in L2.red_lines}),
        "blue V1+L2": (BLUE, {V1 | L.mask << n1 for L in L2.blue_lines}),
    }


def check_composition(S1: Colouring, S2: Colouring) -> CheckReport:
    S = compose(S1, S2)
    L, L1, L2 = summarize(S), summarize(S1), summarize(S2)
    budget = L1.m + L2.m + S.n
    red = {x.mask for x in L.red_lines}
    blue = {x.mask for x in L.blue_lines}
    missing = []
    for name, (c, masks) in composition_families(S1, S2).items():
        have = red if c is RED else blue
        if not masks <= have:
            missing.append(name)
    passed = L.m <= budget and not missing
    return CheckReport(
        "composition",
        passed,
        measured=L.m,
        bound=budget,
        details={"missing_families": missing, "coincidences": budget - L.m, "m_red": L.m_red, "m_blue": L.m_blue},
        witness=None if passed else S,
    )


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------

def check_tree(T: Tree) -> CheckReport:
    """Blue-line formula, red-line floor and the m lower bound for one tree."""
    n = T.n
    L = summarize(tree_system(T))
    dec = twin_decomposition(T)
    problems = []
    blue_formula = tree_blue_count(dec)
    if L.m_blue != blue_formula:
        problems.append(f"m_blue={L.m_blue} formula={blue_formula}")
    if not (T.is_path() or T.is_star()):
        floor = tree_red_floor(T, dec)
        if L.m_red < floor:
            problems.append(f"m_red={L.m_red} below floor {floor}")
        if (L.m_red == floor) != is_red_floor_extremal(T):
            problems.append(f"red floor equality mismatch m_red={L.m_red} floor={floor}")
    bound = tree_m_lower_bound(n) if n >= 3 else None
    if bound is not None:
        if L.m < bound:
            problems.append(f"m={L.m} below {bound}")
        if (L.m == bound) != is_extremal_tree(T):
            problems.append(f"extremal mismatch m={L.m} bound={bound}")
    return CheckReport(
        "tree",
        not problems,
        measured=L.m,
        bound=bound,
        details={"edges": T.edges, "a": dec.a, "b": dec.b, "s": dec.s, "m_blue": L.m_blue,
                 "m_red": L.m_red, "problems": problems},
        witness=None if not problems else tree_system(T),
    )


def _twins(T: Tree, x: int, y: int) -> bool:
    return x != y and y not in T.adj[x] and T.adj[x] == T.adj[y]


def check_tree_lemmas(T: Tree) -> CheckReport:
    """Path containment and twin-class intersection patterns of tree lines,
    and the twin structure forced by coinciding blue lines."""
    S = tree_system(T)
    n = T.n
    red, blue = pair_line_masks(S)
    dec = twin_decomposition(T)
    classes = [_mask(c) for c in dec.classes]
    problems = []
    anchor_exceptions = 0
    for (x, y), rm, bm in zip(pair_list(n), red, blue):
        P = _mask(T.path_between(x, y))
        if P & ~rm or bm & P != (1 << x | 1 << y):
            problems.append(("path", x, y))
        for A in classes:
            hx, hy = A >> x & 1, A >> y & 1
            if hx ^ hy:
                v, other = (x, y) if hx else (y, x)
                if rm & A != 1 << v or A & ~bm:
                    # adjacent pair: R = V, B = {x, y}; the class pattern cannot hold
                    if other in T.adj[v]:
                        anchor_exceptions += 1
                    else:
                        problems.append(("twin-class", x, y))
            elif not hx:
                if rm & A not in (0, A) or bm & A not in (0, A):
                    problems.append(("outside-class", x, y))
    by_blue: dict[int, list[tuple[int, int]]] = {}
    for pair, bm in zip(pair_list(n), blue):
        by_blue.setdefault(bm, []).append(pair)
    for pairs in by_blue.values():
        for (x, y), (z, w) in itertools.combinations(pairs, 2):
            shared = {x, y} & {z, w}
            if not shared:
                ok = (_twins(T, x, z) and _twins(T, y, w)) or (_twins(T, x, w) and _twins(T, y, z))
            else:
                (c,) = shared
                (p,) = {x, y} - shared
                (q,) = {z, w} - shared
                ok = _twins(T, p, q)
            if not ok:
                problems.append(("blue-coincidence", (x, y), (z, w)))
    return CheckReport(
        "tree_lemmas",
        not problems,
        measured=len(problems),
        bound=0,
        details={"edges": T.edges, "problems": problems[:5], "anchor_exceptions": anchor_exceptions},
        witness=S if problems else None,
    )
