"""Named verification suites driven by the ``verify`` subcommand.

Each suite returns a list of :class:`CheckReport`; sweeps over many systems
are folded into one report that carries the first failing witness.
"""

from __future__ import annotations

import random

from . import generators as gen
from .analysis import (
    CheckReport,
    check_composition,
    check_easy_bound,
    check_lemma_simple,
    check_pair_count,
    check_small_intersection,
    check_tree,
    check_tree_lemmas,
    easy_bound_census,
)
from .core import BLUE, RED, Colouring, line_counts, num_triples
from .treespace import (
    all_pairs_shortest,
    derive,
    random_tree,
    random_weighting,
    tree_census,
)

SUITES = ("easy", "simple", "smallinter", "paircount", "compose", "trees")


def named_systems() -> dict[str, Colouring]:
    return {
        "steiner9": gen.steiner(9),
        "steiner15": gen.steiner(15),
        "pg2": gen.projective_plane(2),
        "pg3": gen.projective_plane(3),
        "grid3": gen.planar(gen.grid(3)),
        "grid4": gen.planar(gen.grid(4)),
    }


def _fold(name: str, reports, bound=0) -> CheckReport:
    reports = list(reports)
    failed = [r for r in reports if not r.passed]
    return CheckReport(
        name,
        not failed,
        measured=len(failed),
        bound=bound,
        details={"checked": len(reports), "first_failure": failed[0].details if failed else None},
        witness=failed[0].witness if failed else None,
    )


def _tag(report: CheckReport, name: str) -> CheckReport:
    report.name = name
    return report


def suite_easy(exhaustive_n: int = 5, inputs=()) -> list[CheckReport]:
    out = [easy_bound_census(n) for n in range(2, exhaustive_n + 1)]
    systems = dict(named_systems())
    for n in range(4, 11):
        systems[f"uniformR{n}"] = gen.uniform(n, RED)
        systems[f"uniformB{n}"] = gen.uniform(n, BLUE)
    systems.update(inputs)
    out += [_tag(check_easy_bound(S), f"easy_bound[{name}]") for name, S in systems.items()]
    return out


def suite_simple(exhaustive_n: int = 5, samples: int = 200, seed: int = 1, inputs=()) -> list[CheckReport]:
    out = []
    for n in range(2, exhaustive_n + 1):
        out.append(_fold(f"lemma_simple_all_n{n}",
                         (check_lemma_simple(Colouring(n, c)) for c in range(1 << num_triples(n)))))
    rng = random.Random(seed)
    for n in (6, 7, 8):
        out.append(_fold(f"lemma_simple_random_n{n}",
                         (check_lemma_simple(Colouring(n, rng.getrandbits(num_triples(n)))) for _ in range(samples))))
    out += [_tag(check_lemma_simple(S), f"lemma_simple[{name}]") for name, S in dict(inputs).items()]
    return out


def suite_smallinter(inputs=()) -> list[CheckReport]:
    systems = dict(named_systems())
    systems.update(inputs)
    out = []
    for name, S in systems.items():
        if line_counts(S)[0] < 2:
            continue
        out.append(_tag(check_small_intersection(S), f"small_intersection[{name}]"))
    return out


def suite_paircount(inputs=()) -> list[CheckReport]:
    out = []
    for name, S in named_systems().items():
        for c in (RED, BLUE):
            rep = _tag(check_pair_count(S, c), f"pair_count_{c.value}[{name}]")
            # planar and projective red lines are generated by every pair they contain
            if c is RED and name.startswith(("grid", "pg")) and not rep.details["strengthened"]:
                rep.passed = False
            out.append(rep)
    for name, S in dict(inputs).items():
        for c in (RED, BLUE):
            out.append(_tag(check_pair_count(S, c), f"pair_count_{c.value}[{name}]"))
    return out


def random_composition_pairs(count: int = 100, max_total: int = 12, seed: int = 7):
    rng = random.Random(seed)
    for _ in range(count):
        n1 = rng.randint(2, max_total - 2)
        n2 = rng.randint(2, max_total - n1)
        yield (Colouring(n1, rng.getrandbits(num_triples(n1))),
               Colouring(n2, rng.getrandbits(num_triples(n2))))


def suite_compose(count: int = 100, seed: int = 7) -> list[CheckReport]:
    base = check_composition(gen.empty(3), gen.empty(3))
    base.name = "composition[empty3+empty3]"
    base.passed = base.passed and base.measured == 14
    return [base, _fold("composition_random",
                        (check_composition(a, b) for a, b in random_composition_pairs(count, 12, seed)))]


def weight_invariance(count: int = 100, seed: int = 3, max_n: int = 16) -> CheckReport:
    rng = random.Random(seed)
    failures = []
    for _ in range(count):
        T = random_tree(rng.randint(3, max_n), rng)
        unit = derive(all_pairs_shortest(T.unit_graph()))
        weighted = derive(all_pairs_shortest(random_weighting(T, rng)))
        if unit != weighted:
            failures.append(T)
    return CheckReport(
        "tree_weight_invariance",
        not failures,
        measured=len(failures),
        bound=0,
        details={"checked": count},
        witness=None,
    )


def suite_trees(max_n: int = 8, samples: int = 200, sample_max_n: int = 16, seed: int = 5) -> list[CheckReport]:
    out = []
    for n in range(3, max_n + 1):
        trees = tree_census(n)
        rep = _fold(f"trees_census_n{n}", (check_tree(T) for T in trees))
        rep.details["classes"] = len(trees)
        out.append(rep)
        out.append(_fold(f"tree_lemmas_n{n}", (check_tree_lemmas(T) for T in trees)))
    if samples:
        rng = random.Random(seed)
        sampled = [random_tree(rng.randint(9, sample_max_n), rng) for _ in range(samples)]
        out.append(_fold("trees_sampled", (check_tree(T) for T in sampled)))
        out.append(weight_invariance(100, seed))
    return out


def run_suite(name: str, *, exhaustive_n: int = 5, max_n: int = 8, samples: int = 200,
              seed: int = 1, inputs=()) -> list[CheckReport]:
    inputs = dict(inputs)
    if name == "all":
        out = []
        for s in SUITES:
            out += run_suite(s, exhaustive_n=exhaustive_n, max_n=max_n, samples=samples, seed=seed, inputs=inputs)
        return out
    if name == "easy":
        return suite_easy(exhaustive_n, inputs.items())
    if name == "simple":
        return suite_simple(exhaustive_n, samples, seed, inputs.items())
    if name == "smallinter":
        return suite_smallinter(inputs.items())
    if name == "paircount":
        return suite_paircount(inputs.items())
    if name == "compose":
        return suite_compose()
    if name == "trees":
        return suite_trees(max_n, samples)
    raise ValueError(f"unknown suite {name!r}")

