"""Constructors for the system families: uniform, Steiner, projective,
planar, balanced binary tree and two-part composition."""

from __future__ import annotations

import itertools
from typing import Sequence

from .core import (
    BLUE,
    MAX_POINTS,
    RED,
    CapabilityError,
    Colour,
    Colouring,
    iter_triples,
    num_triples,
    sorted_rank,
)

FANO_TRIPLES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def _check_n(n: int) -> None:
    if not 2 <= n <= MAX_POINTS:
        raise ValueError(f"n must be in 2..{MAX_POINTS}, got {n}")


def uniform(n: int, c: Colour = RED) -> Colouring:
    _check_n(n)
    return Colouring(n, (1 << num_triples(n)) - 1 if c is RED else 0)


def empty(n: int) -> Colouring:
    return uniform(n, BLUE)


def complete(n: int) -> Colouring:
    return uniform(n, RED)


def fano() -> Colouring:
    return Colouring.from_red_triples(7, FANO_TRIPLES)


def bose_triples(n: int) -> list[tuple[int, int, int]]:
    """Bose STS(n) for n = 3m, m odd; point (x, i) is numbered 3x + i."""
    m = n // 3
    half = (m + 1) // 2  # inverse of 2 mod m

    def pt(x, i):
        return 3 * (x % m) + i % 3

    blocks = [(pt(x, 0), pt(x, 1), pt(x, 2)) for x in range(m)]
    for x, y in itertools.combinations(range(m), 2):
        z = (x + y) * half % m
        for i in range(3):
            blocks.append((pt(x, i), pt(y, i), pt(z, i + 1)))
    return [tuple(sorted(b)) for b in blocks]


def steiner(n: int) -> Colouring:
    """Steiner triple system: Fano for n = 7, Bose for n = 3 (mod 6)."""
    if n == 7:
        return fano()
    if n % 6 != 3 or not 3 <= n <= 63:
        raise CapabilityError(f"steiner({n}) unsupported: need n = 7 or n = 3 mod 6, n <= 63")
    return Colouring.from_red_triples(n, bose_triples(n))


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, int(q ** 0.5) + 1))


def projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalised points of PG(2, q): first non-zero coordinate equals 1, sorted."""
    pts = []
    for v in itertools.product(range(q), repeat=3):
        nz = [c for c in v if c]
        if nz and nz[0] == 1:
            pts.append(v)
    return sorted(pts)


def projective_plane(q: int) -> Colouring:
    """Triples of PG(2, q) points are red iff collinear."""
    if not _is_prime(q):
        raise CapabilityError(f"order {q} is not prime")
    n = q * q + q + 1
    if n > MAX_POINTS:
        raise CapabilityError(f"PG(2,{q}) has {n} points, more than {MAX_POINTS}")
    pts = projective_points(q)

    def collinear(i, j, k):
        (a, b, c), (d, e, f), (g, h, l) = pts[i], pts[j], pts[k]
        det = a * (e * l - f * h) - b * (d * l - f * g) + c * (d * h - e * g)
        return det % q == 0

    return Colouring.from_predicate(n, collinear)


def planar(points: Sequence[tuple[int, int]]) -> Colouring:
    """Triples of integer points are red iff collinear (exact cross product)."""
    pts = [(int(x), int(y)) for x, y in points]
    if len(set(pts)) != len(pts):
        raise ValueError("planar points must be pairwise distinct")
    if len(pts) > MAX_POINTS:
        raise ValueError(f"at most {MAX_POINTS} points")
    if any(abs(c) > 2 ** 30 for p in pts for c in p):
        raise ValueError("coordinates must lie within +-2^30")

    def collinear(i, j, k):
        (x1, y1), (x2, y2), (x3, y3) = pts[i], pts[j], pts[k]
        return (x2 - x1) * (y3 - y1) - (y2 - y1) * (x3 - x1) == 0

    return Colouring.from_predicate(len(pts), collinear)


def grid(width: int, height: int | None = None) -> list[tuple[int, int]]:
    height = width if height is None else height
    return [(x, y) for y in range(height) for x in range(width)]


def btree_colouring(n: int) -> Colouring:
    """Leaves of a balanced binary tree; a node over k leaves puts ceil(k/2)
    on the left.  A triple is red iff two of its leaves lie in the left
    subtree of their lowest common ancestor."""
    _check_n(n)

    def red(i, j, k):
        lo, hi = 0, n
        while True:
            mid = lo + (hi - lo + 1) // 2
            if k < mid:
                hi = mid
            elif i >= mid:
                lo = mid
            else:
                return j < mid

    return Colouring.from_predicate(n, red)


def compose(S1: Colouring, S2: Colouring) -> Colouring:
    """Disjoint union with S2 relabelled to n1..n1+n2-1; a crossing triple is
    red iff exactly two of its points come from the first part."""
    n1, n2 = S1.n, S2.n
    n = n1 + n2
    if n > MAX_POINTS:
        raise ValueError(f"composed system would have {n} > {MAX_POINTS} points")
    bits = 0
    for r, (i, j, k) in enumerate(iter_triples(n)):
        inside = (i < n1) + (j < n1) + (k < n1)
        if inside == 3:
            red = S1.bits >> r & 1  # colex ranks of V1 triples coincide with S1's
        elif inside == 0:
            red = S2.bits >> sorted_rank(i - n1, j - n1, k - n1) & 1
        else:
            red = inside == 2
        if red:
            bits |= 1 << r
    return Colouring(n, bits)
