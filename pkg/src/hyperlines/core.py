"""Bi-coloured 3-uniform systems and their red/blue lines.

A system on points ``0..n-1`` assigns every triple a colour.  Triples are
indexed by colex rank ``C(i,1) + C(j,2) + C(k,3)`` for ``i < j < k`` and the
whole colouring is stored as one Python int whose bit ``r`` is set when the
triple of rank ``r`` is red.  Lines are 64-bit point masks.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

MAX_POINTS = 64
MAX_CANONICAL_POINTS = 8


class Colour(str, enum.Enum):
    RED = "R"
    BLUE = "B"

    @property
    def other(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED

    @classmethod
    def parse(cls, text: str) -> "Colour":
        key = text.strip().lower()
        if key in ("r", "red"):
            return cls.RED
        if key in ("b", "blue"):
            return cls.BLUE
        raise ValueError(f"unknown colour {text!r}")


RED = Colour.RED
BLUE = Colour.BLUE


class CapabilityError(ValueError):
    """Raised when an operation is outside the sizes or cases it supports."""


# ---------------------------------------------------------------------------
# triple indexing
# ---------------------------------------------------------------------------

def num_triples(n: int) -> int:
    return comb(n, 3)


def triple_rank(i: int, j: int, k: int, n: int | None = None) -> int:
    """Colex rank of the triple ``i < j < k``."""
    if not (0 <= i < j < k):
        raise ValueError(f"triple indices must satisfy 0 <= i < j < k, got {(i, j, k)}")
    if n is not None and k >= n:
        raise ValueError(f"triple {(i, j, k)} out of range for n={n}")
    return i + j * (j - 1) // 2 + k * (k - 1) * (k - 2) // 6


def sorted_rank(a: int, b: int, c: int) -> int:
    """Rank of an unordered triple of distinct points."""
    i, j, k = sorted((a, b, c))
    return triple_rank(i, j, k)


def triple_unrank(r: int) -> tuple[int, int, int]:
    if r < 0:
        raise ValueError("rank must be non-negative")
    k = 2
    while comb(k + 1, 3) <= r:
        k += 1
    r -= comb(k, 3)
    j = 1
    while comb(j + 1, 2) <= r:
        j += 1
    r -= comb(j, 2)
    return r, j, k


def iter_triples(n: int) -> Iterable[tuple[int, int, int]]:
    """All triples of ``range(n)`` in colex (= rank) order."""
    for k in range(2, n):
        for j in range(1, k):
            for i in range(j):
                yield i, j, k


@lru_cache(maxsize=None)
def triple_array(n: int) -> np.ndarray:
    """``(C(n,3), 3)`` array of triples in rank order."""
    arr = np.array(list(iter_triples(n)), dtype=np.int64).reshape(-1, 3)
    arr.setflags(write=False)
    return arr


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def _pair_rank_table(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per pair, the rank of ``{u, v, p}`` for every point ``p``.

    Entries with ``p in {u, v}`` point at index ``C(n,3)``, a padding slot
    that is always False.  Also returns the pair masks as uint64.
    """
    pairs = np.array(pair_list(n), dtype=np.int64).reshape(-1, 2)
    u, v = pairs[:, :1], pairs[:, 1:]
    p = np.arange(n)[None, :]
    trip = np.sort(np.stack(np.broadcast_arrays(u, v, p), axis=2), axis=2)
    i, j, k = trip[..., 0], trip[..., 1], trip[..., 2]
    table = i + j * (j - 1) // 2 + k * (k - 1) * (k - 2) // 6
    table[(p == u) | (p == v)] = num_triples(n)
    masks = (np.uint64(1) << u[:, 0].astype(np.uint64)) | (np.uint64(1) << v[:, 0].astype(np.uint64))
    table.setflags(write=False)
    masks.setflags(write=False)
    return table, masks


def full_mask(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------------------
# data model
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PointSet:
    mask: int
    n: int

    def __post_init__(self):
        if not 0 < self.n <= MAX_POINTS:
            raise ValueError(f"n must be in 1..{MAX_POINTS}, got {self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has bits outside 0..{self.n - 1}")

    @classmethod
    def of(cls, points: Iterable[int], n: int) -> "PointSet":
        mask = 0
        for p in points:
            mask |= 1 << p
        return cls(mask, n)

    def points(self) -> list[int]:
        return [p for p in range(self.n) if self.mask >> p & 1]

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, p: int) -> bool:
        return bool(self.mask >> p & 1)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask & other.mask, self.n)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask | other.mask, self.n)

    def __repr__(self) -> str:
        return f"PointSet({self.points()})"


@dataclass(frozen=True)
class Colouring:
    """Colour assignment of all triples of ``n`` points; bit r set = red."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if not 2 <= self.n <= MAX_POINTS:
            raise ValueError(f"n must be in 2..{MAX_POINTS}, got {self.n}")
        if self.bits < 0 or self.bits >> num_triples(self.n):
            raise ValueError("bit array longer than C(n,3)")

    @property
    def num_triples(self) -> int:
        return num_triples(self.n)

    def colour(self, a: int, b: int, c: int) -> Colour:
        for p in (a, b, c):
            if not 0 <= p < self.n:
                raise ValueError(f"point {p} out of range")
        return RED if self.bits >> sorted_rank(a, b, c) & 1 else BLUE

    def is_red(self, a: int, b: int, c: int) -> bool:
        return self.colour(a, b, c) is RED

    def red_triples(self) -> list[tuple[int, int, int]]:
        bits = self.bits
        return [t for r, t in enumerate(iter_triples(self.n)) if bits >> r & 1]

    def num_red(self) -> int:
        return self.bits.bit_count()

    def to_array(self) -> np.ndarray:
        """Bool array of length C(n,3), index = rank."""
        length = self.num_triples
        raw = self.bits.to_bytes((length + 7) // 8 or 1, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length].astype(bool)

    @classmethod
    def from_array(cls, n: int, arr: Sequence[bool] | np.ndarray) -> "Colouring":
        arr = np.asarray(arr, dtype=bool)
        if arr.shape != (num_triples(n),):
            raise ValueError(f"expected {num_triples(n)} bits, got shape {arr.shape}")
        if arr.size == 0:
            return cls(n, 0)
        packed = np.packbits(arr, bitorder="little").tobytes()
        return cls(n, int.from_bytes(packed, "little"))

    @classmethod
    def from_red_triples(cls, n: int, triples: Iterable[Sequence[int]]) -> "Colouring":
        bits = 0
        for t in triples:
            a, b, c = t
            if len({a, b, c}) != 3 or not all(0 <= p < n for p in (a, b, c)):
                raise ValueError(f"bad triple {tuple(t)} for n={n}")
            bits |= 1 << sorted_rank(a, b, c)
        return cls(n, bits)

    @classmethod
    def from_predicate(cls, n: int, is_red) -> "Colouring":
        flags = [bool(is_red(i, j, k)) for i, j, k in iter_triples(n)]
        return cls.from_array(n, np.array(flags, dtype=bool))


@dataclass(frozen=True)
class LineSummary:
    n: int
    red_lines: frozenset[PointSet]
    blue_lines: frozenset[PointSet]

    @property
    def m_red(self) -> int:
        return len(self.red_lines)

    @property
    def m_blue(self) -> int:
        return len(self.blue_lines)

    @property
    def m(self) -> int:
        return self.m_red + self.m_blue

    @property
    def m_star(self) -> int:
        return self.m_red * self.m_blue

    def lines(self, c: Colour) -> frozenset[PointSet]:
        return self.red_lines if c is RED else self.blue_lines

    def counts(self) -> tuple[int, int, int, int]:
        return self.m_red, self.m_blue, self.m, self.m_star


@dataclass(frozen=True)
class GeneratingPairMap:
    """Per colour: line -> the unordered pairs generating it."""

    n: int
    red: dict[PointSet, frozenset[tuple[int, int]]]
    blue: dict[PointSet, frozenset[tuple[int, int]]]

    def of(self, c: Colour) -> dict[PointSet, frozenset[tuple[int, int]]]:
        return self.red if c is RED else self.blue


# ---------------------------------------------------------------------------
# lines
# ---------------------------------------------------------------------------

def line(S: Colouring, u: int, v: int, c: Colour) -> PointSet:
    """The line of colour ``c`` generated by ``u`` and ``v``."""
    n = S.n
    if u == v or not (0 <= u < n and 0 <= v < n):
        raise ValueError(f"need two distinct points below {n}, got {u}, {v}")
    want = 1 if c is RED else 0
    mask = (1 << u) | (1 << v)
    bits = S.bits
    for p in range(n):
        if p != u and p != v and (bits >> sorted_rank(u, v, p) & 1) == want:
            mask |= 1 << p
    return PointSet(mask, n)


def red_masks(S: Colouring) -> np.ndarray:
    """uint64 red-line mask for every pair, in ``pair_list(n)`` order."""
    n = S.n
    table, pmasks = _pair_rank_table(n)
    if table.size == 0 or n == 2:
        return pmasks.copy()
    arr = np.append(S.to_array(), False)
    member = arr[table]
    padded = np.zeros((member.shape[0], 64), dtype=bool)
    padded[:, :n] = member
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view("<u8").ravel() | pmasks


def pair_line_masks(S: Colouring) -> tuple[list[int], list[int]]:
    """Red and blue line masks per pair (``pair_list`` order) as Python ints."""
    _, pmasks = _pair_rank_table(S.n)
    red = red_masks(S)
    blue = (np.uint64(full_mask(S.n)) & ~red) | pmasks
    return red.tolist(), blue.tolist()


def line_counts(S: Colouring) -> tuple[int, int]:
    """``(m_red, m_blue)`` without materialising PointSets."""
    red, blue = pair_line_masks(S)
    return len(set(red)), len(set(blue))


def summarize(S: Colouring) -> LineSummary:
    red, blue = pair_line_masks(S)
    n = S.n
    return LineSummary(
        n,
        frozenset(PointSet(m, n) for m in set(red)),
        frozenset(PointSet(m, n) for m in set(blue)),
    )


def generating_pairs(S: Colouring) -> GeneratingPairMap:
    red, blue = pair_line_masks(S)
    n = S.n
    maps: list[dict[PointSet, set]] = [{}, {}]
    for pair, rm, bm in zip(pair_list(n), red, blue):
        maps[0].setdefault(PointSet(rm, n), set()).add(pair)
        maps[1].setdefault(PointSet(bm, n), set()).add(pair)
    frozen = [{k: frozenset(v) for k, v in d.items()} for d in maps]
    return GeneratingPairMap(n, frozen[0], frozen[1])


def max_red_intersection(S: Colouring) -> int:
    """Largest intersection of two distinct red lines."""
    red, _ = pair_line_masks(S)
    lines = sorted(set(red))
    if len(lines) < 2:
        raise CapabilityError("need at least two distinct red lines")
    best = 0
    for a, b in itertools.combinations(lines, 2):
        best = max(best, (a & b).bit_count())
    return best


def line_size_distribution(S: Colouring, c: Colour) -> dict[int, int]:
    """Number of distinct lines of colour ``c`` with ``t`` points, for t = 2..n."""
    red, blue = pair_line_masks(S)
    dist = {t: 0 for t in range(2, S.n + 1)}
    for m in set(red if c is RED else blue):
        dist[m.bit_count()] += 1
    return dist


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------

def complement(S: Colouring) -> Colouring:
    return Colouring(S.n, S.bits ^ ((1 << S.num_triples) - 1))


def _check_perm(sigma: Sequence[int], n: int) -> list[int]:
    sigma = list(sigma)
    if len(sigma) != n or sorted(sigma) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {sigma}")
    return sigma


def permute(S: Colouring, sigma: Sequence[int]) -> Colouring:
    """Relabel point ``p`` as ``sigma[p]``."""
    sigma = _check_perm(sigma, S.n)
    bits = S.bits
    out = 0
    for r, (i, j, k) in enumerate(iter_triples(S.n)):
        if bits >> r & 1:
            out |= 1 << sorted_rank(sigma[i], sigma[j], sigma[k])
    return Colouring(S.n, out)


def inverse_perm(sigma: Sequence[int]) -> list[int]:
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma):
        inv[s] = i
    return inv


@lru_cache(maxsize=None)
def _perm_rank_table(n: int) -> np.ndarray:
    """``table[p, r]`` = rank of triple ``r`` mapped by the p-th permutation."""
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    mapped = np.sort(perms[:, triple_array(n)], axis=2)
    i, j, k = mapped[..., 0], mapped[..., 1], mapped[..., 2]
    table = (i + j * (j - 1) // 2 + k * (k - 1) * (k - 2) // 6).astype(np.int16)
    table.setflags(write=False)
    return table


def canonical(S: Colouring, include_colour_swap: bool = False) -> Colouring:
    """Least bit pattern (as an integer) over the isomorphism class of ``S``."""
    n = S.n
    if n > MAX_CANONICAL_POINTS:
        raise CapabilityError(f"canonical form only supported for n <= {MAX_CANONICAL_POINTS}")
    if n < 3:
        return S
    table = _perm_rank_table(n)
    weights = np.left_shift(np.uint64(1), np.arange(num_triples(n), dtype=np.uint64))
    candidates = [S.to_array()]
    if include_colour_swap:
        candidates.append(~candidates[0])
    best = None
    for arr in candidates:
        images = np.zeros(table.shape[0], dtype=np.uint64)
        # permuted colouring has bit table[p, r] equal to bit r of S
        np.bitwise_or.reduce(np.where(arr, weights[table], np.uint64(0)), axis=1, out=images)
        low = int(images.min())
        best = low if best is None else min(best, low)
    return Colouring(n, best)


# ---------------------------------------------------------------------------
# batch counting over many small colourings
# ---------------------------------------------------------------------------

def batch_line_counts(n: int, codes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised ``(m_red, m_blue)`` for colourings given as uint64 codes.

    Requires ``C(n,3) <= 64`` (n <= 8).
    """
    if num_triples(n) > 64:
        raise CapabilityError("batch counting needs C(n,3) <= 64")
    codes = np.asarray(codes, dtype=np.uint64)
    pairs = pair_list(n)
    red = np.empty((codes.shape[0], len(pairs)), dtype=np.uint64)
    one = np.uint64(1)
    for idx, (u, v) in enumerate(pairs):
        m = np.full(codes.shape[0], (1 << u) | (1 << v), dtype=np.uint64)
        for p in range(n):
            if p != u and p != v:
                r = np.uint64(sorted_rank(u, v, p))
                m |= ((codes >> r) & one) << np.uint64(p)
        red[:, idx] = m
    pm = np.array([(1 << u) | (1 << v) for u, v in pairs], dtype=np.uint64)
    blue = (np.uint64(full_mask(n)) & ~red) | pm
    return _distinct_per_row(red), _distinct_per_row(blue)


def _distinct_per_row(a: np.ndarray) -> np.ndarray:
    s = np.sort(a, axis=1)
    return 1 + np.count_nonzero(s[:, 1:] != s[:, :-1], axis=1)
