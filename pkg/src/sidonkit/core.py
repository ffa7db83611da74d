"""Sidon sets: representation, verification, difference masks, small-k oracle.

A Sidon set (Golomb ruler, B2 set) is a set of integers whose positive
pairwise differences are all distinct.  Sets are stored normalized, i.e.
translated so that the smallest element is 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "SidonError",
    "NotSidon",
    "find_collision",
    "ModulusTooSmall",
    "BudgetExceeded",
    "SidonSet",
    "DiffMask",
    "SearchBudget",
    "is_sidon",
    "normalize",
    "canonical",
    "diff_mask",
    "positive_differences",
    "is_modular_sidon",
    "greedy_sidon",
    "exhaustive_optimal",
    "naive_optimal",
    "theorem1_holds",
]


class SidonError(ValueError):
    """Base class for errors raised by sidonkit."""


class NotSidon(SidonError):
    def __init__(self, message: str, pair1=None, pair2=None, line: int | None = None):
        super().__init__(message)
        self.pair1 = pair1
        self.pair2 = pair2
        self.line = line


class ModulusTooSmall(SidonError):
    pass


class BudgetExceeded(SidonError):
    """Raised by the exhaustive oracle; ``best`` holds the incumbent (not proven optimal)."""

    def __init__(self, message: str, best: "SidonSet", lower: int):
        super().__init__(message)
        self.best = best
        self.lower = lower
        self.optimal = False


def _find_collision(elements: Sequence[int]):
    seen: dict[int, tuple[int, int]] = {}
    n = len(elements)
    for i in range(n):
        ai = elements[i]
        for j in range(i + 1, n):
            d = elements[j] - ai
            if d in seen:
                return seen[d], (ai, elements[j])
            seen[d] = (ai, elements[j])
    return None


def find_collision(elements: Iterable[int]):
    """Two pairs with equal difference, ((a, b), (c, d)), or None if Sidon."""
    elems = sorted(int(a) for a in elements)
    for a, b in zip(elems, elems[1:]):
        if a == b:
            return (a, a), (b, b)
    return _find_collision(elems)


def is_sidon(elements: Iterable[int]) -> bool:
    """True iff all positive pairwise differences are distinct.

    Order is irrelevant; a repeated element counts as a collision.
    """
    elems = sorted(int(a) for a in elements)
    for a, b in zip(elems, elems[1:]):
        if a == b:
            return False
    if len(elems) < 3:
        return True
    return _find_collision(elems) is None


@dataclass(frozen=True)
class SidonSet:
    """Normalized Sidon set: strictly increasing, first element 0."""

    elements: tuple[int, ...]

    def __post_init__(self):
        el = self.elements
        if el and el[0] != 0:
            raise SidonError("SidonSet must be normalized (min = 0); use normalize()")
        if any(b <= a for a, b in zip(el, el[1:])):
            raise SidonError("elements must be strictly increasing")

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def diameter(self) -> int:
        return self.elements[-1] if self.elements else 0

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item) -> bool:
        return item in set(self.elements)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.elements, dtype=np.int64)

    def reflected(self) -> "SidonSet":
        d = self.diameter
        return SidonSet(tuple(d - a for a in reversed(self.elements)))

    def canonical(self) -> "SidonSet":
        return canonical(self)

    def __str__(self) -> str:
        return " ".join(map(str, self.elements))


def normalize(elements: Iterable[int]) -> SidonSet:
    """Sort, translate to min 0, and verify the Sidon property.

    Raises NotSidon naming one colliding pair of pairs.
    """
    elems = sorted(int(a) for a in elements)
    if not elems:
        return SidonSet(())
    for a, b in zip(elems, elems[1:]):
        if a == b:
            raise NotSidon(f"repeated element {a}", (a, a), (b, b))
    hit = _find_collision(elems)
    if hit is not None:
        (a, b), (c, d) = hit
        raise NotSidon(f"difference {b - a} occurs twice: {b}-{a} = {d}-{c}", (a, b), (c, d))
    lo = elems[0]
    return SidonSet(tuple(a - lo for a in elems))


def canonical(s: SidonSet) -> SidonSet:
    """Lexicographic minimum of the set and its reflection."""
    r = s.reflected()
    return r if r.elements < s.elements else s


@dataclass(frozen=True)
class DiffMask:
    """Set of positive differences r <= limit, as a boolean array indexed by r."""

    bits: np.ndarray = field(repr=False)
    limit: int

    def __contains__(self, r) -> bool:
        return 1 <= r <= self.limit and bool(self.bits[r])

    @property
    def popcount(self) -> int:
        return int(np.count_nonzero(self.bits))

    def members(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def to_int(self) -> int:
        """Bitset as a Python integer (bit r set iff r is a difference)."""
        packed = np.packbits(self.bits, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")


def positive_differences(elements: Sequence[int] | np.ndarray, limit: int | None = None) -> np.ndarray:
    """All positive differences (with multiplicity) not exceeding ``limit``."""
    a = np.sort(np.asarray(elements, dtype=np.int64))
    chunks = []
    for i in range(len(a) - 1):
        d = a[i + 1:] - a[i]
        if limit is not None:
            d = d[: np.searchsorted(d, limit, side="right")]
        if len(d):
            chunks.append(d)
    if not chunks:
        return np.zeros(0, dtype=np.int64)
    return np.concatenate(chunks)


def diff_mask(s: SidonSet | Sequence[int], limit: int) -> DiffMask:
    if limit < 1:
        raise SidonError("limit must be >= 1")
    bits = np.zeros(limit + 1, dtype=bool)
    bits[positive_differences(tuple(s), limit)] = True
    return DiffMask(bits, limit)


def is_modular_sidon(residues: Iterable[int], m: int) -> bool:
    """True iff all ordered differences a - b (mod m), a != b, are distinct."""
    if m < 1:
        raise ModulusTooSmall(f"modulus must be >= 1, got {m}")
    res = [int(r) for r in residues]
    if any(not 0 <= r < m for r in res) or len(set(res)) != len(res):
        return False
    n = len(res)
    if n * (n - 1) > m - 1:
        return False
    seen = np.zeros(m, dtype=bool)
    arr = np.asarray(res, dtype=np.int64)
    for i, r in enumerate(res):
        d = np.delete((r - arr) % m, i)
        if seen[d].any():
            return False
        seen[d] = True
    return True


def greedy_sidon(k: int) -> SidonSet:
    """First k terms of the greedy Sidon sequence 0, 1, 3, 7, 12, 20, ..."""
    if k < 1:
        raise SidonError("k must be >= 1")
    elems = [0]
    used = 0  # bitset of differences
    cand = 1
    while len(elems) < k:
        new = 0
        for a in elems:
            new |= 1 << (cand - a)
        if new & used == 0 and new.bit_count() == len(elems):
            elems.append(cand)
            used |= new
        cand += 1
    return SidonSet(tuple(elems))


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    max_seconds: float | None = None

    def __post_init__(self):
        if self.max_nodes is not None and self.max_nodes <= 0:
            raise SidonError("max_nodes must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise SidonError("max_seconds must be positive")


class _Stop(Exception):
    pass


def theorem1_holds(k: int, diameter: int) -> bool:
    """Exact test of diameter >= k^2 - 2k^(3/2) + k + sqrt(k) - 1.

    Rearranged as L >= -(2k-1) sqrt(k) with L = diameter - k^2 - k + 1,
    then squared when L < 0; no floating point.
    """
    if k < 1:
        raise SidonError("k must be >= 1")
    lhs = diameter - k * k - k + 1
    if lhs >= 0:
        return True
    c = 2 * k - 1
    return lhs * lhs <= c * c * k


def _theorem1_ceil(k: int) -> int:
    # smallest integer diameter satisfying the bound
    lo = k * k - 2 * isqrt(k**3) - 2
    lo = max(lo, 0)
    while not theorem1_holds(k, lo):
        lo += 1
    return lo


_OPTIMAL_CACHE: dict[int, tuple[int, SidonSet]] = {1: (0, SidonSet((0,)))}


def exhaustive_optimal(k: int, budget: SearchBudget | None = None) -> tuple[int, SidonSet]:
    """Minimum diameter s_k of a k-element Sidon set, with a witness.

    Depth-first branch and bound: marks are placed left to right, smallest
    candidate first, with the greedy ruler as the initial incumbent.  A
    partial ruler ending at p with j marks still to place is cut when
    p + s_{j+1} exceeds the target (s_j for smaller j come from recursive
    calls); reflections are removed by requiring the first gap to be
    smaller than the last.  The returned witness is the lexicographically
    smallest such optimal ruler.
    """
    if k < 1:
        raise SidonError("k must be >= 1")
    if k in _OPTIMAL_CACHE:
        return _OPTIMAL_CACHE[k]
    budget = budget or SearchBudget()

    # suffix lower bounds: j marks span at least s_j
    span = [0, 0]
    try:
        for j in range(2, k):
            span.append(exhaustive_optimal(j, budget)[0])
    except BudgetExceeded as e:
        raise BudgetExceeded(
            f"budget exhausted for k={k} (while proving s_{len(span)}); best diameter {greedy_sidon(k).diameter}",
            greedy_sidon(k),
            _theorem1_ceil(k),
        ) from e
    floor_k = max(span[k - 1] + 1, _theorem1_ceil(k))

    incumbent = greedy_sidon(k)
    best = [incumbent.diameter, incumbent.elements]
    target = [best[0] - 1]
    nodes = [0]
    t0 = time.monotonic()
    C = best[0]  # reversed-mark offset; bit C - a marks a

    marks = [0]

    def dfs(rev: int, used: int):
        nodes[0] += 1
        if budget.max_nodes is not None and nodes[0] > budget.max_nodes:
            raise _Stop
        if budget.max_seconds is not None and nodes[0] % 4096 == 0:
            if time.monotonic() - t0 > budget.max_seconds:
                raise _Stop
        placed = len(marks)
        remaining = k - placed  # marks still to place, including the last
        last = marks[-1]
        first_gap = marks[1] if placed > 1 else None
        p = last + 1
        while True:
            if p + span[remaining] > target[0]:
                return
            new = rev >> (C - p)
            if new & used == 0:
                if remaining == 1:
                    if k == 2 or p - last > first_gap:
                        best[0] = p
                        best[1] = tuple(marks) + (p,)
                        target[0] = p - 1
                        if target[0] < floor_k:
                            raise _Stop
                        return
                else:
                    marks.append(p)
                    dfs(rev | (1 << (C - p)), used | new)
                    marks.pop()
            p += 1

    proven = True
    if best[0] > floor_k:
        try:
            dfs(1 << C, 0)
        except _Stop:
            # stopping because the floor was reached is a proof, not a timeout
            proven = target[0] < floor_k
    witness = canonical(SidonSet(best[1]))
    if not proven:
        raise BudgetExceeded(
            f"budget exhausted for k={k}; best diameter {best[0]}", witness, floor_k
        )
    _OPTIMAL_CACHE[k] = (best[0], witness)
    return best[0], witness


def naive_optimal(k: int, start: int = 0) -> tuple[int, SidonSet]:
    """Independent oracle: scan diameters upward, enumerating all subsets."""
    from itertools import combinations

    if k == 1:
        return 0, SidonSet((0,))
    d = max(start, k - 1)
    while True:
        for mid in combinations(range(1, d), k - 2):
            cand = (0, *mid, d)
            if is_sidon(cand):
                return d, canonical(SidonSet(cand))
        d += 1


def max_sidon_in_interval(n: int) -> int:
    """R_2(n) by exhaustive search: largest k with s_k <= n - 1."""
    if n < 1:
        raise SidonError("n must be >= 1")
    k = 1
    while exhaustive_optimal(k + 1)[0] <= n - 1:
        k += 1
    return k
