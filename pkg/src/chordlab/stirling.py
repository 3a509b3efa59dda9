"""Stirling permutations, increasing plane trees and the xi/gamma tables.

Stirling permutations of order n are words on {1,1,...,n,n} in which the
values between the two copies of i all exceed i; ascents, plateaux and
descents are counted over the padded word with zeros at both ends.  The
xi and gamma coefficient tables are computed purely by their recurrences;
tree censuses provide the independent enumeration side.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .algebra import MVPoly

StirlingPermutation = tuple  # tuple[int, ...] of length 2n
PlaneTree = tuple  # children lists: tuple[tuple[int, ...], ...], index 0 unused


def enumerate_stirling(n: int, start_rank: int = 0) -> Iterator[StirlingPermutation]:
    """All (2n-1)!! Stirling permutations of order n.

    Order k words arise from order k-1 words by inserting the adjacent pair
    "kk" into each of the 2k-1 gaps, leftmost gap first; ranks follow that
    mixed-radix construction, so streams are restartable.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        if start_rank == 0:
            yield ()
        return
    radices = [2 * k - 1 for k in range(1, n + 1)]
    total = 1
    for r in radices:
        total *= r
    if start_rank >= total:
        return
    digits = [0] * n
    rank = start_rank
    for k in range(n - 1, -1, -1):
        rank, digits[k] = divmod(rank, radices[k])

    def rec(word: tuple, k: int, on_prefix: bool) -> Iterator[StirlingPermutation]:
        if k > n:
            yield word
            return
        lo = digits[k - 1] if on_prefix else 0
        for gap in range(lo, 2 * k - 1):
            yield from rec(word[:gap] + (k, k) + word[gap:], k + 1,
                           on_prefix and gap == lo)

    yield from rec((), 1, True)


def stirling_word_stats(word: StirlingPermutation) -> tuple[int, int, int]:
    """(asc, plat, des) over the zero-padded word."""
    padded = (0,) + word + (0,)
    asc = plat = des = 0
    for i in range(len(padded) - 1):
        a, b = padded[i], padded[i + 1]
        if a < b:
            asc += 1
        elif a == b:
            plat += 1
        else:
            des += 1
    return asc, plat, des


@lru_cache(maxsize=None)
def q_poly(n: int) -> MVPoly:
    """Trivariate second-order Eulerian polynomial Q_n(x, y, z)."""
    counts: dict[tuple, int] = {}
    for word in enumerate_stirling(n):
        key = stirling_word_stats(word)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "y", "z"))


def q_univariate(n: int) -> MVPoly:
    """Q_n(x): the descent generating polynomial, from the trivariate form."""
    return q_poly(n).subst({"x": 1, "y": 1, "z": MVPoly.var("x")})


# ---------------------------------------------------------------------------
# Increasing plane trees with bounded degree
# ---------------------------------------------------------------------------

def enumerate_trees(n: int, max_degree: int) -> Iterator[PlaneTree]:
    """Increasing plane trees on [n], every vertex with at most `max_degree`
    ordered children; vertex m+1 is attached at each legal child slot."""
    if n < 1:
        raise ValueError("n must be positive")
    if max_degree not in (2, 3):
        raise ValueError("max_degree must be 2 or 3")
    children: list[list[int]] = [[] for _ in range(n + 1)]

    def snapshot() -> PlaneTree:
        return tuple(tuple(c) for c in children)

    def rec(m: int) -> Iterator[PlaneTree]:
        if m > n:
            yield snapshot()
            return
        for v in range(1, m):
            kids = children[v]
            if len(kids) >= max_degree:
                continue
            for slot in range(len(kids) + 1):
                kids.insert(slot, m)
                yield from rec(m + 1)
                kids.pop(slot)

    if n == 1:
        yield snapshot()
    else:
        yield from rec(2)


def tree_degree_histogram(tree: PlaneTree) -> tuple[int, int, int, int]:
    """(leaves, deg-1, deg-2, deg-3) counts of a tree snapshot."""
    counts = [0, 0, 0, 0]
    for v in range(1, len(tree)):
        counts[len(tree[v])] += 1
    return tuple(counts)


def tree_text(tree: PlaneTree) -> str:
    """Nested rendering such as 1(2(4),3)."""
    def render(v: int) -> str:
        kids = tree[v]
        if not kids:
            return str(v)
        return f"{v}({','.join(render(k) for k in kids)})"
    return render(1)


# ---------------------------------------------------------------------------
# Coefficient tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoeffTable:
    n: int
    entries: dict  # (i, j, k) -> positive int

    def poly(self, names=("x", "y", "z")) -> MVPoly:
        return MVPoly.from_exponents(self.entries, names)

    def to_json(self, family: str) -> str:
        rows = [{"i": i, "j": j, "k": k, "c": str(c)}
                for (i, j, k), c in sorted(self.entries.items())]
        return json.dumps({"family": family, "n": self.n, "entries": rows})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoeffTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries


@lru_cache(maxsize=None)
def xi_table(n: int) -> CoeffTable:
    """xi coefficients by the recurrence

    xi(n+1; i,j,k) = (1+j+2k) xi(n; i-1,j,k) + 2(1+i) xi(n; i+1,j-1,k)
                     + 3(1+j) xi(n; i,j+1,k-1),

    starting from xi(1; 1,0,0) = 1; keys satisfy i + 2j + 3k = n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return CoeffTable(1, {(1, 0, 0): 1})
    prev = xi_table(n - 1).entries
    cur: dict[tuple, int] = {}
    for k in range(n // 3 + 1):
        for j in range((n - 3 * k) // 2 + 1):
            i = n - 2 * j - 3 * k
            total = (1 + j + 2 * k) * prev.get((i - 1, j, k), 0)
            total += 2 * (1 + i) * prev.get((i + 1, j - 1, k), 0)
            total += 3 * (1 + j) * prev.get((i, j + 1, k - 1), 0)
            if total:
                cur[(i, j, k)] = total
    return CoeffTable(n, cur)


@lru_cache(maxsize=None)
def gamma_table(n: int) -> CoeffTable:
    """gamma coefficients by the recurrence

    gamma(n; i,j,k) = 3(1+i) gamma(n-1; i+1,j,k-1) + 2(1+j) gamma(n-1; i-1,j+1,k-1)
                      + k gamma(n-1; i,j-1,k),

    starting from gamma(1; 0,0,1) = 1; keys satisfy i + 2j + 3k = 2n + 1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return CoeffTable(1, {(0, 0, 1): 1})
    prev = gamma_table(n - 1).entries
    cur: dict[tuple, int] = {}
    target = 2 * n + 1
    for k in range(target // 3 + 1):
        for j in range((target - 3 * k) // 2 + 1):
            i = target - 2 * j - 3 * k
            total = 3 * (1 + i) * prev.get((i + 1, j, k - 1), 0)
            total += 2 * (1 + j) * prev.get((i - 1, j + 1, k - 1), 0)
            total += k * prev.get((i, j - 1, k), 0)
            if total:
                cur[(i, j, k)] = total
    return CoeffTable(n, cur)


def xi_poly(n: int) -> MVPoly:
    """xi_n(x, y, z) assembled from the table."""
    return xi_table(n).poly()


def gamma_poly(n: int) -> MVPoly:
    """gamma_n(x, y, z) assembled from the table."""
    return gamma_table(n).poly()


@lru_cache(maxsize=None)
def degree_census(n: int, max_degree: int) -> CoeffTable:
    """Tree counts on [n] keyed by (deg-1, deg-2, deg-3) vertex counts."""
    entries: dict[tuple, int] = {}
    for tree in enumerate_trees(n, max_degree):
        _, d1, d2, d3 = tree_degree_histogram(tree)
        key = (d1, d2, d3)
        entries[key] = entries.get(key, 0) + 1
    return CoeffTable(n, entries)


def gamma_keyed_census(n: int) -> CoeffTable:
    """Tree counts on [n] keyed the gamma way: (deg-2, deg-1, leaves)."""
    entries: dict[tuple, int] = {}
    for tree in enumerate_trees(n, 3):
        leaves, d1, d2, _ = tree_degree_histogram(tree)
        key = (d2, d1, leaves)
        entries[key] = entries.get(key, 0) + 1
    return CoeffTable(n, entries)
