"""Matching permutations: barred/unbarred words encoding matchings.

The closers of a matching, read left to right, carry the barred symbols
1', 2', ..., n'; each opener carries the unbarred value of its arc.  A word
is stored as a tuple of (value, barred) pairs.  The bijection with matchings
transfers every neighbor statistic, which the verification suite checks
object by object.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .algebra import MVPoly
from . import matchings as mt

Symbol = tuple  # (value, barred)
Word = tuple  # tuple[Symbol, ...]


def from_matching(m: mt.Matching) -> Word:
    """Label closers 1'..n' left to right, openers with their arc's value."""
    n = len(m)
    symbols: list[Symbol] = [None] * (2 * n)
    for r, (a, b) in enumerate(m, start=1):
        symbols[a - 1] = (r, False)
        symbols[b - 1] = (r, True)
    return tuple(symbols)


def to_matching(w: Word) -> mt.Matching:
    """Inverse of :func:`from_matching`."""
    openers: dict[int, int] = {}
    arcs = []
    for pos, (value, barred) in enumerate(w, start=1):
        if barred:
            arcs.append((openers[value], pos))
        else:
            openers[value] = pos
    return mt.standard_form(arcs)


def validate_word(w: Word) -> None:
    """Check the matching-permutation invariants."""
    n = len(w) // 2
    if len(w) != 2 * n:
        raise ValueError("word length must be even")
    barred_seen = []
    opened = set()
    closed = set()
    for value, barred in w:
        if not 1 <= value <= n:
            raise ValueError(f"value {value} out of range")
        if barred:
            if value in closed:
                raise ValueError(f"barred {value} appears twice")
            if value not in opened:
                raise ValueError(f"barred {value} precedes unbarred {value}")
            barred_seen.append(value)
            closed.add(value)
        else:
            if value in opened:
                raise ValueError(f"unbarred {value} appears twice")
            opened.add(value)
    if barred_seen != sorted(barred_seen):
        raise ValueError("barred values are not increasing")
    if len(closed) != n:
        raise ValueError("some value is never closed")


def enumerate_words(n: int, start_rank: int = 0) -> Iterator[Word]:
    """Matching permutations, in the image order of the matching stream."""
    for m in mt.enumerate_matchings(n, start_rank=start_rank):
        yield from_matching(m)


def words(n: int) -> Iterator[Word]:
    """Cached for small n, like :func:`matchings.matchings`."""
    for m in mt.matchings(n):
        yield from_matching(m)


def insertion_words(n: int) -> Iterator[Word]:
    """Independent generator used only as a cross-check oracle for small n.

    Grows a word of order k from order k-1 by appending k' and inserting the
    unbarred k just before the word or right after any of its entries.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        yield ((1, False), (1, True))
        return
    for w in insertion_words(n - 1):
        tail = ((n, True),)
        for pos in range(2 * n - 1):
            yield w[:pos] + ((n, False),) + w[pos:] + tail


# ---------------------------------------------------------------------------
# Neighbor classification and word statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NeighborClassification:
    lne: frozenset
    lcr: frozenset
    nal: frozenset
    rrp: frozenset
    lrp: frozenset


def neighbor_classify(w: Word) -> NeighborClassification:
    """Partition the indices 1..2n-1 into the five neighbor classes."""
    lne, lcr, nal, rrp, lrp = set(), set(), set(), set(), set()
    for i in range(len(w) - 1):
        v1, b1 = w[i]
        v2, b2 = w[i + 1]
        idx = i + 1
        if b1 and b2:
            rrp.add(idx)
        elif b1 and not b2:
            nal.add(idx)
        elif not b1 and b2:
            lrp.add(idx)
        elif v1 > v2:
            lne.add(idx)
        else:
            lcr.add(idx)
    return NeighborClassification(lne=frozenset(lne), lcr=frozenset(lcr),
                                  nal=frozenset(nal), rrp=frozenset(rrp),
                                  lrp=frozenset(lrp))


@dataclass(frozen=True)
class WordStats:
    inv: int
    coinv: int
    rank: int


def word_stats(w: Word) -> WordStats:
    """Inversions, co-inversions and ranks of a matching permutation.

    inv counts descending unbarred pairs (these are exactly the nestings of
    the matching).  coinv counts ascending unbarred pairs whose second entry
    falls before the first entry's barred partner, i.e. inside its arc span
    (exactly the crossings; an ascending pair beyond that span is an
    alignment instead).  rank counts barred entries followed later by a
    larger unbarred entry (exactly the alignments).
    """
    closer_pos = {}
    for pos, (value, barred) in enumerate(w):
        if barred:
            closer_pos[value] = pos
    inv = coinv = rank = 0
    for i in range(len(w)):
        vi, bi = w[i]
        for j in range(i + 1, len(w)):
            vj, bj = w[j]
            if not bi and not bj:
                if vi > vj:
                    inv += 1
                elif j < closer_pos[vi]:
                    coinv += 1
            elif bi and not bj and vi < vj:
                rank += 1
    return WordStats(inv=inv, coinv=coinv, rank=rank)


def word_text(w: Word) -> str:
    """Space-separated rendering, barred symbols with a trailing apostrophe."""
    return " ".join(f"{v}'" if b else str(v) for v, b in w)


def word_from_text(text: str) -> Word:
    out = []
    for token in text.split():
        if token.endswith("'"):
            out.append((int(token[:-1]), True))
        else:
            out.append((int(token), False))
    w = tuple(out)
    validate_word(w)
    return w


# ---------------------------------------------------------------------------
# Neighbor polynomial families
# ---------------------------------------------------------------------------

def _neighbor_counts(w: Word) -> tuple[int, int, int, int, int]:
    c = neighbor_classify(w)
    return (len(c.lne), len(c.lcr), len(c.nal), len(c.rrp), len(c.lrp))


@lru_cache(maxsize=None)
def c_poly(n: int) -> MVPoly:
    """The five-variable neighbor polynomial C_n(x1, x2, x3, y1, y2)."""
    counts: dict[tuple, int] = {}
    for w in words(n):
        key = _neighbor_counts(w)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x1", "x2", "x3", "y1", "y2"))


@lru_cache(maxsize=None)
def nca_poly(n: int) -> MVPoly:
    """Sum of x^lne y^lcr z^nal over matching permutations."""
    counts: dict[tuple, int] = {}
    for w in words(n):
        lne, lcr, nal, _, _ = _neighbor_counts(w)
        key = (lne, lcr, nal)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "y", "z"))


@lru_cache(maxsize=None)
def ncr_poly(n: int) -> MVPoly:
    """Sum of x^lne y^lcr z^(lrp-1) over matching permutations."""
    counts: dict[tuple, int] = {}
    for w in words(n):
        lne, lcr, _, _, lrp = _neighbor_counts(w)
        key = (lne, lcr, lrp - 1)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "y", "z"))
