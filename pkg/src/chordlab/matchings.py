"""Matchings on [2n]: enumeration, block classes, pairwise statistics, the
extend/reduce generation algorithm and trace indices.

A matching is a tuple of (opener, closer) arcs in standard form: opener <
closer inside each arc, arcs sorted by closer, every vertex of [2n] used
exactly once.  Plain tuples keep the enumeration of the larger M_n cheap;
:func:`standard_form` produces the canonical representation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .algebra import MVPoly

Arc = tuple  # (opener, closer)
Matching = tuple  # tuple[Arc, ...] in standard form


class ArcNotFoundError(Exception):
    pass


def double_factorial(m: int) -> int:
    """(2n-1)!! for m = 2n-1; 1 for m <= 0."""
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def standard_form(arcs) -> Matching:
    """Canonical form: each arc (min, max), arcs sorted by closer."""
    fixed = [(a, b) if a < b else (b, a) for a, b in arcs]
    fixed.sort(key=lambda arc: arc[1])
    return tuple(fixed)


def validate_matching(m: Matching) -> None:
    """Raise ValueError unless `m` is a standard-form matching on [2n]."""
    n = len(m)
    seen = set()
    last_closer = 0
    for a, b in m:
        if not a < b:
            raise ValueError(f"arc ({a},{b}) has opener >= closer")
        if b <= last_closer:
            raise ValueError("arcs are not sorted by closer")
        last_closer = b
        seen.add(a)
        seen.add(b)
    if seen != set(range(1, 2 * n + 1)):
        raise ValueError("vertices do not cover [2n] exactly once")


def enumerate_matchings(n: int, start_rank: int = 0) -> Iterator[Matching]:
    """All (2n-1)!! matchings, each in standard form, in a fixed order.

    The order pairs the smallest unmatched vertex with each larger unmatched
    vertex in turn; `start_rank` resumes the stream at that position, which
    is what makes prefix-sharded parallel aggregation possible.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        if start_rank == 0:
            yield ()
        return
    total = double_factorial(2 * n - 1)
    if start_rank >= total:
        return
    radices = [2 * (n - d) - 1 for d in range(n)]
    digits = [0] * n
    rank = start_rank
    for d in range(n - 1, -1, -1):
        rank, digits[d] = divmod(rank, radices[d])
    arcs: list[tuple[int, int]] = []

    def rec(free: tuple, depth: int, on_prefix: bool) -> Iterator[Matching]:
        if not free:
            yield standard_form(arcs)
            return
        a = free[0]
        lo = 1 + digits[depth] if on_prefix else 1
        for t in range(lo, len(free)):
            arcs.append((a, free[t]))
            yield from rec(free[1:t] + free[t + 1:], depth + 1,
                           on_prefix and t == lo)
            arcs.pop()

    yield from rec(tuple(range(1, 2 * n + 1)), 0, True)


# ---------------------------------------------------------------------------
# Block classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BlockClass:
    closer_class: str  # fixed | even_larger | odd_larger
    opener_class: str  # fixed | even_smaller | odd_smaller


def classify_block(arc: Arc) -> BlockClass:
    a, b = arc
    if a % 2 == 1 and b == a + 1:
        return BlockClass("fixed", "fixed")
    closer = "odd_larger" if b % 2 == 1 else "even_larger"
    opener = "even_smaller" if a % 2 == 0 else "odd_smaller"
    return BlockClass(closer, opener)


@dataclass(frozen=True)
class BlockStats:
    fixb: int
    elblock: int
    olblock: int
    esblock: int
    osblock: int
    even_to_odd: int


def block_stats(m: Matching) -> BlockStats:
    fixb = el = ol = es = os = eto = 0
    for a, b in m:
        if a % 2 == 1 and b == a + 1:
            fixb += 1
        else:
            if b % 2 == 1:
                ol += 1
            else:
                el += 1
            if a % 2 == 0:
                es += 1
            else:
                os += 1
        if a % 2 == 0 and b % 2 == 1:
            eto += 1
    return BlockStats(fixb=fixb, elblock=el, olblock=ol, esblock=es,
                      osblock=os, even_to_odd=eto)


# ---------------------------------------------------------------------------
# Pairwise and positional statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairStats:
    cr: int
    ne: int
    al: int
    lne: int
    lcr: int
    nal: int
    rne: int
    rcr: int
    lrp: int
    rrp: int


def pairwise_stats(m: Matching) -> PairStats:
    """Crossing/nesting/alignment counts, their adjacency-restricted variants
    and the LR/RR consecutive-position counts."""
    n = len(m)
    cr = ne = al = lne = lcr = nal = rne = rcr = 0
    for r in range(n):
        i1, j1 = m[r]
        for s in range(r + 1, n):
            i2, j2 = m[s]  # j1 < j2 by standard form
            if i2 > j1:
                al += 1
                if i2 == j1 + 1:
                    nal += 1
            elif i2 > i1:
                cr += 1
                if i2 == i1 + 1:
                    lcr += 1
                if j2 == j1 + 1:
                    rcr += 1
            else:
                ne += 1
                if i1 == i2 + 1:
                    lne += 1
                if j2 == j1 + 1:
                    rne += 1
    is_opener = [False] * (2 * n + 2)
    for a, b in m:
        is_opener[a] = True
    lrp = rrp = 0
    for i in range(1, 2 * n):
        if is_opener[i + 1]:
            continue
        if is_opener[i]:
            lrp += 1
        else:
            rrp += 1
    return PairStats(cr=cr, ne=ne, al=al, lne=lne, lcr=lcr, nal=nal,
                     rne=rne, rcr=rcr, lrp=lrp, rrp=rrp)


# ---------------------------------------------------------------------------
# Generation algorithm: psi, psi1, psi2 and the inverse reduction
# ---------------------------------------------------------------------------

def extend_psi(m: Matching) -> Matching:
    """Append the block (2n+1, 2n+2)."""
    size = 2 * len(m)
    return m + ((size + 1, size + 2),)


def extend_psi1(m: Matching, arc: Arc) -> Matching:
    """Replace (i, j) by the blocks (i, 2n+1)(j, 2n+2)."""
    if arc not in m:
        raise ArcNotFoundError(f"{arc} is not an arc of the matching")
    size = 2 * len(m)
    i, j = arc
    rest = tuple(a for a in m if a != arc)
    return standard_form(rest + ((i, size + 1), (j, size + 2)))


def extend_psi2(m: Matching, arc: Arc) -> Matching:
    """Replace (i, j) by the blocks (j, 2n+1)(i, 2n+2)."""
    if arc not in m:
        raise ArcNotFoundError(f"{arc} is not an arc of the matching")
    size = 2 * len(m)
    i, j = arc
    rest = tuple(a for a in m if a != arc)
    return standard_form(rest + ((j, size + 1), (i, size + 2)))


def reduce_step(m: Matching) -> tuple[Matching, str]:
    """Delete or contract the entries 2n-1 and 2n; returns (matching, tag).

    Tag is "psi" when (2n-1, 2n) was an arc and was deleted, else "psi1" or
    "psi2" according to which constructor the contraction inverts.
    """
    n = len(m)
    if n < 1:
        raise ValueError("cannot reduce the empty matching")
    top = 2 * n
    partner = {}
    for a, b in m:
        partner[a] = b
        partner[b] = a
    if partner[top - 1] == top:
        rest = tuple(arc for arc in m if arc != (top - 1, top))
        return rest, "psi"
    a = partner[top - 1]
    b = partner[top]
    tag = "psi1" if a < b else "psi2"
    rest = [arc for arc in m if top - 1 not in arc and top not in arc]
    rest.append((min(a, b), max(a, b)))
    return standard_form(rest), tag


def trace_indices(m: Matching) -> frozenset:
    """Openers that open a fixed block at some stage of the reduction chain.

    Arcs keep their endpoints until the reduction reaches them, so the set is
    exactly: fixed-block openers of `m` itself, plus openers of fixed blocks
    created by a contraction along the chain.
    """
    n = len(m)
    partner = [0] * (2 * n + 1)
    found = set()
    for a, b in m:
        partner[a] = b
        partner[b] = a
        if a % 2 == 1 and b == a + 1:
            found.add(a)
    for top in range(2 * n, 0, -2):
        if partner[top - 1] == top:
            continue
        a = partner[top - 1]
        b = partner[top]
        c, d = (a, b) if a < b else (b, a)
        partner[c] = d
        partner[d] = c
        if c % 2 == 1 and d == c + 1:
            found.add(c)
    return frozenset(found)


def trace(m: Matching) -> int:
    return len(trace_indices(m))


# ---------------------------------------------------------------------------
# Polynomial families
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _matching_list(n: int) -> tuple:
    """Materialized stream for small n, reused across the many small checks."""
    return tuple(enumerate_matchings(n))


def matchings(n: int) -> Iterator[Matching]:
    """Like enumerate_matchings but cached for n <= 6."""
    if n <= 6:
        return iter(_matching_list(n))
    return enumerate_matchings(n)


@lru_cache(maxsize=None)
def m_poly(n: int) -> MVPoly:
    """The (s,t)-even-odd larger matching polynomial M_n(x, y, s, t)."""
    counts: dict[tuple, int] = {}
    for m in matchings(n):
        bs = block_stats(m)
        key = (bs.elblock, bs.olblock, bs.fixb, trace(m))
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "y", "s", "t"))


@lru_cache(maxsize=None)
def i_poly(n: int) -> MVPoly:
    """I_n(x, y, q): sum of x^ne y^cr q^al over matchings."""
    counts: dict[tuple, int] = {}
    for m in matchings(n):
        ps = pairwise_stats(m)
        key = (ps.ne, ps.cr, ps.al)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "y", "q"))


def count_even_to_odd_free(n: int) -> int:
    """Matchings with no block whose opener is even and closer odd."""
    return sum(1 for m in matchings(n) if block_stats(m).even_to_odd == 0)


def trace_distribution(n: int) -> MVPoly:
    """Sum of q^trace over all matchings of [2n]."""
    counts: dict[tuple, int] = {}
    for m in matchings(n):
        key = (trace(m),)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("q",))


def arcs_text(m: Matching) -> str:
    """Standard-form serialization like (1,3)(2,4)."""
    return "".join(f"({a},{b})" for a, b in m)


def arcs_from_text(text: str) -> Matching:
    """Inverse of :func:`arcs_text`; validates the result."""
    text = text.strip()
    if not text:
        return ()
    parts = re.findall(r"\((\d+),(\d+)\)", text)
    if "".join(f"({a},{b})" for a, b in parts) != text.replace(" ", ""):
        raise ValueError(f"malformed arc list: {text!r}")
    m = standard_form((int(a), int(b)) for a, b in parts)
    validate_matching(m)
    return m
