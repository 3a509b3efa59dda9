"""Permutations, signed permutations, derangements and inversion sequences.

Permutations are one-line tuples pi with pi[i-1] = pi(i); signed permutations
are window tuples over {+-1..+-n} whose absolute values form a permutation.
All enumeration streams are lexicographic and restartable from a rank, so
enumeration can be partitioned into contiguous shards whose aggregates are
combined by ordinary polynomial addition.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .algebra import MVPoly

Permutation = tuple  # tuple[int, ...], values 1..n
SignedPermutation = tuple  # tuple[int, ...], values in {+-1..+-n}
InversionSequence = tuple  # tuple[int, ...], 0 <= e[i] <= i


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def enumerate_permutations(n: int, start_rank: int = 0) -> Iterator[Permutation]:
    """All permutations of [n] in lexicographic order, starting at a rank."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if start_rank == 0:
        yield from itertools.permutations(range(1, n + 1))
        return
    if start_rank >= math.factorial(n):
        return
    current = list(unrank_permutation(n, start_rank))
    while True:
        yield tuple(current)
        # classic next-permutation step
        i = n - 2
        while i >= 0 and current[i] >= current[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while current[j] <= current[i]:
            j -= 1
        current[i], current[j] = current[j], current[i]
        current[i + 1:] = reversed(current[i + 1:])


def unrank_permutation(n: int, rank: int) -> Permutation:
    """The permutation of [n] at a given lexicographic rank (0-based)."""
    if not 0 <= rank < math.factorial(n):
        raise ValueError("rank out of range")
    pool = list(range(1, n + 1))
    out = []
    for i in range(n, 0, -1):
        f = math.factorial(i - 1)
        idx, rank = divmod(rank, f)
        out.append(pool.pop(idx))
    return tuple(out)


def enumerate_derangements(n: int) -> Iterator[Permutation]:
    """Fixed-point-free permutations of [n], in lexicographic order."""
    for pi in enumerate_permutations(n):
        if all(v != i for i, v in enumerate(pi, start=1)):
            yield pi


def enumerate_signed(n: int, start_rank: int = 0) -> Iterator[SignedPermutation]:
    """Signed permutations in lexicographic window order (-n < ... < -1 < 1 < ... < n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 2 ** n * math.factorial(n)
    if start_rank >= total:
        return
    radices = [2 * (n - d) for d in range(n)]
    digits = _digits(start_rank, radices)
    window: list[int] = []
    used = [False] * (n + 1)

    def rec(depth: int, on_prefix: bool) -> Iterator[SignedPermutation]:
        if depth == n:
            yield tuple(window)
            return
        choices = [v for v in range(-n, n + 1) if v and not used[abs(v)]]
        lo = digits[depth] if on_prefix else 0
        for idx in range(lo, len(choices)):
            v = choices[idx]
            used[abs(v)] = True
            window.append(v)
            yield from rec(depth + 1, on_prefix and idx == lo)
            window.pop()
            used[abs(v)] = False

    yield from rec(0, True)


def _digits(rank: int, radices: list[int]) -> list[int]:
    """Mixed-radix digits of `rank`, most significant first."""
    digits = [0] * len(radices)
    for d in range(len(radices) - 1, -1, -1):
        rank, digits[d] = divmod(rank, radices[d])
    if rank:
        raise ValueError("rank out of range")
    return digits


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermStats:
    exc: int
    drop: int
    fix: int
    cyc: int
    asc: int
    des: int
    inv: int
    cda: int
    dd: int


def cycle_count(pi: Permutation) -> int:
    n = len(pi)
    seen = [False] * (n + 1)
    count = 0
    for i in range(1, n + 1):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = pi[j - 1]
    return count


def perm_stats(pi: Permutation) -> PermStats:
    """The statistic record used throughout; dd uses boundary pi(0)=pi(n+1)=0."""
    n = len(pi)
    exc = drop = fix = 0
    for i, v in enumerate(pi, start=1):
        if v > i:
            exc += 1
        elif v < i:
            drop += 1
        else:
            fix += 1
    asc = sum(1 for i in range(n - 1) if pi[i] < pi[i + 1])
    des = (n - 1) - asc
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if pi[i] > pi[j])
    inverse = [0] * (n + 1)
    for i, v in enumerate(pi, start=1):
        inverse[v] = i
    cda = sum(1 for i in range(1, n + 1) if inverse[i] < i < pi[i - 1])
    padded = (0,) + pi + (0,)
    dd = sum(1 for i in range(1, n + 1)
             if padded[i - 1] > padded[i] > padded[i + 1])
    return PermStats(exc=exc, drop=drop, fix=fix, cyc=cycle_count(pi),
                     asc=asc, des=des, inv=inv, cda=cda, dd=dd)


@dataclass(frozen=True)
class SignedStats:
    wexc: int
    exc_B: int
    drop_B: int
    fix_B: int
    single: int
    cyc_B: int


def signed_stats(sigma: SignedPermutation) -> SignedStats:
    """Type-B statistics.

    cyc_B is the cycle count of the absolute permutation i -> |sigma(i)|;
    the verification suite treats that convention as provisional and lets
    the B-MAIN check arbitrate it empirically.
    """
    n = len(sigma)
    absperm = tuple(abs(v) for v in sigma)
    exc = fix = single = 0
    for i, v in enumerate(sigma, start=1):
        if sigma[abs(v) - 1] > v:
            exc += 1
        if v == i:
            fix += 1
        elif v == -i:
            single += 1
    drop = sum(1 for v in sigma if sigma[abs(v) - 1] < v)
    return SignedStats(wexc=exc + single, exc_B=exc, drop_B=drop, fix_B=fix,
                       single=single, cyc_B=cycle_count(absperm))


# ---------------------------------------------------------------------------
# Inversion sequences
# ---------------------------------------------------------------------------

def to_inversion_sequence(pi: Permutation) -> InversionSequence:
    """e_i = #{j < i : pi(j) > pi(i)}."""
    n = len(pi)
    return tuple(sum(1 for j in range(i) if pi[j] > pi[i]) for i in range(n))


def from_inversion_sequence(e: InversionSequence) -> Permutation:
    """Inverse of :func:`to_inversion_sequence`."""
    n = len(e)
    for i, v in enumerate(e):
        if not 0 <= v <= i:
            raise ValueError(f"entry {v} out of range at position {i + 1}")
    pool = sorted(range(1, n + 1), reverse=True)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        out[i] = pool.pop(e[i])
    return tuple(out)


def enumerate_inversion_sequences(n: int) -> Iterator[InversionSequence]:
    yield from itertools.product(*(range(i + 1) for i in range(n)))


# ---------------------------------------------------------------------------
# Polynomial families
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def eulerian_xy(n: int) -> MVPoly:
    """Bivariate Eulerian polynomial, sum of x^asc y^des over all of S_n.

    The excedance tally is homogenized to x^exc y^(n-1-exc) in the same pass
    and asserted equal, as a guard on the statistic implementations.  (The
    joint (exc, drop) distribution is a different polynomial: drop + exc
    varies with the number of fixed points, so only the equidistribution of
    exc with asc and des survives bivariately.)
    """
    by_asc_des: dict[tuple, int] = {}
    by_exc: dict[tuple, int] = {}
    for pi in enumerate_permutations(n):
        st = perm_stats(pi)
        k1 = (st.asc, st.des)
        k2 = (st.exc, n - 1 - st.exc)
        by_asc_des[k1] = by_asc_des.get(k1, 0) + 1
        by_exc[k2] = by_exc.get(k2, 0) + 1
    poly = MVPoly.from_exponents(by_asc_des, ("x", "y"))
    cross = MVPoly.from_exponents(by_exc, ("x", "y"))
    if poly != cross:
        raise AssertionError("asc/des and homogenized exc tallies disagree")
    return poly


@lru_cache(maxsize=None)
def eulerian_xpq(n: int) -> MVPoly:
    """The (p,q)-Eulerian polynomial, sum of x^exc p^fix q^cyc over S_n."""
    counts: dict[tuple, int] = {}
    for pi in enumerate_permutations(n):
        st = perm_stats(pi)
        key = (st.exc, st.fix, st.cyc)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "p", "q"))


@lru_cache(maxsize=None)
def derangement_poly(n: int) -> MVPoly:
    """d_n(x, q): sum of x^exc q^cyc over derangements of [n]."""
    counts: dict[tuple, int] = {}
    for pi in enumerate_derangements(n):
        st = perm_stats(pi)
        key = (st.exc, st.cyc)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "q"))


def dnk_table(n: int) -> dict[int, MVPoly]:
    """For each k, the cycle polynomial of cda-free derangements with exc = k."""
    counts: dict[int, dict[tuple, int]] = {}
    for pi in enumerate_derangements(n):
        st = perm_stats(pi)
        if st.cda:
            continue
        slot = counts.setdefault(st.exc, {})
        key = (st.cyc,)
        slot[key] = slot.get(key, 0) + 1
    return {k: MVPoly.from_exponents(v, ("q",)) for k, v in sorted(counts.items())}


@lru_cache(maxsize=None)
def b_poly(n: int) -> MVPoly:
    """Type-B (p,q)-Eulerian polynomial, sum of x^wexc p^fix q^cyc over B_n."""
    counts: dict[tuple, int] = {}
    for sigma in enumerate_signed(n):
        st = signed_stats(sigma)
        key = (st.wexc, st.fix_B, st.cyc_B)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, ("x", "p", "q"))


def type_b_derangement_poly(n: int) -> MVPoly:
    """d_n^B(x) = B_n(x, 0, 1)."""
    return b_poly(n).subst({"p": 0, "q": 1})


def colored_eulerian(n: int, r: int) -> MVPoly:
    """r-colored Eulerian polynomial r^n A_n(x, (1+(r-1)x)/r, 1)."""
    if r < 1:
        raise ValueError("r must be positive")
    x = MVPoly.var("x")
    binding = (MVPoly.const(1) + (r - 1) * x) * Fraction(1, r)
    return Fraction(r) ** n * eulerian_xpq(n).subst({"p": binding, "q": 1})


def derangement_count(n: int) -> int:
    """n! sum_i (-1)^i / i!, computed exactly."""
    total = sum(Fraction((-1) ** i, math.factorial(i)) for i in range(n + 1))
    value = math.factorial(n) * total
    return int(value)
