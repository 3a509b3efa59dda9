"""The identity-verification suite.

Every named check computes both sides of one identity by independent code
paths (enumeration against formula, recurrence, grammar iteration or
truncated series) and reports per-n outcomes.  Failing checks
always carry a witness: a polynomial difference plus, where it makes sense,
the first enumerated object whose statistics land in that difference.
Results are deterministic and independent of the parallelism degree.
"""
from __future__ import annotations

import concurrent.futures
import json
import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import grammar as gr
from . import matchings as mt
from . import perms as pm
from . import stirling as st
from . import words as wd
from .algebra import (MVPoly, NotHomogeneousError, NotSymmetricError,
                      TruncatedSeries, esym_assemble, esym_expand, gamma_expand,
                      parse_poly, rising_factorial, stirling1_unsigned)


class UnknownCheckIdError(Exception):
    pass


@dataclass
class CheckResult:
    id: str
    status: str               # pass | fail | skip
    max_n: int
    per_n: list               # [{"n": int, "status": str}, ...]
    witness: str | None
    ms: int

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "max_n": self.max_n,
                "per_n": self.per_n, "witness": self.witness, "ms": self.ms}


@dataclass(frozen=True)
class Check:
    id: str
    description: str
    default_max_n: int
    run: Callable  # (max_n, egf_order) -> list[(n, ok, witness|None)]
    uses_egf_order: bool = False


_REGISTRY: dict[str, Check] = {}


def _check(id: str, description: str, default_max_n: int, uses_egf_order: bool = False):
    def install(fn):
        _REGISTRY[id] = Check(id=id, description=description,
                              default_max_n=default_max_n, run=fn,
                              uses_egf_order=uses_egf_order)
        return fn
    return install


def registry() -> dict[str, Check]:
    return dict(_REGISTRY)


# ---------------------------------------------------------------------------
# Helpers shared by several checks
# ---------------------------------------------------------------------------

def _diff_witness(n: int, lhs: MVPoly, rhs: MVPoly, label: str = "") -> str:
    prefix = f"n={n}: " + (f"{label}: " if label else "")
    return f"{prefix}lhs - rhs = {(lhs - rhs).render()}"


def _first_word_in_diff(n: int, diff: MVPoly, key_of, names) -> str | None:
    """First word (stream order) whose statistic monomial appears in `diff`."""
    support = set(diff.terms)
    for w in wd.words(n):
        exps = key_of(w)
        if exps is None:
            continue
        mono = tuple(sorted((v, e) for v, e in zip(names, exps) if e))
        if mono in support:
            return wd.word_text(w)
    return None


def _word_poly(n: int, key_of, names) -> MVPoly:
    counts: dict[tuple, int] = {}
    for w in wd.words(n):
        key = key_of(w)
        if key is None:
            continue
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, names)


def _perm_quadruple_poly(n: int, names=("x", "y", "p", "q")) -> MVPoly:
    counts: dict[tuple, int] = {}
    for pi in pm.enumerate_permutations(n):
        s = pm.perm_stats(pi)
        key = (s.exc, s.drop, s.fix, s.cyc)
        counts[key] = counts.get(key, 0) + 1
    return MVPoly.from_exponents(counts, names)


def _exponent_transform(p: MVPoly, names, image) -> MVPoly:
    """Map each term by an exponent-vector transform; asserts nonnegativity.

    `image(exps)` returns {variable: exponent} for the transformed monomial.
    """
    out: dict[tuple, Fraction] = {}
    for mono, c in p.terms.items():
        exps = dict(mono)
        vec = tuple(exps.get(v, 0) for v in names)
        mapped = image(vec)
        for v, e in mapped.items():
            if e < 0:
                raise NotSymmetricError(
                    f"transform produced negative exponent {v}^{e} from {vec}")
        new = tuple(sorted((v, e) for v, e in mapped.items() if e))
        out[new] = out.get(new, Fraction(0)) + c
    return MVPoly(out)


_EGF_SAMPLES_A = {"x": Fraction(1, 2), "p": Fraction(1, 3),
                  "q": (Fraction(2), Fraction(3), Fraction(1, 2))}
_EGF_SAMPLES_M = {"x": Fraction(1, 2), "y": Fraction(1), "s": Fraction(1, 3),
                  "t": (Fraction(1), Fraction(1, 2))}


# ---------------------------------------------------------------------------
# Golden values quoted from the source listings
# ---------------------------------------------------------------------------

_GOLDEN_M = {
    1: "s*t",
    2: "s^2*t^2 + 2*t*x*y",
    3: "s^3*t^3 + 6*s*t^2*x*y + 4*t*x^2*y + 4*t*x*y^2",
}
_GOLDEN_C = {
    1: "y2",
    2: "(x1 + x2)*y1*y2 + x3*y2^2",
}
_GOLDEN_NCA = {
    1: "1",
    2: "x + y + z",
    3: "x^2 + 4*x*y + y^2 + 4*x*z + 4*y*z + z^2",
    4: "x^3 + 11*x^2*y + 11*x*y^2 + y^3 + 11*x^2*z + 36*x*y*z + 11*y^2*z"
       " + 11*x*z^2 + 11*y*z^2 + z^3",
}
_GOLDEN_DB = {1: "x", 2: "4*x + x^2", 3: "8*x + 20*x^2 + x^3"}
_GOLDEN_DG2 = {
    1: "w1",
    2: "w1^2 + 2*w2",
    3: "w1^3 + 8*w1*w2 + 6*w3",
    4: "w1^4 + 22*w1^2*w2 + 16*w2^2 + 42*w1*w3",
    5: "w1^5 + 52*w1^3*w2 + 136*w1*w2^2 + 192*w1^2*w3 + 180*w2*w3",
    6: "w1^6 + 114*w1^4*w2 + 720*w1^2*w2^2 + 272*w2^3 + 732*w1^3*w3"
       " + 2304*w1*w2*w3 + 540*w3^2",
}
_GOLDEN_XI = {1: "x", 2: "x^2 + 2*y"}
_GOLDEN_GAMMA = {1: "z", 2: "y*z", 3: "y^2*z + 2*x*z^2"}


@_check("GOLDEN", "printed polynomial listings reproduce exactly", 0)
def _run_golden(max_n, egf_order):
    out = []

    def compare(label, lhs, rhs):
        ok = lhs == rhs
        out.append((len(out) + 1, ok,
                    None if ok else f"{label}: got {lhs.render()}, want {rhs.render()}"))

    for n, text in _GOLDEN_M.items():
        compare(f"M_{n}", mt.m_poly(n), parse_poly(text))
    for n, text in _GOLDEN_C.items():
        compare(f"C_{n}", wd.c_poly(n), parse_poly(text))
    for n, text in _GOLDEN_NCA.items():
        compare(f"NCA_{n}", wd.nca_poly(n), parse_poly(text))
    for n, text in _GOLDEN_DB.items():
        compare(f"dB_{n}", pm.type_b_derangement_poly(n), parse_poly(text))
    g2 = gr.esym_w_grammar()
    a = MVPoly.var("a")
    for n, text in _GOLDEN_DG2.items():
        compare(f"DG2^{n}(a)", gr.d_iter(g2, a, n), a * parse_poly(text))
        compare(f"xi_{n}(w)",
                st.xi_table(n).poly(("w1", "w2", "w3")), parse_poly(text))
    for n, text in _GOLDEN_XI.items():
        compare(f"xi_{n}", st.xi_poly(n), parse_poly(text))
    for n, text in _GOLDEN_GAMMA.items():
        compare(f"gamma_{n}", st.gamma_poly(n), parse_poly(text))
    compare("Q_1", st.q_poly(1), parse_poly("x*y*z"))
    return out


# ---------------------------------------------------------------------------
# Permutation-side checks
# ---------------------------------------------------------------------------

@_check("A-EQUIDIST", "excedances are equidistributed with ascents and descents", 8)
def _run_a_equidist(max_n, egf_order):
    # The joint (exc, drop) polynomial differs from the (asc, des) one (fixed
    # points shift the degree), so the checkable content is the univariate
    # equidistribution, homogenized to degree n-1 on the excedance side.
    out = []
    for n in range(1, max_n + 1):
        lhs_counts: dict[tuple, int] = {}
        rhs_counts: dict[tuple, int] = {}
        for pi in pm.enumerate_permutations(n):
            s = pm.perm_stats(pi)
            lhs_counts[(s.exc, n - 1 - s.exc)] = lhs_counts.get((s.exc, n - 1 - s.exc), 0) + 1
            rhs_counts[(s.asc, s.des)] = rhs_counts.get((s.asc, s.des), 0) + 1
        lhs = MVPoly.from_exponents(lhs_counts, ("x", "y"))
        rhs = MVPoly.from_exponents(rhs_counts, ("x", "y"))
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("A-RISING", "cycle polynomial equals the rising factorial", 8)
def _run_a_rising(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = pm.eulerian_xpq(n).subst({"x": 1, "p": 1})
        rhs = rising_factorial(1, n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("A-EGF", "(p,q)-Eulerian EGF at sampled rational points", 8, uses_egf_order=True)
def _run_a_egf(max_n, egf_order):
    order = egf_order
    x, p = _EGF_SAMPLES_A["x"], _EGF_SAMPLES_A["p"]
    polys = [pm.eulerian_xpq(n) for n in range(order + 1)]
    out = []
    witnesses: dict[int, str] = {}
    ok_by_k = [True] * (order + 1)
    for q in _EGF_SAMPLES_A["q"]:
        values = [poly.evaluate({"x": x, "p": p, "q": q}) for poly in polys]
        lhs = TruncatedSeries.from_egf_values(values)
        numer = TruncatedSeries.exponential(p, order)
        denom = (TruncatedSeries.exponential(x, order)
                 - TruncatedSeries.exponential(1, order).scale(x)).scale(
                     1 / (1 - x))
        rhs = (numer * denom.inverse()).pow(q)
        for k in range(order + 1):
            if lhs.coeffs[k] != rhs.coeffs[k]:
                ok_by_k[k] = False
                witnesses.setdefault(
                    k, f"z^{k} at q={q}: enumerated {lhs.coeffs[k]}, series {rhs.coeffs[k]}")
    for k in range(order + 1):
        out.append((k, ok_by_k[k], witnesses.get(k)))
    return out


@_check("A-NEG", "q = -1 specializations collapse as stated", 8)
def _run_a_neg(max_n, egf_order):
    x = MVPoly.var("x")
    out = []
    for n in range(1, max_n + 1):
        a = pm.eulerian_xpq(n)
        lhs1 = a.subst({"p": 1, "q": -1})
        rhs1 = -((x - MVPoly.const(1)) ** (n - 1))
        lhs2 = a.subst({"p": 0, "q": -1})
        rhs2 = -sum((x ** k for k in range(1, n)), MVPoly.zero())
        ok = lhs1 == rhs1 and lhs2 == rhs2
        wit = None
        if not ok:
            wit = _diff_witness(n, lhs1, rhs1, "p=1") if lhs1 != rhs1 \
                else _diff_witness(n, lhs2, rhs2, "p=0")
        out.append((n, ok, wit))
    return out


# ---------------------------------------------------------------------------
# Matching polynomial checks
# ---------------------------------------------------------------------------

@_check("M-MAIN", "matching quadruple statistic matches the permutation quadruple", 7)
def _run_m_main(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        m = mt.m_poly(n)
        quad = _perm_quadruple_poly(n)
        perm_side = quad.subst({
            "x": 2 * MVPoly.var("x"), "y": 2 * MVPoly.var("y"),
            "p": 2 * MVPoly.var("s"), "q": Fraction(1, 2) * MVPoly.var("t")})
        ok = m == perm_side
        wit = None if ok else _diff_witness(n, m, perm_side, "quadruple")
        if ok:
            a = pm.eulerian_xpq(n) * 2 ** n
            el_side = m.subst({"y": 1, "s": MVPoly.var("p"),
                               "t": 2 * MVPoly.var("q")})
            ol_side = m.subst({"x": 1, "y": MVPoly.var("x"),
                               "s": MVPoly.var("p"), "t": 2 * MVPoly.var("q")})
            if el_side != a:
                ok, wit = False, _diff_witness(n, el_side, a, "elblock form")
            elif ol_side != a:
                ok, wit = False, _diff_witness(n, ol_side, a, "olblock form")
        out.append((n, ok, wit))
    return out


@_check("M-SYM", "M_n is symmetric in x and y", 7)
def _run_m_sym(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        m = mt.m_poly(n)
        swapped = m.subst({"x": MVPoly.var("y"), "y": MVPoly.var("x")})
        ok = m == swapped
        out.append((n, ok, None if ok else _diff_witness(n, m, swapped)))
    return out


@_check("M-EGF", "matching polynomial EGF at sampled rational points", 8, uses_egf_order=True)
def _run_m_egf(max_n, egf_order):
    order = egf_order
    x, y, s = (_EGF_SAMPLES_M["x"], _EGF_SAMPLES_M["y"], _EGF_SAMPLES_M["s"])
    polys = [mt.m_poly(n) for n in range(order + 1)]
    witnesses: dict[int, str] = {}
    ok_by_k = [True] * (order + 1)
    for t in _EGF_SAMPLES_M["t"]:
        values = [poly.evaluate({"x": x, "y": y, "s": s, "t": t}) for poly in polys]
        lhs = TruncatedSeries.from_egf_values(values)
        numer = TruncatedSeries.exponential(2 * s, order)
        denom = (TruncatedSeries.exponential(2 * x, order).scale(y)
                 - TruncatedSeries.exponential(2 * y, order).scale(x)).scale(
                     1 / (y - x))
        rhs = (numer * denom.inverse()).pow(Fraction(t, 2))
        for k in range(order + 1):
            if lhs.coeffs[k] != rhs.coeffs[k]:
                ok_by_k[k] = False
                witnesses.setdefault(
                    k, f"z^{k} at t={t}: enumerated {lhs.coeffs[k]}, series {rhs.coeffs[k]}")
    return [(k, ok_by_k[k], witnesses.get(k)) for k in range(order + 1)]


@_check("TRACE-RISING", "trace distribution is the step-2 rising factorial", 7)
def _run_trace_rising(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = mt.trace_distribution(n)
        rhs = rising_factorial(2, n)
        alt = MVPoly.from_exponents(
            {(k,): 2 ** (n - k) * stirling1_unsigned(n, k) for k in range(1, n + 1)},
            ("q",))
        ok = lhs == rhs and rhs == alt
        wit = None
        if lhs != rhs:
            wit = _diff_witness(n, lhs, rhs, "enumeration vs product")
        elif rhs != alt:
            wit = _diff_witness(n, rhs, alt, "product vs Stirling sum")
        out.append((n, ok, wit))
    return out


@_check("STIRLING1-ID", "2^(n-k) weighted Stirling-1 row equals the step-2 rising factorial", 12)
def _run_stirling1(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = MVPoly.from_exponents(
            {(k,): 2 ** (n - k) * stirling1_unsigned(n, k) for k in range(1, n + 1)},
            ("q",))
        rhs = rising_factorial(2, n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


def _m_marginal(n: int) -> MVPoly:
    """sum over matchings of x^elblock p^fixb q^trace."""
    return mt.m_poly(n).subst({"y": 1, "s": MVPoly.var("p"), "t": MVPoly.var("q")})


@_check("CONV", "2^n A_n(x,p,q) is the binomial convolution of matching marginals", 6)
def _run_conv(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = pm.eulerian_xpq(n) * 2 ** n
        rhs = MVPoly.zero()
        for k in range(n + 1):
            rhs = rhs + math.comb(n, k) * _m_marginal(k) * _m_marginal(n - k)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("COR2", "trace-weight -2 specializations collapse as stated", 6)
def _run_cor2(max_n, egf_order):
    x = MVPoly.var("x")
    out = []
    for n in range(1, max_n + 1):
        m = mt.m_poly(n)
        lhs1 = m.subst({"y": 1, "s": 1, "t": -2})
        rhs1 = -(2 ** n) * (x - MVPoly.const(1)) ** (n - 1)
        lhs2 = m.subst({"y": 1, "s": 0, "t": -2})
        rhs2 = -(2 ** n) * sum((x ** k for k in range(1, n)), MVPoly.zero())
        ok = lhs1 == rhs1 and lhs2 == rhs2
        wit = None
        if lhs1 != rhs1:
            wit = _diff_witness(n, lhs1, rhs1, "all matchings")
        elif lhs2 != rhs2:
            wit = _diff_witness(n, lhs2, rhs2, "fixb=0")
        out.append((n, ok, wit))
    return out


@_check("M-GAMMA", "s-stratified gamma expansion of M_n exists with the stated positivity", 6)
def _run_m_gamma(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        m = mt.m_poly(n)
        ok, wit = True, None
        by_s = m.coefficients_in(("s",))
        reassembled = MVPoly.zero()
        for (i,), slice_poly in sorted(by_s.items()):
            try:
                coeffs = gamma_expand(slice_poly, "x", "y")
            except (NotSymmetricError, NotHomogeneousError) as exc:
                ok, wit = False, f"n={n}: s^{i} slice: {exc}"
                break
            for j, g in coeffs:
                # g = 2^n gamma_{n,i,j}(t/2); recover gamma and check it
                gamma_t = g.subst({"t": 2 * MVPoly.var("t")}) * Fraction(1, 2 ** n)
                bad = [c for c in gamma_t.terms.values()
                       if c < 0 or c.denominator != 1]
                if bad:
                    ok = False
                    wit = (f"n={n}: gamma[{i},{j}](t) = {gamma_t.render()} "
                           "is not a nonnegative integer polynomial")
                    break
                reassembled = reassembled + (
                    MVPoly.var("s") ** i * g
                    * (MVPoly.var("x") * MVPoly.var("y")) ** j
                    * (MVPoly.var("x") + MVPoly.var("y")) ** (n - i - 2 * j))
            if not ok:
                break
        if ok and reassembled != m:
            ok, wit = False, _diff_witness(n, reassembled, m, "reassembly")
        out.append((n, ok, wit))
    return out


@_check("DER-COUNT", "derangement counts on both sides of the correspondence", 7)
def _run_der_count(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        matching_side = mt.m_poly(n).evaluate(
            {"x": 1, "y": 1, "s": 0, "t": 2})
        rhs = sum(Fraction((-1) ** i, math.factorial(i)) for i in range(n + 1)) \
            * (2 ** n * math.factorial(n))
        derangements = sum(1 for _ in pm.enumerate_derangements(n))
        ok = matching_side == rhs and derangements == pm.derangement_count(n)
        wit = None
        if matching_side != rhs:
            wit = f"n={n}: fixb-free weight {matching_side} != {rhs}"
        elif not ok:
            wit = f"n={n}: {derangements} derangements, formula {pm.derangement_count(n)}"
        out.append((n, ok, wit))
    return out


@_check("DNK", "derangement cycle polynomial identities (cda-free expansion)", 6)
def _run_dnk(max_n, egf_order):
    x = MVPoly.var("x")
    out = []
    for n in range(1, max_n + 1):
        d = pm.derangement_poly(n)
        table = pm.dnk_table(n)
        bad_keys = [k for k in table if not 1 <= k <= n // 2]
        if bad_keys:
            out.append((n, False,
                        f"n={n}: cda-free excedances {sorted(bad_keys)} "
                        f"fall outside 1..{n // 2}"))
            continue
        rhs = MVPoly.zero()
        for k, qpoly in table.items():
            rhs = rhs + qpoly * x ** k * (MVPoly.const(1) + x) ** (n - 2 * k)
        ok = d == rhs
        wit = None if ok else _diff_witness(n, d, rhs, "Shin-Zeng expansion")
        if ok:
            matching_side = mt.m_poly(n).subst({"y": 1, "s": 0, "t": MVPoly.var("q")})
            scaled = d.subst({"q": Fraction(1, 2) * MVPoly.var("q")}) * 2 ** n
            weighted = MVPoly.zero()
            for k, qpoly in table.items():
                lifted = MVPoly({mono: c * 2 ** (n - dict(mono).get("q", 0))
                                 for mono, c in qpoly.terms.items()})
                weighted = weighted + lifted * x ** k * (MVPoly.const(1) + x) ** (n - 2 * k)
            if matching_side != scaled:
                ok, wit = False, _diff_witness(n, matching_side, scaled, "matching vs 2^n d_n(x,q/2)")
            elif matching_side != weighted:
                ok, wit = False, _diff_witness(n, matching_side, weighted, "matching vs weighted expansion")
        out.append((n, ok, wit))
    return out


_B_NOTE = ("note: this check arbitrates the |sigma|-cycle convention for "
           "cyc over B_n; a failure may indicate a definitional mismatch "
           "rather than a code bug")


@_check("B-MAIN", "type-B Eulerian polynomial equals both stated forms", 5)
def _run_b_main(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        b = pm.b_poly(n)
        half = Fraction(1, 2) * (MVPoly.var("p") + MVPoly.var("x"))
        via_a = pm.eulerian_xpq(n).subst({"p": half}) * 2 ** n
        via_m = mt.m_poly(n).subst(
            {"y": 1, "s": half, "t": 2 * MVPoly.var("q")})
        ok = b == via_a and b == via_m
        wit = None
        if b != via_a:
            wit = _diff_witness(n, b, via_a, "vs 2^n A_n(x,(p+x)/2,q)") + "; " + _B_NOTE
        elif b != via_m:
            wit = _diff_witness(n, b, via_m, "vs matching form") + "; " + _B_NOTE
        out.append((n, ok, wit))
    return out


@_check("B-DUAL", "dual convolution for B_n(x,1,q) and the reciprocal transform", 5)
def _run_b_dual(max_n, egf_order):
    out = []

    def m_both(k):  # x^(elblock+fixb) q^trace
        return mt.m_poly(k).subst({"y": 1, "s": MVPoly.var("x"), "t": MVPoly.var("q")})

    def m_tilde(k):  # x^elblock q^trace
        return mt.m_poly(k).subst({"y": 1, "s": 1, "t": MVPoly.var("q")})

    for n in range(1, max_n + 1):
        lhs = pm.b_poly(n).subst({"p": 1})
        rhs = MVPoly.zero()
        for k in range(n + 1):
            rhs = rhs + math.comb(n, k) * m_both(k) * m_tilde(n - k)
        ok = lhs == rhs
        wit = None if ok else _diff_witness(n, lhs, rhs, "convolution")
        if ok:
            reciprocal = _exponent_transform(
                m_tilde(n), ("x", "q"),
                lambda vec: {"x": n - vec[0], "q": vec[1]})
            if m_both(n) != reciprocal:
                ok = False
                wit = _diff_witness(n, m_both(n), reciprocal, "x^n M~(1/x,q)")
        out.append((n, ok, wit))
    return out


@_check("COLORED", "r-colored Eulerian polynomials specialize to types A and B", 6)
def _run_colored(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        ok, wit = True, None
        type_a = pm.colored_eulerian(n, 1)
        a_n = pm.eulerian_xy(n).subst({"y": 1})
        if type_a != a_n:
            ok, wit = False, _diff_witness(n, type_a, a_n, "r=1")
        elif n <= 5:
            type_b = pm.colored_eulerian(n, 2)
            b_n = pm.b_poly(n).subst({"p": 1, "q": 1})
            if type_b != b_n:
                ok, wit = False, _diff_witness(n, type_b, b_n, "r=2")
        out.append((n, ok, wit))
    return out


@_check("CALLAN-EGF", "even-to-odd-free matchings have EGF sqrt(e^z/(2-e^z))", 8,
        uses_egf_order=True)
def _run_callan(max_n, egf_order):
    order = egf_order
    values = [mt.count_even_to_odd_free(n) for n in range(order + 1)]
    lhs = TruncatedSeries.from_egf_values(values)
    ez = TruncatedSeries.exponential(1, order)
    denom = TruncatedSeries.one(order).scale(2) - ez
    rhs = (ez * denom.inverse()).pow(Fraction(1, 2))
    out = []
    for k in range(order + 1):
        ok = lhs.coeffs[k] == rhs.coeffs[k]
        out.append((k, ok, None if ok else
                    f"z^{k}: enumerated {lhs.coeffs[k]}, series {rhs.coeffs[k]}"))
    return out


# ---------------------------------------------------------------------------
# Matching permutation checks
# ---------------------------------------------------------------------------

@_check("MP-BIJ", "matching/word bijection round-trips and transfers statistics", 6)
def _run_mp_bij(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        ok, wit = True, None
        for m in mt.matchings(n):
            w = wd.from_matching(m)
            try:
                wd.validate_word(w)
            except ValueError as exc:
                ok, wit = False, f"n={n}: {mt.arcs_text(m)}: invalid word ({exc})"
                break
            if wd.to_matching(w) != m:
                ok, wit = False, f"n={n}: round-trip failed on {mt.arcs_text(m)}"
                break
            ps = mt.pairwise_stats(m)
            nc = wd.neighbor_classify(w)
            transferred = (len(nc.lne), len(nc.lcr), len(nc.nal),
                           len(nc.rrp), len(nc.lrp))
            if transferred != (ps.lne, ps.lcr, ps.nal, ps.rrp, ps.lrp):
                ok, wit = False, (f"n={n}: neighbor stats differ on "
                                  f"{mt.arcs_text(m)}: word {transferred}, "
                                  f"matching {(ps.lne, ps.lcr, ps.nal, ps.rrp, ps.lrp)}")
                break
            ws = wd.word_stats(w)
            if (ws.inv, ws.coinv, ws.rank) != (ps.ne, ps.cr, ps.al):
                ok, wit = False, (f"n={n}: inv/coinv/rank differ on "
                                  f"{mt.arcs_text(m)}: word "
                                  f"{(ws.inv, ws.coinv, ws.rank)}, matching "
                                  f"{(ps.ne, ps.cr, ps.al)}")
                break
        out.append((n, ok, wit))
    return out


@_check("I-STATS", "I_n(x,y,q) equals the inv/coinv/rank word polynomial", 6)
def _run_i_stats(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = mt.i_poly(n)

        def key(w):
            s = wd.word_stats(w)
            return (s.inv, s.coinv, s.rank)

        rhs = _word_poly(n, key, ("x", "y", "q"))
        ok = lhs == rhs
        wit = None
        if not ok:
            word = _first_word_in_diff(n, lhs - rhs, key, ("x", "y", "q"))
            wit = _diff_witness(n, lhs, rhs) + (f"; first word in diff: {word}" if word else "")
        out.append((n, ok, wit))
    return out


@_check("KZ-SYM", "crossing/nesting symmetry with alignments (Kasraoui-Zeng)", 6)
def _run_kz(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        p = mt.i_poly(n)
        swapped = p.subst({"x": MVPoly.var("y"), "y": MVPoly.var("x")})
        ok = p == swapped
        out.append((n, ok, None if ok else _diff_witness(n, p, swapped)))
    return out


@_check("KLAZAR-SYM", "joint crossing/nesting distribution is symmetric (Klazar)", 6)
def _run_klazar(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        counts: dict[tuple, int] = {}
        for m in mt.matchings(n):
            ps = mt.pairwise_stats(m)
            counts[(ps.cr, ps.ne)] = counts.get((ps.cr, ps.ne), 0) + 1
        p = MVPoly.from_exponents(counts, ("x", "y"))
        swapped = p.subst({"x": MVPoly.var("y"), "y": MVPoly.var("x")})
        ok = p == swapped
        out.append((n, ok, None if ok else _diff_witness(n, p, swapped)))
    return out


@_check("C-GRAMMAR", "five-variable grammar generates the neighbor polynomials", 6)
def _run_c_grammar(max_n, egf_order):
    g = gr.neighbor_grammar()
    seed = MVPoly.var("I") * MVPoly.var("y2") * MVPoly.var("E")
    ie = MVPoly.var("I") * MVPoly.var("E")
    out = []
    for n in range(1, max_n + 1):
        lhs = gr.d_iter(g, seed, n)
        rhs = ie * wd.c_poly(n + 1)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("C-EPOS", "xi expansion of C_(n+1) and e-positivity of the NCA polynomials", 6)
def _run_c_epos(max_n, egf_order):
    x1, x2, x3 = MVPoly.var("x1"), MVPoly.var("x2"), MVPoly.var("x3")
    y1, y2 = MVPoly.var("y1"), MVPoly.var("y2")
    w1 = x1 * y1 + x2 * y1 + x3 * y2
    w2 = x1 * x2 * y1 ** 2 + x1 * x3 * y1 * y2 + x2 * x3 * y1 * y2
    w3 = x1 * x2 * x3 * y1 ** 2 * y2
    out = []
    for n in range(1, max_n + 1):
        ok, wit = True, None
        nca = wd.nca_poly(n)
        ncr = wd.ncr_poly(n)
        if nca != ncr:
            ok, wit = False, _diff_witness(n, nca, ncr, "NCA vs NCR")
        if ok and n >= 2:
            try:
                coeffs = esym_expand(nca, ("x", "y", "z"))
            except NotSymmetricError as exc:
                ok, wit = False, f"n={n}: NCA not e-expandable: {exc}"
            else:
                expected = {k: Fraction(v) for k, v in st.xi_table(n - 1).entries.items()}
                got = dict(coeffs)
                if got != expected:
                    ok, wit = False, f"n={n}: e-coefficients {got} != xi table {expected}"
        if ok and n + 1 <= 6:
            lhs = wd.c_poly(n + 1)
            rhs = y2 * st.xi_poly(n).subst({"x": w1, "y": w2, "z": w3})
            if lhs != rhs:
                ok, wit = False, _diff_witness(n, lhs, rhs, "C_(n+1) expansion")
        out.append((n, ok, wit))
    return out


# ---------------------------------------------------------------------------
# Tree and table checks
# ---------------------------------------------------------------------------

@_check("XI-TREE", "xi table equals the 0-1-2-3 increasing plane tree census", 7)
def _run_xi_tree(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = st.xi_table(n)
        rhs = st.degree_census(n + 1, 3)
        ok = lhs.entries == rhs.entries
        out.append((n, ok, None if ok else
                    f"n={n}: table {lhs.entries} != census {rhs.entries}"))
    return out


@_check("GAMMA-TREE", "gamma table equals the leaf/degree census", 7)
def _run_gamma_tree(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        lhs = st.gamma_table(n)
        rhs = st.gamma_keyed_census(n)
        ok = lhs.entries == rhs.entries
        out.append((n, ok, None if ok else
                    f"n={n}: table {lhs.entries} != census {rhs.entries}"))
    return out


@_check("XI-GAMMA", "index bijection between the xi and gamma tables", 7)
def _run_xi_gamma(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        xi = st.xi_table(n).entries
        gamma = st.gamma_table(n + 1).entries
        mapped = {}
        for (i, j, k), c in xi.items():
            mapped[(j, i, n + 1 - i - j - k)] = c
        ok = mapped == gamma
        out.append((n, ok, None if ok else
                    f"n={n}: remapped xi {mapped} != gamma {gamma}"))
    return out


# ---------------------------------------------------------------------------
# Stirling permutation checks
# ---------------------------------------------------------------------------

@_check("Q-DUMONT", "Dumont's recurrence for Q_n(x,y,z)", 6)
def _run_q_dumont(max_n, egf_order):
    xyz = MVPoly.var("x") * MVPoly.var("y") * MVPoly.var("z")
    out = []
    for n in range(1, max_n + 1):
        q = st.q_poly(n)
        rhs = xyz * (q.partial("x") + q.partial("y") + q.partial("z"))
        lhs = st.q_poly(n + 1)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("Q-SYM", "Q_n(x,y,z) is symmetric in all three variables", 6)
def _run_q_sym(max_n, egf_order):
    import itertools as it
    out = []
    for n in range(1, max_n + 1):
        q = st.q_poly(n)
        ok, wit = True, None
        for perm in it.permutations(("x", "y", "z")):
            image = q.subst({v: MVPoly.var(w) for v, w in zip(("x", "y", "z"), perm)})
            if image != q:
                ok = False
                wit = _diff_witness(n, q, image, f"permutation {perm}")
                break
        out.append((n, ok, wit))
    return out


@_check("Q-GRAMMAR", "the xyz grammar iterates to Q_n(x,y,z)", 7)
def _run_q_grammar(max_n, egf_order):
    g = gr.stirling_word_grammar()
    out = []
    for n in range(1, max_n + 1):
        lhs = gr.d_iter(g, MVPoly.var("x"), n)
        rhs = st.q_poly(n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("Q-CHEN22", "Q_n in the elementary symmetric basis, table and grammar sides", 6)
def _run_q_chen22(max_n, egf_order):
    h = gr.esym_uvw_grammar()
    out = []
    for n in range(1, max_n + 1):
        q = st.q_poly(n)
        table_side = esym_assemble(
            [(k, Fraction(v)) for k, v in sorted(st.gamma_table(n).entries.items())],
            ("x", "y", "z"))
        ok = q == table_side
        wit = None if ok else _diff_witness(n, q, table_side, "gamma table")
        if ok:
            e1, e2, e3 = (MVPoly.var("x") + MVPoly.var("y") + MVPoly.var("z"),
                          MVPoly.var("x") * MVPoly.var("y")
                          + MVPoly.var("y") * MVPoly.var("z")
                          + MVPoly.var("z") * MVPoly.var("x"),
                          MVPoly.var("x") * MVPoly.var("y") * MVPoly.var("z"))
            grammar_side = gr.d_iter(h, MVPoly.var("w"), n - 1).subst(
                {"u": e1, "v": e2, "w": e3})
            if q != grammar_side:
                ok, wit = False, _diff_witness(n, q, grammar_side, "grammar H")
        out.append((n, ok, wit))
    return out


@_check("C-Q-TRANSFORM", "neighbor polynomials are monomial transforms of Q_n", 6)
def _run_cq_transform(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        q = st.q_poly(n)
        ok, wit = True, None
        try:
            full = _exponent_transform(
                q, ("x", "y", "z"),
                lambda v: {"x1": n - v[0], "x2": n - v[1], "x3": n - v[2],
                           "y1": 2 * n - v[0] - v[1], "y2": n + 1 - v[2]})
            nca = _exponent_transform(
                q, ("x", "y", "z"),
                lambda v: {"x": n - v[0], "y": n - v[1], "z": n - v[2]})
            lnelcrlrp = _exponent_transform(
                q, ("x", "y", "z"),
                lambda v: {"x1": n - v[0], "x2": n - v[1], "y2": n + 1 - v[2]})
            rrplrp = _exponent_transform(
                q, ("x", "y", "z"),
                lambda v: {"y1": 2 * n - v[0] - v[1], "y2": n + 1 - v[2]})
        except NotSymmetricError as exc:
            out.append((n, False, f"n={n}: {exc}"))
            continue
        cases = [
            ("C_n", wd.c_poly(n), full),
            ("NCA", wd.nca_poly(n), nca),
            ("lne/lcr/lrp", wd.c_poly(n).subst({"x3": 1, "y1": 1}), lnelcrlrp),
            ("rrp/lrp", wd.c_poly(n).subst({"x1": 1, "x2": 1, "x3": 1}), rrplrp),
        ]
        for label, lhs, rhs in cases:
            if lhs != rhs:
                ok, wit = False, _diff_witness(n, lhs, rhs, label)
                break
        out.append((n, ok, wit))
    return out


@_check("Q-LNE", "left-nesting distribution follows the second-order Eulerian triangle", 7)
def _run_q_lne(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        counts: dict[tuple, int] = {}
        for m in mt.matchings(n):
            k = (n - mt.pairwise_stats(m).lne,)
            counts[k] = counts.get(k, 0) + 1
        lhs = MVPoly.from_exponents(counts, ("x",))
        rhs = st.q_univariate(n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("Q-LRP", "LR-pair distribution follows the second-order Eulerian triangle", 7)
def _run_q_lrp(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        counts: dict[tuple, int] = {}
        for m in mt.matchings(n):
            k = (n + 1 - mt.pairwise_stats(m).lrp,)
            counts[k] = counts.get(k, 0) + 1
        lhs = MVPoly.from_exponents(counts, ("x",))
        rhs = st.q_univariate(n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("NCA-RECU", "first-order recurrence for the NCA polynomials", 6)
def _run_nca_recu(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        ok, wit = True, None
        if n in _GOLDEN_NCA:
            golden = parse_poly(_GOLDEN_NCA[n])
            if wd.nca_poly(n) != golden:
                ok, wit = False, _diff_witness(n, wd.nca_poly(n), golden, "golden")
        if ok:
            p = wd.nca_poly(n)
            rhs = n * (MVPoly.var("x") + MVPoly.var("y") + MVPoly.var("z")) * p \
                - (MVPoly.var("x") ** 2 * p.partial("x")
                   + MVPoly.var("y") ** 2 * p.partial("y")
                   + MVPoly.var("z") ** 2 * p.partial("z"))
            lhs = wd.nca_poly(n + 1)
            if lhs != rhs:
                ok, wit = False, _diff_witness(n, lhs, rhs, "recurrence")
        out.append((n, ok, wit))
    return out


@_check("SIX-EULERIAN", "all six restricted neighbor sums give A_n(x,y)", 6)
def _run_six_eulerian(max_n, egf_order):
    names = ("x", "y")
    cases = [
        ("nal=0: x^lne y^lcr", lambda c: (len(c.lne), len(c.lcr)) if not c.nal else None),
        ("lcr=0: x^lne y^nal", lambda c: (len(c.lne), len(c.nal)) if not c.lcr else None),
        ("lne=0: x^lcr y^nal", lambda c: (len(c.lcr), len(c.nal)) if not c.lne else None),
        ("lne=0: x^lcr y^(lrp-1)", lambda c: (len(c.lcr), len(c.lrp) - 1) if not c.lne else None),
        ("lcr=0: x^lne y^(lrp-1)", lambda c: (len(c.lne), len(c.lrp) - 1) if not c.lcr else None),
        ("lrp=1: x^lne y^lcr", lambda c: (len(c.lne), len(c.lcr)) if len(c.lrp) == 1 else None),
    ]
    out = []
    for n in range(1, max_n + 1):
        target = pm.eulerian_xy(n)
        ok, wit = True, None
        for label, selector in cases:
            key_of = (lambda sel: lambda w: sel(wd.neighbor_classify(w)))(selector)
            poly = _word_poly(n, key_of, names)
            if poly != target:
                ok = False
                word = _first_word_in_diff(n, poly - target, key_of, names)
                wit = (_diff_witness(n, poly, target, label)
                       + (f"; first word in diff: {word}" if word else ""))
                break
        out.append((n, ok, wit))
    return out


# ---------------------------------------------------------------------------
# Counting checks
# ---------------------------------------------------------------------------

@_check("COUNT-CATALAN", "noncrossing matchings are counted by Catalan numbers", 7)
def _run_catalan(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        count = sum(1 for m in mt.matchings(n) if mt.pairwise_stats(m).cr == 0)
        catalan = math.comb(2 * n, n) // (n + 1)
        ok = count == catalan
        out.append((n, ok, None if ok else f"n={n}: {count} != C_n = {catalan}"))
    return out


@_check("COUNT-NARAYANA", "both Narayana refinements hold", 7)
def _run_narayana(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        noncrossing: dict[int, int] = {}
        nonnesting: dict[int, int] = {}
        for m in mt.matchings(n):
            ps = mt.pairwise_stats(m)
            if ps.cr == 0:
                k = sum(1 for a, b in m if b == a + 1)
                noncrossing[k] = noncrossing.get(k, 0) + 1
            if ps.ne == 0:
                nonnesting[ps.lrp] = nonnesting.get(ps.lrp, 0) + 1
        expected = {k: math.comb(n, k - 1) * math.comb(n, k) // n
                    for k in range(1, n + 1)}
        expected = {k: v for k, v in expected.items() if v}
        ok = noncrossing == expected and nonnesting == expected
        wit = None
        if noncrossing != expected:
            wit = f"n={n}: adjacent-block profile {noncrossing} != {expected}"
        elif not ok:
            wit = f"n={n}: LR-pair profile {nonnesting} != {expected}"
        out.append((n, ok, wit))
    return out


@_check("COUNT-LNE-FACT", "matchings without left-nestings are counted by n!", 7)
def _run_lne_fact(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        count = sum(1 for m in mt.matchings(n) if mt.pairwise_stats(m).lne == 0)
        ok = count == math.factorial(n)
        out.append((n, ok, None if ok else f"n={n}: {count} != n! = {math.factorial(n)}"))
    return out


@_check("FOATA-GAMMA", "gamma coefficients of A_n(x,y) count both stated objects", 7)
def _run_foata(max_n, egf_order):
    out = []
    for n in range(1, max_n + 1):
        coeffs = dict(gamma_expand(pm.eulerian_xy(n), "x", "y"))
        gamma = {j: int(p.constant_term()) for j, p in coeffs.items()}
        alpha: dict[int, int] = {}
        for pi in pm.enumerate_permutations(n):
            s = pm.perm_stats(pi)
            if s.dd == 0:
                alpha[s.des] = alpha.get(s.des, 0) + 1
        trees: dict[int, int] = {}
        for (d1, d2, d3), c in st.degree_census(n, 2).entries.items():
            trees[d2] = trees.get(d2, 0) + c
        ok = gamma == alpha and gamma == trees
        wit = None
        if gamma != alpha:
            wit = f"n={n}: gamma {gamma} != no-double-descent counts {alpha}"
        elif not ok:
            wit = f"n={n}: gamma {gamma} != 0-1-2 tree census {trees}"
        out.append((n, ok, wit))
    return out


# ---------------------------------------------------------------------------
# Grammar-vs-enumeration checks
# ---------------------------------------------------------------------------

@_check("G-EXC", "quadruple-statistic grammar matches enumeration over S_n", 7)
def _run_g_exc(max_n, egf_order):
    g = gr.quadruple_statistic_grammar()
    seed = MVPoly.var("I")
    out = []
    for n in range(1, max_n + 1):
        lhs = gr.d_iter(g, seed, n)
        rhs = seed * _perm_quadruple_poly(n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("G-MATCH", "matching-statistic grammar matches enumeration over M_n", 7)
def _run_g_match(max_n, egf_order):
    g = gr.matching_statistic_grammar()
    seed = MVPoly.var("J")
    out = []
    for n in range(1, max_n + 1):
        lhs = gr.d_iter(g, seed, n)
        rhs = seed * mt.m_poly(n).subst({"x": MVPoly.var("a"), "y": MVPoly.var("b")})
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("G-CHANGE", "change of variables carries the S_n grammar to the matching grammar", 6)
def _run_g_change(max_n, egf_order):
    g = gr.quadruple_statistic_grammar()
    g1 = gr.matching_statistic_grammar()
    binding = {"I": MVPoly.var("J"), "p": 2 * MVPoly.var("s"),
               "q": Fraction(1, 2) * MVPoly.var("t"),
               "x": 2 * MVPoly.var("a"), "y": 2 * MVPoly.var("b")}
    out = []
    for n in range(1, max_n + 1):
        lhs = gr.d_iter(g, MVPoly.var("I"), n).subst(binding)
        rhs = gr.d_iter(g1, MVPoly.var("J"), n)
        ok = lhs == rhs
        out.append((n, ok, None if ok else _diff_witness(n, lhs, rhs)))
    return out


@_check("G-DUMONT", "Dumont's grammar iterates to a b^n A_n(a/b)", 8)
def _run_g_dumont(max_n, egf_order):
    g = gr.dumont_grammar()
    a, b = MVPoly.var("a"), MVPoly.var("b")
    out = []
    for n in range(1, max_n + 1):
        da = gr.d_iter(g, a, n)
        db = gr.d_iter(g, b, n)
        eulerian = pm.eulerian_xy(n).subst({"y": 1})
        # a b^n A_n(a/b): the x^k term of A_n becomes a^(k+1) b^(n-k)
        rhs = a * sum((c * MVPoly.var("a", dict(m).get("x", 0))
                       * MVPoly.var("b", n - dict(m).get("x", 0))
                       for m, c in eulerian.terms.items()), MVPoly.zero())
        ok = da == db == rhs
        wit = None
        if da != db:
            wit = _diff_witness(n, da, db, "D^n(a) vs D^n(b)")
        elif da != rhs:
            wit = _diff_witness(n, da, rhs, "vs a b^n A_n(a/b)")
        out.append((n, ok, wit))
    return out


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

_ORDER = [
    "GOLDEN",
    "A-EQUIDIST", "A-RISING", "A-EGF", "A-NEG",
    "M-MAIN", "M-SYM", "M-EGF", "TRACE-RISING", "STIRLING1-ID",
    "CONV", "COR2", "M-GAMMA", "DER-COUNT", "DNK",
    "B-MAIN", "B-DUAL", "COLORED", "CALLAN-EGF",
    "MP-BIJ", "I-STATS", "KZ-SYM", "KLAZAR-SYM",
    "C-GRAMMAR", "C-EPOS", "XI-TREE", "GAMMA-TREE", "XI-GAMMA",
    "Q-DUMONT", "Q-SYM", "Q-GRAMMAR", "Q-CHEN22", "C-Q-TRANSFORM",
    "Q-LNE", "Q-LRP", "NCA-RECU", "SIX-EULERIAN",
    "COUNT-CATALAN", "COUNT-NARAYANA", "COUNT-LNE-FACT", "FOATA-GAMMA",
    "G-EXC", "G-MATCH", "G-CHANGE", "G-DUMONT",
]

DEFAULT_EGF_ORDER = 8


def check_ids() -> list[str]:
    return list(_ORDER)


def _run_single(check_id: str, max_n: int | None, egf_order: int) -> CheckResult:
    check = _REGISTRY[check_id]
    effective = check.default_max_n if max_n is None else max_n
    started = time.monotonic()
    try:
        if check.uses_egf_order:
            rows = check.run(effective, egf_order)
            reported_max = egf_order
        elif check.id == "GOLDEN":
            rows = check.run(effective, egf_order)
            reported_max = len(rows)
        else:
            if effective < 1:
                return CheckResult(id=check_id, status="skip", max_n=effective,
                                   per_n=[], witness=None, ms=0)
            rows = check.run(effective, egf_order)
            reported_max = effective
    except Exception as exc:  # a crashing side counts as a failure, not an abort
        ms = int(round((time.monotonic() - started) * 1000))
        return CheckResult(id=check_id, status="fail", max_n=effective,
                           per_n=[], witness=f"exception: {exc!r}", ms=ms)
    ms = int(round((time.monotonic() - started) * 1000))
    per_n = [{"n": n, "status": "pass" if ok else "fail"} for n, ok, _ in rows]
    failures = [(n, wit) for n, ok, wit in rows if not ok]
    status = "fail" if failures else "pass"
    witness = None
    if failures:
        n, wit = failures[0]
        witness = wit if wit is not None else f"n={n}: mismatch"
    return CheckResult(id=check_id, status=status, max_n=reported_max,
                       per_n=per_n, witness=witness, ms=ms)


def _worker(args) -> CheckResult:
    check_id, max_n, egf_order = args
    return _run_single(check_id, max_n, egf_order)


def run_checks(selection="all", max_n: int | None = None,
               egf_order: int | None = None, jobs: int = 1) -> list[CheckResult]:
    """Run the named checks (or all of them) and return ordered results.

    Results do not depend on `jobs`; failing checks never abort the run.
    """
    if selection == "all" or selection is None:
        ids = list(_ORDER)
    else:
        ids = list(selection)
        for check_id in ids:
            if check_id not in _REGISTRY:
                raise UnknownCheckIdError(f"unknown check id: {check_id}")
    order = DEFAULT_EGF_ORDER if egf_order is None else egf_order
    if jobs <= 1 or len(ids) <= 1:
        return [_run_single(check_id, max_n, order) for check_id in ids]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_worker, [(cid, max_n, order) for cid in ids]))
    return results


def report_json(results: Iterable[CheckResult]) -> str:
    return json.dumps({"results": [r.to_dict() for r in results]}, indent=2)


def report_table(results: Iterable[CheckResult]) -> str:
    results = list(results)
    lines = []
    width = max((len(r.id) for r in results), default=10)
    failed = 0
    for r in results:
        mark = {"pass": "pass", "fail": "FAIL", "skip": "skip"}[r.status]
        line = f"{r.id:<{width}}  {mark}  max_n={r.max_n:<3d} {r.ms:>7d} ms"
        if r.status == "fail":
            failed += 1
            if r.witness:
                line += f"  [{r.witness}]"
        lines.append(line)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    return "\n".join(lines)
