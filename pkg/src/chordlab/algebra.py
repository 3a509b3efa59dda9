"""Exact multivariate polynomials, structured expansions and truncated series.

Everything is built on `fractions.Fraction`, so all arithmetic is exact and
there are no tolerance questions anywhere in the package.  A polynomial is a
map from monomials to nonzero rational coefficients; a monomial is a sorted
tuple of (variable, positive exponent) pairs.  Values are immutable after
construction and safe to share between threads.

The text format (stable for golden files) renders terms in graded-lex order,
highest first: ``c1*mono1 + c2*mono2 + ...`` with monomials like ``x^2*y``,
coefficients printed as ``p`` or ``p/q`` and unit coefficients elided.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

Mono = tuple  # tuple[tuple[str, int], ...], sorted by variable name
Scalar = Union[int, Fraction]


class AlgebraError(Exception):
    """Base class for errors raised by this module."""


class UnboundVariableError(AlgebraError):
    pass


class NotHomogeneousError(AlgebraError):
    pass


class NotSymmetricError(AlgebraError):
    pass


class BadConstantTermError(AlgebraError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column


def _mono_mul(m1: Mono, m2: Mono) -> Mono:
    """Merge two sorted exponent lists."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def _mono_degree(m: Mono) -> int:
    return sum(e for _, e in m)


class MVPoly:
    """An exact multivariate polynomial with rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Scalar] | None = None):
        clean: dict[Mono, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[mono] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "MVPoly":
        return cls()

    @classmethod
    def const(cls, c: Scalar) -> "MVPoly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "MVPoly":
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return cls.const(1)
        return cls({((name, exp),): Fraction(1)})

    @classmethod
    def from_exponents(cls, counts: Mapping[tuple, Scalar], names: Sequence[str]) -> "MVPoly":
        """Build a polynomial from {exponent-tuple: coefficient} over `names`."""
        terms: dict[Mono, Fraction] = {}
        for exps, c in counts.items():
            mono = tuple(sorted((v, e) for v, e in zip(names, exps) if e))
            terms[mono] = terms.get(mono, Fraction(0)) + Fraction(c)
        return cls(terms)

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> list[str]:
        seen: set[str] = set()
        for mono in self.terms:
            for v, _ in mono:
                seen.add(v)
        return sorted(seen)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(_mono_degree(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MVPoly.const(other)
        if not isinstance(other, MVPoly):
            return NotImplemented
        return self.terms == other.terms

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other) -> "MVPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, Fraction(0)) + c
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        p = MVPoly.__new__(MVPoly)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "MVPoly":
        p = MVPoly.__new__(MVPoly)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "MVPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MVPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "MVPoly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return MVPoly.zero()
            p = MVPoly.__new__(MVPoly)
            p.terms = {m: c * k for m, k in self.terms.items()}
            return p
        if not isinstance(other, MVPoly):
            return NotImplemented
        out: dict[Mono, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        p = MVPoly.__new__(MVPoly)
        p.terms = out
        return p

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MVPoly":
        if k < 0:
            raise ValueError("negative power")
        result = MVPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and substitution ------------------------------------

    def partial(self, v: str) -> "MVPoly":
        """Formal partial derivative with respect to `v`."""
        out: dict[Mono, Fraction] = {}
        for mono, c in self.terms.items():
            for idx, (name, e) in enumerate(mono):
                if name == v:
                    if e == 1:
                        reduced = mono[:idx] + mono[idx + 1:]
                    else:
                        reduced = mono[:idx] + ((name, e - 1),) + mono[idx + 1:]
                    s = out.get(reduced, Fraction(0)) + c * e
                    if s:
                        out[reduced] = s
                    elif reduced in out:
                        del out[reduced]
                    break
        p = MVPoly.__new__(MVPoly)
        p.terms = out
        return p

    def subst(self, bindings: Mapping[str, "MVPoly | Scalar"]) -> "MVPoly":
        """Simultaneously replace bound variables; unbound ones are kept."""
        binds = {v: _coerce(p) for v, p in bindings.items()}
        total = MVPoly.zero()
        for mono, c in self.terms.items():
            term = MVPoly.const(c)
            for name, e in mono:
                if name in binds:
                    term = term * binds[name] ** e
                else:
                    term = term * MVPoly.var(name, e)
            total = total + term
        return total

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a fully bound point."""
        total = Fraction(0)
        for mono, c in self.terms.items():
            val = c
            for name, e in mono:
                if name not in point:
                    raise UnboundVariableError(f"variable {name!r} is not bound")
                val *= Fraction(point[name]) ** e
            total += val
        return total

    # -- views --------------------------------------------------------

    def coefficients_in(self, names: Sequence[str]) -> dict[tuple, "MVPoly"]:
        """Group terms by their exponents in `names`, coefficients in the rest."""
        grouped: dict[tuple, dict[Mono, Fraction]] = {}
        for mono, c in self.terms.items():
            exps = {v: e for v, e in mono}
            key = tuple(exps.pop(n, 0) for n in names)
            rest = tuple(sorted(exps.items()))
            slot = grouped.setdefault(key, {})
            slot[rest] = slot.get(rest, Fraction(0)) + c
        out = {k: MVPoly(v) for k, v in grouped.items()}
        return {k: v for k, v in out.items() if not v.is_zero}

    def coefficient(self, mono_of: Mapping[str, int]) -> "MVPoly":
        """Coefficient polynomial of an exact monomial in the given variables."""
        names = sorted(mono_of)
        want = tuple(mono_of[n] for n in names)
        return self.coefficients_in(names).get(want, MVPoly.zero())

    # -- rendering ----------------------------------------------------

    def _ordered_terms(self) -> list[tuple[Mono, Fraction]]:
        names = self.variables()
        index = {v: i for i, v in enumerate(names)}

        def key(item):
            mono, _ = item
            vec = [0] * len(names)
            for v, e in mono:
                vec[index[v]] = e
            return (_mono_degree(mono), tuple(vec))

        return sorted(self.terms.items(), key=key, reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self._ordered_terms():
            body = "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    __str__ = render

    def __repr__(self) -> str:
        return f"MVPoly({self.render()})"


def _coerce(value) -> MVPoly:
    if isinstance(value, MVPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return MVPoly.const(value)
    return NotImplemented


# ---------------------------------------------------------------------------
# Structured expansions
# ---------------------------------------------------------------------------

def gamma_expand(p: MVPoly, x: str, y: str) -> list[tuple[int, MVPoly]]:
    """Expand `p` in the basis (xy)^j (x+y)^(d-2j).

    `p` must be homogeneous of some degree d in (x, y) and symmetric under
    the swap of x and y; its coefficients may involve other variables.
    Returns the nonzero (j, gamma_j) pairs, j ascending.  The expansion is
    computed by peeling the leading pure-x coefficient, subtracting, and
    dividing the remainder by xy.
    """
    if p.is_zero:
        return []
    slices = p.coefficients_in((x, y))
    degrees = {ex + ey for ex, ey in slices}
    if len(degrees) != 1:
        raise NotHomogeneousError(
            f"degrees in ({x},{y}) are not constant: {sorted(degrees)}")
    d = degrees.pop()
    x_plus_y = MVPoly.var(x) + MVPoly.var(y)
    out: list[tuple[int, MVPoly]] = []
    cur = p
    j = 0
    while not cur.is_zero:
        rem = d - 2 * j
        if rem < 0:
            raise NotSymmetricError("peeling left a nonzero remainder")
        lead = cur.coefficient({x: rem, y: 0})
        if not lead.is_zero:
            out.append((j, lead))
            cur = cur - lead * x_plus_y ** rem
        # every surviving term must now be divisible by x*y
        quotient: dict[Mono, Fraction] = {}
        for mono, c in cur.terms.items():
            exps = dict(mono)
            if exps.get(x, 0) < 1 or exps.get(y, 0) < 1:
                raise NotSymmetricError("peeling left a nonzero remainder")
            reduced = []
            for v, e in mono:
                if v in (x, y):
                    e -= 1
                if e:
                    reduced.append((v, e))
            quotient[tuple(reduced)] = c
        cur = MVPoly(quotient)
        j += 1
    return out


def gamma_assemble(coeffs: Iterable[tuple[int, MVPoly]], x: str, y: str, d: int) -> MVPoly:
    """Inverse of :func:`gamma_expand` for a degree-`d` expansion."""
    xy = MVPoly.var(x) * MVPoly.var(y)
    x_plus_y = MVPoly.var(x) + MVPoly.var(y)
    total = MVPoly.zero()
    for j, g in coeffs:
        total = total + g * xy ** j * x_plus_y ** (d - 2 * j)
    return total


def esym_polys(names: Sequence[str]) -> tuple[MVPoly, MVPoly, MVPoly]:
    """Elementary symmetric polynomials e1, e2, e3 in three variables."""
    x, y, z = (MVPoly.var(n) for n in names)
    return x + y + z, x * y + y * z + z * x, x * y * z


def esym_expand(p: MVPoly, names: Sequence[str]) -> list[tuple[tuple[int, int, int], Fraction]]:
    """Write a symmetric polynomial in three variables in the e1,e2,e3 basis.

    Uses repeated leading-monomial reduction in graded-lex order; raises
    NotSymmetricError if the reduction leaves an irreducible remainder.
    """
    names = tuple(names)
    if len(names) != 3:
        raise ValueError("esym_expand expects exactly three variable names")
    foreign = set(p.variables()) - set(names)
    if foreign:
        raise NotSymmetricError(f"polynomial involves other variables: {sorted(foreign)}")
    e1, e2, e3 = esym_polys(names)
    out: dict[tuple[int, int, int], Fraction] = {}
    cur = p
    while not cur.is_zero:
        # leading monomial in graded-lex order with names[0] > names[1] > names[2]
        best = None
        for mono, c in cur.terms.items():
            exps = dict(mono)
            vec = tuple(exps.get(n, 0) for n in names)
            key = (sum(vec), vec)
            if best is None or key > best[0]:
                best = (key, vec, c)
        _, (a, b, cc), coeff = best
        if not (a >= b >= cc):
            raise NotSymmetricError(
                f"leading exponents {(a, b, cc)} are not weakly decreasing")
        key = (a - b, b - cc, cc)
        out[key] = coeff
        cur = cur - coeff * e1 ** (a - b) * e2 ** (b - cc) * e3 ** cc
    return sorted(out.items())


def esym_assemble(coeffs: Iterable[tuple[tuple[int, int, int], Scalar]],
                  names: Sequence[str]) -> MVPoly:
    e1, e2, e3 = esym_polys(names)
    total = MVPoly.zero()
    for (i, j, k), c in coeffs:
        total = total + Fraction(c) * e1 ** i * e2 ** j * e3 ** k
    return total


# ---------------------------------------------------------------------------
# Truncated power series (exact rational coefficients)
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """A power series truncated at a fixed order, coefficients of z^0..z^N."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        coeffs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if len(coeffs) != order + 1:
            raise ValueError("coefficient list must have length order+1")
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([0] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([1] + [0] * order)

    @classmethod
    def linear(cls, c: Scalar, order: int) -> "TruncatedSeries":
        """The series c*z."""
        coeffs = [Fraction(0)] * (order + 1)
        if order >= 1:
            coeffs[1] = Fraction(c)
        return cls(coeffs)

    @classmethod
    def exponential(cls, c: Scalar, order: int) -> "TruncatedSeries":
        """The series exp(c*z)."""
        return cls.linear(c, order).exp()

    @classmethod
    def from_egf_values(cls, values: Sequence[Scalar]) -> "TruncatedSeries":
        """Series with coefficient values[n]/n!."""
        return cls([Fraction(v, math.factorial(n)) for n, v in enumerate(values)])

    def _check_same_order(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise ValueError("series orders differ")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_same_order(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check_same_order(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c: Scalar) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries([c * a for a in self.coeffs])

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same_order(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term."""
        if self.coeffs[0]:
            raise BadConstantTermError("exp needs constant term 0")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        out[0] = Fraction(1)
        for m in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, m + 1):
                if self.coeffs[k]:
                    acc += k * self.coeffs[k] * out[m - k]
            out[m] = acc / m
        return TruncatedSeries(out)

    def log(self) -> "TruncatedSeries":
        """log of a series with constant term 1."""
        if self.coeffs[0] != 1:
            raise BadConstantTermError("log needs constant term 1")
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for m in range(1, n + 1):
            acc = Fraction(0)
            for k in range(1, m):
                if out[k] and self.coeffs[m - k]:
                    acc += k * out[k] * self.coeffs[m - k]
            out[m] = self.coeffs[m] - acc / m
        return TruncatedSeries(out)

    def pow(self, r: Scalar) -> "TruncatedSeries":
        """s**r = exp(r*log(s)) for any rational r; needs constant term 1."""
        if self.coeffs[0] != 1:
            raise BadConstantTermError("pow needs constant term 1")
        return self.log().scale(Fraction(r)).exp()

    def inverse(self) -> "TruncatedSeries":
        return self.pow(-1)

    def __repr__(self) -> str:
        return f"TruncatedSeries({list(self.coeffs)!r})"


# ---------------------------------------------------------------------------
# Classical number triangles and the rising factorial
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def stirling1_unsigned(n: int, k: int) -> int:
    """Signless Stirling numbers of the first kind c(n, k); 0 off the triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return stirling1_unsigned(n - 1, k - 1) + (n - 1) * stirling1_unsigned(n - 1, k)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """Stirling numbers of the second kind S(n, k); 0 off the triangle."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1
    if k == 0:
        return 0
    return stirling2(n - 1, k - 1) + k * stirling2(n - 1, k)


def rising_factorial(step: Scalar, n: int) -> MVPoly:
    """The product q(q+step)(q+2*step)...(q+(n-1)*step), a polynomial in q."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    q = MVPoly.var("q")
    total = MVPoly.const(1)
    for m in range(n):
        total = total * (q + MVPoly.const(Fraction(step) * m))
    return total


# ---------------------------------------------------------------------------
# Text-format parser (the grammar rule files reuse this syntax)
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|\d+|[-+*^/()]|\S")


class _Parser:
    def __init__(self, text: str, line: int = 1, col_offset: int = 0):
        self.text = text
        self.line = line
        self.col_offset = col_offset
        self.tokens: list[tuple[str, int]] = []
        pos = 0
        for m in _TOKEN.finditer(text):
            self.tokens.append((m.group(), m.start() + 1 + col_offset))
        self.i = 0

    def _fail(self, message: str, col: int | None = None) -> None:
        if col is None:
            col = self.tokens[self.i][1] if self.i < len(self.tokens) else len(self.text) + 1 + self.col_offset
        raise ParseError(message, self.line, col)

    def peek(self) -> str | None:
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            self._fail("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.peek()
        if got != tok:
            self._fail(f"expected {tok!r}, got {got!r}")
        self.i += 1

    def parse(self) -> MVPoly:
        p = self.expr()
        if self.peek() is not None:
            self._fail(f"unexpected token {self.peek()!r}")
        return p

    def expr(self) -> MVPoly:
        negate = False
        if self.peek() == "-":
            self.next()
            negate = True
        elif self.peek() == "+":
            self.next()
        total = self.term()
        if negate:
            total = -total
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            total = total + t if op == "+" else total - t
        return total

    def term(self) -> MVPoly:
        total = self.factor()
        while self.peek() == "*":
            self.next()
            total = total * self.factor()
        return total

    def factor(self) -> MVPoly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            tok = self.next()
            if not tok.isdigit():
                self._fail(f"expected integer exponent, got {tok!r}")
            base = base ** int(tok)
        return base

    def atom(self) -> MVPoly:
        tok = self.peek()
        if tok is None:
            self._fail("unexpected end of input")
        if tok == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if tok.isdigit():
            self.next()
            num = int(tok)
            if self.peek() == "/":
                self.next()
                den = self.next()
                if not den.isdigit() or int(den) == 0:
                    self._fail(f"expected positive integer denominator, got {den!r}")
                return MVPoly.const(Fraction(num, int(den)))
            return MVPoly.const(num)
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            self.next()
            return MVPoly.var(tok)
        self._fail(f"unexpected token {tok!r}")


def parse_poly(text: str, line: int = 1) -> MVPoly:
    """Parse the polynomial text format (explicit `*`, `^` powers, `p/q`)."""
    return _Parser(text, line=line).parse()
