"""Dense univariate and sparse trivariate polynomials over exact scalars.

Coefficients are Fractions or :class:`~azlinks.exactfield.QuadraticElement`
values; nothing here assumes which.  Univariate polynomials are dense
(low degree first), trivariate ones are dictionaries keyed by exponent
triples.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .exactfield import (
    QuadraticElement,
    Scalar,
    context_of,
    field_sqrt,
    fmt_rational,
    is_rational,
    normalize,
    parse_scalar,
)

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""


class UnresolvedCoordinates(ValueError):
    """Roots are not expressible in Q or a single quadratic field."""


def _fmt_coeff(c) -> str:
    c = normalize(c)
    if isinstance(c, Fraction):
        return fmt_rational(c)
    return f"({c})"


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [normalize(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.var = var

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> UniPoly:
        return cls([0] * k + [c], var)

    @classmethod
    def x(cls, var: str = "x") -> UniPoly:
        return cls([0, 1], var)

    @classmethod
    def const(cls, c, var: str = "x") -> UniPoly:
        return cls([c], var)

    # -- structure -------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.coeffs)

    @property
    def context(self) -> int | None:
        ds = {context_of(c) for c in self.coeffs} - {None}
        if len(ds) > 1:
            raise ValueError(f"mixed radicands {sorted(ds)}")
        return ds.pop() if ds else None

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        return self.scale(1 / self.lc())

    def scale(self, c) -> UniPoly:
        return UniPoly([a * c for a in self.coeffs], self.var)

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction, QuadraticElement)):
            return UniPoly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> UniPoly:
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: UniPoly):
        return poly_divmod(self, other)

    def __mod__(self, other: UniPoly) -> UniPoly:
        return poly_divmod(self, other)[1]

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return poly_divmod(self, other)[0]

    def exact_div(self, other: UniPoly) -> UniPoly:
        q, r = poly_divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QuadraticElement)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def evaluate(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return normalize(acc) if isinstance(acc, (Fraction, QuadraticElement, int)) else acc

    __call__ = evaluate

    def compose(self, inner: UniPoly) -> UniPoly:
        acc = UniPoly([], inner.var)
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def conj(self) -> UniPoly:
        return UniPoly(
            [c.conj() if isinstance(c, QuadraticElement) else c for c in self.coeffs], self.var
        )

    def to_rational(self) -> UniPoly:
        for c in self.coeffs:
            if not is_rational(c):
                raise ValueError(f"irrational coefficient {c} in {self}")
        return self

    def __str__(self):
        return format_poly_terms(
            [(c, {self.var: k}) for k, c in reversed(list(enumerate(self.coeffs))) if c != 0]
        )

    def __repr__(self):
        return f"UniPoly({self})"


def format_poly_terms(terms: Sequence[tuple[Scalar, dict[str, int]]]) -> str:
    if not terms:
        return "0"
    parts = []
    for idx, (c, powers) in enumerate(terms):
        mono = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in powers.items() if e > 0
        )
        c = normalize(c)
        negative = isinstance(c, Fraction) and c < 0
        mag = -c if negative else c
        if not mono:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(mag)}*{mono}"
        if idx == 0:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts)


def poly_divmod(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder with ``f == q*g + r`` and ``deg r < deg g``."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(f.coeffs)
    dg = len(g.coeffs) - 1
    inv_lc = 1 / g.lc()
    q = [Fraction(0)] * max(len(r) - dg, 0)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c == 0:
            continue
        c = normalize(c * inv_lc)
        q[k] = c
        for j, b in enumerate(g.coeffs):
            r[k + j] = r[k + j] - c * b
    return UniPoly(q, f.var), UniPoly(r[:dg], f.var)


def xgcd2(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Monic gcd with Bezout coefficients: ``d == a*f + b*g``."""
    var = f.var
    r0, r1 = f, g
    s0, s1 = UniPoly([1], var), UniPoly([], var)
    t0, t1 = UniPoly([], var), UniPoly([1], var)
    while not r1.is_zero():
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def xgcd(f: UniPoly, g: UniPoly, h: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly, UniPoly]:
    """Monic ``w = gcd(f, g, h)`` and ``c1, c2, c3`` with ``w == c1*f + c2*g + c3*h``."""
    if f.is_zero() and g.is_zero() and h.is_zero():
        raise ZeroDivisionError("gcd of three zero polynomials")
    d1, a1, b1 = xgcd2(f, g)
    w, a2, c3 = xgcd2(d1, h)
    return w, a2 * a1, a2 * b1, c3


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    return xgcd2(f, g)[0]


def squarefree_part(f: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of f (characteristic 0)."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if f.degree == 0:
        return UniPoly([1], f.var)
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def squarefree_decomposition(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic squarefree, pairwise coprime ``(a_i, i)`` with f ~ prod a_i^i."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    out = []
    a = poly_gcd(f, f.derivative())
    if f.degree == 0:
        return []
    b = f.exact_div(a)
    c = f.derivative().exact_div(a)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a.monic(), i))
        i += 1
    return out


def expand_from_roots(roots: Sequence, var: str = "x") -> UniPoly:
    """Monic polynomial whose roots are exactly ``roots`` (with multiplicity)."""
    ds = {context_of(r) for r in roots} - {None}
    if len(ds) > 1:
        from .exactfield import ContextMismatch

        raise ContextMismatch(f"roots from several fields {sorted(ds)}")
    p = UniPoly([1], var)
    for r in roots:
        p = p * UniPoly([-r, 1], var)
    return p


def _rational_roots(f: UniPoly) -> list[Fraction]:
    """Rational roots of a rational polynomial via the rational-root theorem."""
    if f.degree <= 0:
        return []
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    # strip zero roots
    roots = []
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    g = UniPoly(ints)
    for p in _divisors(a0):
        for q in _divisors(an):
            if math.gcd(p, q) != 1:
                continue
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if g.evaluate(cand) == 0:
                    roots.append(cand)
    return roots


def _divisors(n: int) -> list[int]:
    if n > 10**12:
        raise UnresolvedCoordinates("coefficients too large for rational root search")
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def _quadratic_roots(f: UniPoly) -> list:
    a, b, c = f[2], f[1], f[0]
    disc = normalize(b * b - 4 * a * c)
    s = field_sqrt(disc, context_of(disc) or context_of(f.lc()) or _poly_ctx(f))
    if s is None:
        if _poly_ctx(f) is None:
            s = field_sqrt(disc)
        if s is None:
            raise UnresolvedCoordinates(f"roots of {f} outside the supported fields")
    return [normalize((-b + s) / (2 * a)), normalize((-b - s) / (2 * a))]


def _poly_ctx(f: UniPoly) -> int | None:
    return f.context


def roots_in_field(f: UniPoly) -> list[tuple[Scalar, int]]:
    """All roots of f with multiplicities, as rationals or quadratic irrationals.

    Rational polynomials may split off rational roots and then at most a
    quadratic factor; polynomials with irrational coefficients must have
    squarefree pieces of degree at most two.  Anything else raises
    :class:`UnresolvedCoordinates`.
    """
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    out: list[tuple[Scalar, int]] = []
    for piece, mult in squarefree_decomposition(f):
        rest = piece
        if piece.is_rational():
            for r in _rational_roots(piece):
                out.append((r, mult))
                rest = rest.exact_div(UniPoly([-r, 1], f.var))
        if rest.degree <= 0:
            continue
        if rest.degree == 1:
            out.append((normalize(-rest[0] / rest[1]), mult))
        elif rest.degree == 2:
            out.extend((r, mult) for r in _quadratic_roots(rest))
        else:
            raise UnresolvedCoordinates(f"factor {rest} of degree {rest.degree} not split")
    ctxs = {context_of(r) for r, _ in out} - {None}
    if len(ctxs) > 1:
        raise UnresolvedCoordinates(f"roots span several quadratic fields {sorted(ctxs)}")
    return out


# --------------------------------------------------------------------------
# trivariate polynomials

VARS = ("x", "y", "z")
Exponent = tuple[int, int, int]


class TriPoly:
    """Sparse polynomial in three variables, by default named x, y, z."""

    __slots__ = ("terms", "names")

    def __init__(self, terms: dict | None = None, names: tuple[str, str, str] = VARS):
        self.terms: dict[Exponent, Scalar] = {}
        for e, c in (terms or {}).items():
            c = normalize(c)
            if c != 0:
                self.terms[tuple(e)] = c
        self.names = names

    @classmethod
    def var(cls, name: str, names=VARS) -> TriPoly:
        e = [0, 0, 0]
        e[names.index(name)] = 1
        return cls({tuple(e): 1}, names)

    @classmethod
    def const(cls, c, names=VARS) -> TriPoly:
        return cls({(0, 0, 0): c}, names)

    @classmethod
    def from_unipoly(cls, p: UniPoly, var: str, names=VARS) -> TriPoly:
        idx = names.index(var)
        terms = {}
        for k, c in enumerate(p.coeffs):
            e = [0, 0, 0]
            e[idx] = k
            terms[tuple(e)] = c
        return cls(terms, names)

    def _idx(self, var) -> int:
        return var if isinstance(var, int) else self.names.index(var)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self):
        return max((sum(e) for e in self.terms), default=NEG_INF)

    def degree_in(self, var) -> int:
        i = self._idx(var)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def variables(self) -> set[str]:
        return {self.names[i] for e in self.terms for i in range(3) if e[i]}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    # -- arithmetic ------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, TriPoly):
            return other
        if isinstance(other, (int, Fraction, QuadraticElement)):
            return TriPoly.const(other, self.names)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return TriPoly(out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return TriPoly({e: -c for e, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return TriPoly(out, self.names)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction, QuadraticElement)):
            return self * (1 / normalize(c))
        return NotImplemented

    def __pow__(self, k: int) -> TriPoly:
        result = TriPoly.const(1, self.names)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, TriPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadraticElement)):
            return self.terms == TriPoly.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus and substitution --------------------------------------
    def partial(self, var) -> TriPoly:
        i = self._idx(var)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return TriPoly(out, self.names)

    def gradient(self) -> tuple[TriPoly, TriPoly, TriPoly]:
        return (self.partial(0), self.partial(1), self.partial(2))

    def substitute(self, var, replacement) -> TriPoly:
        """Replace one variable by a polynomial (or scalar)."""
        i = self._idx(var)
        rep = self._lift(replacement)
        powers: dict[int, TriPoly] = {0: TriPoly.const(1, self.names)}
        out = TriPoly({}, self.names)
        for e, c in self.terms.items():
            k = e[i]
            if k not in powers:
                powers[k] = rep ** k
            rest = list(e)
            rest[i] = 0
            out = out + TriPoly({tuple(rest): c}, self.names) * powers[k]
        return out

    def evaluate(self, x, y=0, z=0):
        point = (x, y, z)
        acc = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v ** k
            acc = acc + term
        return normalize(acc) if isinstance(acc, (int, Fraction, QuadraticElement)) else acc

    __call__ = evaluate

    def evaluate_float(self, x: complex, y: complex = 0, z: complex = 0) -> complex:
        acc = 0j
        for (i, j, k), c in self.terms.items():
            cf = c.to_complex() if isinstance(c, QuadraticElement) else float(c)
            acc += cf * x**i * y**j * z**k
        return acc

    def coefficients_in(self, var) -> dict[int, TriPoly]:
        """Group terms by the power of ``var``."""
        i = self._idx(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            rest = list(e)
            rest[i] = 0
            out.setdefault(e[i], {})[tuple(rest)] = c
        return {k: TriPoly(v, self.names) for k, v in out.items()}

    def to_unipoly(self, var) -> UniPoly:
        i = self._idx(var)
        coeffs = [Fraction(0)] * (max((e[i] for e in self.terms), default=-1) + 1)
        for e, c in self.terms.items():
            if any(e[j] for j in range(3) if j != i):
                raise ValueError(f"{self} involves variables other than {self.names[i]}")
            coeffs[e[i]] = c
        return UniPoly(coeffs, self.names[i])

    def rename(self, names: tuple[str, str, str]) -> TriPoly:
        return TriPoly(self.terms, names)

    def homogenize(self, var) -> TriPoly:
        """Homogenize using ``var`` (which must not occur) as the extra variable."""
        i = self._idx(var)
        if self.degree_in(i) > 0:
            raise ValueError(f"{self.names[i]} already occurs")
        n = self.total_degree
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] = n - sum(e)
            out[tuple(ne)] = c
        return TriPoly(out, self.names)

    def dehomogenize(self, var, value=1) -> TriPoly:
        return self.substitute(var, value)

    def leading_term(self, order="lex") -> tuple[Exponent, Scalar]:
        if not self.terms:
            raise ValueError("zero polynomial")
        key = _lex_key if order == "lex" else _grlex_key
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def reduce(self, basis: Sequence[TriPoly], order="lex") -> TriPoly:
        """Normal form of self modulo ``basis`` by multivariate division."""
        key = _lex_key if order == "lex" else _grlex_key
        leads = [b.leading_term(order) for b in basis]
        p = TriPoly(dict(self.terms), self.names)
        remainder: dict = {}
        while p.terms:
            e = max(p.terms, key=key)
            c = p.terms[e]
            for b, (be, bc) in zip(basis, leads):
                if all(e[k] >= be[k] for k in range(3)):
                    shift = tuple(e[k] - be[k] for k in range(3))
                    p = p - TriPoly({shift: c / bc}, self.names) * b
                    break
            else:
                remainder[e] = c
                del p.terms[e]
        return TriPoly(remainder, self.names)

    def __str__(self):
        keys = sorted(self.terms, key=_grlex_key, reverse=True)
        return format_poly_terms(
            [(self.terms[e], dict(zip(self.names, e))) for e in keys]
        )

    def __repr__(self):
        return f"TriPoly({self})"


def _lex_key(e: Exponent):
    # lex with z > y > x, so that z is eliminated first
    return (e[2], e[1], e[0])


def _grlex_key(e: Exponent):
    return (sum(e), e[0], e[1], e[2])


def tri_substitute(f: TriPoly, var: str, replacement) -> TriPoly:
    return f.substitute(var, replacement)


def tri_partial(f: TriPoly, var: str) -> TriPoly:
    return f.partial(var)


# --------------------------------------------------------------------------
# resultants


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix of coefficient lists given high degree first, f rows first."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    zero = f[0] * 0
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(rows: list[list]):
    """Fraction-free determinant; entries need exact division (polynomials or rationals)."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = None
    for k in range(n - 1):
        if _is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not _is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return M[k][k] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num if prev is None else _exact_div(num, prev)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign == 1 else -det


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, UniPoly) else v == 0


def _exact_div(a, b):
    if isinstance(a, UniPoly):
        return a.exact_div(b)
    return a / b


def resultant_bivariate(f: TriPoly, g: TriPoly, eliminate: str) -> UniPoly:
    """Res_eliminate(f, g) as a polynomial in the remaining variable.

    Both inputs may involve only ``eliminate`` and one other variable.  The
    Sylvester matrix puts the rows of ``f`` first.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant with the zero polynomial")
    used = (f.variables() | g.variables()) - {eliminate}
    if len(used) > 1:
        raise ValueError(f"inputs involve more than two variables: {sorted(used | {eliminate})}")
    keep = used.pop() if used else next(v for v in f.names if v != eliminate)

    def coeff_list(p: TriPoly) -> list[UniPoly]:
        groups = p.coefficients_in(eliminate)
        top = max(groups)
        return [
            groups[k].to_unipoly(keep) if k in groups else UniPoly([], keep)
            for k in range(top, -1, -1)
        ]

    fc, gc = coeff_list(f), coeff_list(g)
    if len(fc) == 1 and len(gc) == 1:
        return UniPoly([1], keep)
    if len(fc) == 1:
        return fc[0] ** (len(gc) - 1)
    if len(gc) == 1:
        return gc[0] ** (len(fc) - 1)
    det = bareiss_det(sylvester_matrix(fc, gc))
    return det if isinstance(det, UniPoly) else UniPoly([det], keep)


# --------------------------------------------------------------------------
# text grammar

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


class PolySyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str, names: tuple[str, str, str], allowed: set[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = names
        self.allowed = allowed

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> TriPoly:
        if not self.toks:
            raise PolySyntaxError("empty polynomial")
        p = self.expr()
        if self.i != len(self.toks):
            raise PolySyntaxError(f"trailing input at token {self.peek()[1]!r}")
        return p

    def expr(self) -> TriPoly:
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term() * sign
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> TriPoly:
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                if d.total_degree > 0:
                    raise PolySyntaxError("division by a non-constant")
                c = d.terms.get((0, 0, 0), 0)
                if c == 0:
                    raise ZeroDivisionError("division by zero in polynomial literal")
                acc = acc / c
            elif kind in ("num", "ident") or (kind == "op" and val == "("):
                acc = acc * self.power()
            else:
                return acc

    def power(self) -> TriPoly:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, e = self.take()
            if k != "num" or not e.isdigit():
                raise PolySyntaxError("exponent must be a nonnegative integer")
            base = base ** int(e)
        return base

    def atom(self) -> TriPoly:
        kind, val = self.take()
        if kind == "num":
            return TriPoly.const(parse_scalar(val), self.names)
        if kind == "ident":
            if val not in self.allowed:
                raise PolySyntaxError(f"unknown identifier {val!r}")
            return TriPoly.var(val, self.names)
        if kind == "op" and val == "(":
            inner = self.expr()
            k, v = self.take()
            if v != ")":
                raise PolySyntaxError("missing ')'")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise PolySyntaxError(f"unexpected token {val!r}")


def parse_tripoly(text: str, names: tuple[str, str, str] = VARS, allowed=None) -> TriPoly:
    """Parse e.g. ``3*x^2*y - 7/2*z + 52.5`` into an exact TriPoly."""
    allowed = set(names) if allowed is None else set(allowed)
    return _Parser(text, names, allowed).parse()


def parse_unipoly(text: str, var: str = "x") -> UniPoly:
    names = (var, "_1", "_2")
    return _Parser(text, names, {var}).parse().to_unipoly(var)


__all__ = [
    "NEG_INF",
    "TriPoly",
    "UniPoly",
    "UnresolvedCoordinates",
    "bareiss_det",
    "expand_from_roots",
    "parse_tripoly",
    "parse_unipoly",
    "poly_divmod",
    "poly_gcd",
    "resultant_bivariate",
    "roots_in_field",
    "squarefree_decomposition",
    "squarefree_part",
    "sylvester_matrix",
    "tri_partial",
    "tri_substitute",
    "xgcd",
    "xgcd2",
]
