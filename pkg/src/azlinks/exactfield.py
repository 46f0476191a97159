"""Exact scalars: rationals and elements of quadratic fields Q(sqrt d).

Rationals are plain :class:`fractions.Fraction` values.  A
:class:`QuadraticElement` carries its own ``d`` so that values living in
Q(sqrt 5), Q(sqrt -5) and Q(sqrt 2) can coexist; combining two irrational
values with different ``d`` raises :class:`ContextMismatch`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction


class ContextMismatch(ValueError):
    """Two quadratic elements with different radicands were combined."""


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def squarefree_kernel(n: int) -> tuple[int, int]:
    """Write a nonzero integer as ``s * k**2`` with ``s`` squarefree; return (s, k)."""
    if n == 0:
        raise ValueError("zero has no squarefree kernel")
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, k = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            k *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return sign * s * n, k


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, QuadraticElement):
        if value.b != 0:
            raise ValueError(f"{value} is not rational")
        return value.a
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot convert {value!r} to a rational")


def rat_sqrt(q) -> Fraction | None:
    """Exact square root of a rational, or None when q is not a square."""
    q = as_rational(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rat_is_square(q) -> tuple[bool, Fraction | None]:
    """Return ``(True, r)`` with ``r*r == q`` if q is a rational square, else ``(False, None)``."""
    r = rat_sqrt(q)
    return (r is not None, r)


@dataclass(frozen=True)
class QuadraticElement:
    """a + b*sqrt(d) with a, b rational and d a squarefree integer other than 0, 1."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if not isinstance(self.d, int) or self.d in (0, 1) or not _squarefree(self.d):
            raise ValueError(f"radicand must be squarefree and not 0 or 1, got {self.d}")

    @classmethod
    def sqrt(cls, d: int) -> QuadraticElement:
        return cls(Fraction(0), Fraction(1), d)

    # -- helpers ---------------------------------------------------------
    def _coerce(self, other) -> QuadraticElement | None:
        if isinstance(other, QuadraticElement):
            if other.d != self.d:
                if other.b == 0:
                    return QuadraticElement(other.a, 0, self.d)
                if self.b == 0:
                    # self is rational; adopt the other context
                    return None
                raise ContextMismatch(f"Q(sqrt {self.d}) vs Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticElement(Fraction(other), Fraction(0), self.d)
        return NotImplemented

    def _swap_context(self, other: QuadraticElement) -> QuadraticElement:
        return QuadraticElement(self.a, 0, other.d)

    def is_rational(self) -> bool:
        return self.b == 0

    def conj(self) -> QuadraticElement:
        return QuadraticElement(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._swap_context(other) + other
        return QuadraticElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._swap_context(other) - other
        return QuadraticElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._swap_context(other) * other
        return QuadraticElement(
            self.a * o.a + self.d * self.b * o.b, self.a * o.b + o.a * self.b, self.d
        )

    __rmul__ = __mul__

    def inverse(self) -> QuadraticElement:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return self._swap_context(other) / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadraticElement(Fraction(1), Fraction(0), self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadraticElement):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def to_complex(self) -> complex:
        root = math.sqrt(abs(self.d))
        if self.d < 0:
            return complex(float(self.a), float(self.b) * root)
        return complex(float(self.a) + float(self.b) * root, 0.0)

    def __str__(self):
        if self.b == 0:
            return _fmt_rat(self.a)
        root = f"sqrt({self.d})"
        b = self.b
        if b == 1:
            tail = root
        elif b == -1:
            tail = "-" + root
        else:
            tail = f"{_fmt_rat(b)}*{root}"
        if self.a == 0:
            return tail
        sep = " - " if tail.startswith("-") else " + "
        return f"{_fmt_rat(self.a)}{sep}{tail.lstrip('-')}"

    def __repr__(self):
        return f"QuadraticElement({self.a!s}, {self.b!s}, d={self.d})"


Scalar = Union[Fraction, QuadraticElement]


def quad_add(x: QuadraticElement, y: QuadraticElement) -> QuadraticElement:
    return x + y


def quad_mul(x: QuadraticElement, y: QuadraticElement) -> QuadraticElement:
    if isinstance(x, QuadraticElement) and isinstance(y, QuadraticElement) and x.d != y.d:
        raise ContextMismatch(f"Q(sqrt {x.d}) vs Q(sqrt {y.d})")
    return x * y


def quad_inv(x: QuadraticElement) -> QuadraticElement:
    return x.inverse()


def normalize(value) -> Scalar:
    """Collapse rational-valued quadratic elements to Fraction; ints become Fraction."""
    if isinstance(value, QuadraticElement):
        return value.a if value.b == 0 else value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    raise TypeError(f"not an exact scalar: {value!r}")


def is_rational(value) -> bool:
    return isinstance(value, (int, Fraction)) or (
        isinstance(value, QuadraticElement) and value.b == 0
    )


def context_of(value) -> int | None:
    """Radicand of an irrational quadratic element, None for rationals."""
    if isinstance(value, QuadraticElement) and value.b != 0:
        return value.d
    return None


def field_sqrt(value, d: int | None = None) -> Scalar | None:
    """Square root of ``value`` inside Q, Q(sqrt d) or the value's own field.

    For a rational input with no rational root, ``d`` (or the squarefree kernel
    of the value when ``d`` is None) decides the quadratic field the root may
    live in.  Returns None when no root exists there.
    """
    value = normalize(value)
    if isinstance(value, Fraction):
        r = rat_sqrt(value)
        if r is not None:
            return r
        if value == 0:
            return Fraction(0)
        kernel, _ = squarefree_kernel(value.numerator * value.denominator)
        if d is not None and kernel != d:
            return None
        # value = kernel * (k/den)^2 for rational k/den
        coeff = rat_sqrt(value / kernel)
        if coeff is None:
            return None
        return QuadraticElement(0, coeff, kernel)
    # value = a + b sqrt(dd), b != 0: (p + q sqrt dd)^2 needs p^2 = (a +- sqrt(norm)) / 2
    dd = value.d
    if d is not None and d != dd:
        return None
    disc = rat_sqrt(value.norm())
    if disc is None:
        return None
    for p2 in ((value.a + disc) / 2, (value.a - disc) / 2):
        p = rat_sqrt(p2)
        if p:
            root = QuadraticElement(p, value.b / (2 * p), dd)
            if root * root == value:
                return root
    return None


def _fmt_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


fmt_rational = _fmt_rat

_SCALAR_RE = re.compile(r"^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(text: str) -> Fraction:
    """Parse ``-3``, ``7/2`` or ``678.125`` into an exact rational."""
    m = _SCALAR_RE.match(text)
    if not m:
        raise ValueError(f"not a scalar literal: {text!r}")
    sign, body, den = m.groups()
    value = Fraction(body)
    if den is not None:
        if "." in body:
            raise ValueError(f"decimal numerator in fraction: {text!r}")
        if int(den) == 0:
            raise ZeroDivisionError(text)
        value /= int(den)
    return -value if sign == "-" else value


_SQRT_RE = re.compile(r"sqrt\(\s*([+-]?\d+)\s*\)")


def parse_field_element(text: str) -> Scalar:
    """Parse a rational or an expression like ``1/2 + 3/2*sqrt(5)`` exactly."""
    from .polyring import parse_unipoly

    radicands = {int(m) for m in _SQRT_RE.findall(text)}
    if not radicands:
        return parse_scalar(text) if _SCALAR_RE.match(text) else _constant(parse_unipoly(text, "x"))
    if len(radicands) > 1:
        raise ContextMismatch(f"several radicands in {text!r}")
    (d,) = radicands
    kernel, k = squarefree_kernel(d)
    poly = parse_unipoly(_SQRT_RE.sub("(x)", text), "x")
    root = QuadraticElement(0, k, kernel) if kernel != 1 else Fraction(k)
    return normalize(poly.evaluate(root))


def _constant(poly) -> Fraction:
    if poly.degree > 0:
        raise ValueError("expected a constant")
    return poly[0]
