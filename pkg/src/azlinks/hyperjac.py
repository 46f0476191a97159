"""Divisor classes on real hyperelliptic curves y^2 = f(x), deg f = 2g + 2.

Classes are balanced Mumford triples ``(u, v, n)``: ``div[u, v]`` is the
affine part, ``n`` counts copies of the place P_inf and the remaining
``g - deg u - n`` copies go to the conjugate place, all shifted by
``D_inf = ceil(g/2) P_inf + floor(g/2) Pbar_inf``.  Addition is COMPOSE
followed by ADJUST (with the auxiliary polynomial V from PRECOMPUTE).
Reduction of composed divisors with ``deg u > g + 1`` is not supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactfield import QuadraticElement, field_sqrt, normalize
from .polyring import UniPoly, expand_from_roots, parse_unipoly, poly_gcd, xgcd


class MumfordError(ValueError):
    """Input does not describe a valid (starred) Mumford triple."""


class AdjustScopeError(ArithmeticError):
    """Composed divisor has deg u > g + 1, beyond what ADJUST reduces."""


def _ceil_half(k: int) -> int:
    return -(-k // 2)


@dataclass(frozen=True)
class MumfordTriple:
    u: UniPoly
    v: UniPoly
    n: int

    def __str__(self):
        return f"[{self.u}, {self.v}, {self.n}]"

    def serialize(self) -> str:
        return f"{self.u};{self.v};{self.n}"


@dataclass(frozen=True)
class StarTriple:
    u: UniPoly
    v: UniPoly
    n: int

    def __str__(self):
        return f"[{self.u}, {self.v}, {self.n}]*"

    def serialize(self) -> str:
        return f"{self.u};{self.v};{self.n}"


def parse_triple(text: str, starred: bool = False):
    try:
        u, v, n = (part.strip() for part in text.split(";"))
    except ValueError:
        raise MumfordError(f"expected 'u;v;n', got {text!r}") from None
    cls = StarTriple if starred else MumfordTriple
    return cls(parse_unipoly(u), parse_unipoly(v), int(n))


def precompute_V(f: UniPoly) -> UniPoly:
    """The unique monic V with deg V = g + 1 and deg(f - V^2) <= g."""
    if f.is_zero() or f.degree % 2 or f.degree < 4:
        raise MumfordError(f"need even degree >= 4, got degree {f.degree}")
    if not f.is_monic():
        raise MumfordError("f must be monic")
    g = f.degree // 2 - 1
    V = [Fraction(0)] * (g + 2)
    V[g + 1] = Fraction(1)
    for i in range(g, -1, -1):
        # the j = g + 1 term would pair V_{g+1} with V_i itself; it is the 2*V_i being solved for
        c = f[g + 1 + i] - sum(V[j] * V[g + 1 + i - j] for j in range(i + 1, g + 1))
        V[i] = normalize(c / 2)
    out = UniPoly(V, f.var)
    assert (f - out * out).degree <= g
    return out


class RealHyperellipticCurve:
    """y^2 = f(x) with f monic, separable, of even degree 2g + 2."""

    def __init__(self, f: UniPoly | str):
        if isinstance(f, str):
            f = parse_unipoly(f)
        if poly_gcd(f, f.derivative()).degree != 0:
            raise MumfordError(f"{f} is not separable")
        self.f = f
        self.V = precompute_V(f)
        self.g = f.degree // 2 - 1

    def __repr__(self):
        return f"RealHyperellipticCurve(y^2 = {self.f})"

    @property
    def x(self) -> UniPoly:
        return UniPoly.x(self.f.var)

    def zero(self) -> UniPoly:
        return UniPoly([], self.f.var)

    def one(self) -> UniPoly:
        return UniPoly([1], self.f.var)


def identity_triple(g: int | RealHyperellipticCurve) -> MumfordTriple:
    """Mumford triple of the trivial class, ``[1, 0, ceil(g/2)]``."""
    if isinstance(g, RealHyperellipticCurve):
        g = g.g
    if g < 1:
        raise ValueError("genus must be positive")
    return MumfordTriple(UniPoly([1]), UniPoly([]), _ceil_half(g))


def validate_mumford(curve: RealHyperellipticCurve, u, v, n, starred: bool = False) -> str | None:
    """None when (u, v, n) satisfies the (starred) criteria, else a description of the violation."""
    g = curve.g
    if not u.is_monic():
        return "u is not monic"
    if not v.is_zero() and v.degree >= u.degree:
        return f"deg v = {v.degree} >= deg u = {u.degree}"
    if not ((curve.f - v * v) % u).is_zero():
        return "u does not divide f - v^2"
    top = 2 * g if starred else g
    if u.degree > top:
        return f"deg u = {u.degree} exceeds {top}"
    if not 0 <= n <= top - u.degree:
        return f"n = {n} outside [0, {top - u.degree}]"
    return None


def _check(curve, t, starred=False):
    problem = validate_mumford(curve, t.u, t.v, t.n, starred)
    if problem:
        raise MumfordError(f"{t}: {problem}")


def compose(curve: RealHyperellipticCurve, t1: MumfordTriple, t2: MumfordTriple) -> StarTriple:
    """COMPOSE: a starred triple equivalent to t1 + t2."""
    _check(curve, t1)
    _check(curve, t2)
    u1, v1, u2, v2 = t1.u, t1.v, t2.u, t2.v
    w, c1, c2, c3 = xgcd(u1, u2, v1 + v2)
    u3 = (u1 * u2).exact_div(w * w)
    num = c1 * u1 * v2 + c2 * u2 * v1 + c3 * (v1 * v2 + curve.f)
    q, r = divmod(num, w)
    if not r.is_zero():
        raise ArithmeticError("COMPOSE: numerator not divisible by w")
    v3 = q % u3
    return StarTriple(u3, v3, t1.n + t2.n + w.degree)


def adjust(curve: RealHyperellipticCurve, s: StarTriple, trace: list | None = None) -> MumfordTriple:
    """ADJUST: reduce a starred triple with deg u <= g + 1 to a Mumford triple."""
    g, f, V = curve.g, curve.f, curve.V
    half, limit = _ceil_half(g), _ceil_half(3 * g)
    u1, v1, n1 = s.u, s.v, s.n
    for _ in range(4 * g + 4):
        if u1.degree > g + 1:
            raise AdjustScopeError(f"deg u = {u1.degree} > g + 1 = {g + 1}")
        if half <= n1 <= limit - u1.degree:
            out = MumfordTriple(u1, v1, n1 - half)
            if trace is not None:
                trace.append(("output", out))
            return out
        if n1 < half:
            vhat = v1 - V + V % u1
        else:
            vhat = v1 + V - V % u1
        u2 = (f - vhat * vhat).exact_div(u1).monic()
        v2 = (-vhat) % u2
        if n1 < half:
            n2 = n1 + g + 1 - u2.degree
        else:
            n2 = n1 + u1.degree - (g + 1)
        if trace is not None:
            trace.append(("step2" if n1 < half else "step3", StarTriple(u2, v2, n2)))
        u1, v1, n1 = u2, v2, n2
    raise ArithmeticError(f"ADJUST did not terminate within {4 * g + 4} rounds")


def jac_add(curve: RealHyperellipticCurve, t1: MumfordTriple, t2: MumfordTriple) -> MumfordTriple:
    return adjust(curve, compose(curve, t1, t2))


def class_from_branch_points(
    curve: RealHyperellipticCurve, abscissas: Sequence, n: int | None = None
) -> MumfordTriple:
    """Class of ``sum (x_i, 0) + a P_inf + b Pbar_inf - D_inf`` supported on Weierstrass points.

    The default ``n`` is the one for ``sum (x_i, 0) - (k/2)(P_inf + Pbar_inf)``,
    which requires an even number of abscissas.
    """
    xs = [normalize(a) for a in abscissas]
    if len(set(xs)) != len(xs):
        raise MumfordError("repeated branch abscissa")
    for a in xs:
        if curve.f.evaluate(a) != 0:
            raise MumfordError(f"{a} is not a root of f")
    u = expand_from_roots(xs, curve.f.var)
    if not u.is_rational():
        raise MumfordError(f"u = {u} has irrational coefficients")
    if n is None:
        if len(xs) % 2:
            raise MumfordError("default n needs an even number of abscissas")
        n = _ceil_half(curve.g) - len(xs) // 2
    t = MumfordTriple(u, curve.zero(), n)
    _check(curve, t)
    return t


def triple_from_points(
    curve: RealHyperellipticCurve, points: Sequence[tuple], at_p_inf: int, at_pbar_inf: int
) -> MumfordTriple:
    """Triple for ``sum P_i + at_p_inf P_inf + at_pbar_inf Pbar_inf`` (a degree-0 divisor).

    Points must have distinct abscissas (so the affine part is semi-reduced
    and v is plain Lagrange interpolation).
    """
    pts = [(normalize(x), normalize(y)) for x, y in points]
    if len(pts) + at_p_inf + at_pbar_inf != 0:
        raise MumfordError("divisor must have degree zero")
    xs = [p[0] for p in pts]
    if len(set(xs)) != len(xs):
        raise MumfordError("abscissas must be distinct")
    for x, y in pts:
        if y * y != curve.f.evaluate(x):
            raise MumfordError(f"({x}, {y}) is not on the curve")
    var = curve.f.var
    u = expand_from_roots(xs, var)
    v = UniPoly([], var)
    for i, (xi, yi) in enumerate(pts):
        basis = UniPoly([1], var)
        for j, (xj, _) in enumerate(pts):
            if j != i:
                basis = basis * UniPoly([-xj, 1], var).scale(1 / (xi - xj))
        v = v + basis.scale(yi)
    n = at_p_inf + _ceil_half(curve.g)
    t = MumfordTriple(u, v, n)
    _check(curve, t)
    if not (u.is_rational() and v.is_rational()):
        raise MumfordError("triple is not defined over Q")
    return t


@dataclass(frozen=True)
class FiberData:
    c: object
    f_value: object
    y: object | None
    certificate: str


def vertical_fiber_data(curve: RealHyperellipticCurve, c) -> FiberData:
    """Ordinates over x = c and the principal divisor div(x - c) = fiber - P_inf - Pbar_inf."""
    c = normalize(c)
    value = curve.f.evaluate(c)
    if value == 0:
        raise MumfordError(f"x = {c} is a branch abscissa")
    ctx = c.d if isinstance(c, QuadraticElement) else None
    y = field_sqrt(value, ctx) if ctx is not None else field_sqrt(value)
    ord_ = y if y is not None else f"sqrt({value})"
    cert = f"div(x - ({c})) = ({c}, {ord_}) + ({c}, -{ord_}) - P_inf - Pbar_inf, f({c}) = {value}"
    return FiberData(c, value, y, cert)


@dataclass(frozen=True)
class FinalClass:
    curve: RealHyperellipticCurve
    divisor: str
    fibers: tuple
    d1: MumfordTriple
    d2: MumfordTriple
    star: StarTriple
    triple: MumfordTriple
    identity: MumfordTriple
    is_identity: bool
    adjust_trace: tuple
    swapped: bool = False


MODEL_622 = "x^8 - 105*x^6 + 1400*x^4 - 2625*x^2 + 625"


def _conjugate_pairs(abscissas) -> list[tuple]:
    """Split quadratic abscissas into Galois-conjugate pairs (each giving a rational u)."""
    left = list(abscissas)
    pairs = []
    while left:
        a = left.pop(0)
        if not isinstance(a, QuadraticElement):
            raise MumfordError(f"rational abscissa {a} has no conjugate partner")
        b = a.conj()
        if b not in left:
            raise MumfordError(f"conjugate of {a} is missing")
        left.remove(b)
        pairs.append((a, b))
    # positive-trace pair first
    return sorted(pairs, key=lambda ab: -normalize(ab[0] + ab[1]))


def _swap_infinity(t: MumfordTriple, g: int) -> MumfordTriple:
    # exchanging P_inf and Pbar_inf negates y and swaps the two infinite counts
    b = g - t.u.degree - t.n - g // 2
    return MumfordTriple(t.u, -t.v, b + _ceil_half(g))


def case622_final(swap_infinity: bool = False) -> FinalClass:
    """Class of half of div(alpha) on the fiber cover of the 6_2^2 surface curve.

    The divisor is pulled back from the conic x^2 + y^2 = 5, moved to the
    model y^2 = f(x) and split into two Galois-stable halves D1, D2, each a
    pair of Weierstrass points minus one vertical fiber.  Their sum is
    reduced by COMPOSE and ADJUST and compared with the identity.
    """
    from . import curvediv as cd

    cover = cd.fiber_cover_622()
    polar = cd.declared_polar("conic")
    div_alpha_base = cd.section_divisor(cd.CONIC, -2, polar) + cd.section_divisor(cd.CONIC, 2, polar)
    D = cd.pullback(cover, div_alpha_base).halve()
    W = cd.to_weierstrass(cover, D)

    f = expand_from_roots([cd.stereo_image(p) for p in cover.ramification])
    if f != parse_unipoly(MODEL_622):
        raise ArithmeticError(f"branch images give {f}, not the expected model")
    curve = RealHyperellipticCurve(f)
    g = curve.g

    if any(m != 1 for m in W.branch.values()) or any(m != -1 for m in W.fibers.values()):
        raise MumfordError(f"unexpected shape of the transported divisor: {W}")
    pairs = _conjugate_pairs(list(W.branch))
    if len(pairs) != len(W.fibers):
        raise MumfordError("each pair of branch points needs one fiber")
    fibers = tuple(vertical_fiber_data(curve, c) for c in W.fibers)

    halves = [class_from_branch_points(curve, pair) for pair in pairs]
    if swap_infinity:
        halves = [_swap_infinity(t, g) for t in halves]
    d1, d2 = halves
    star = compose(curve, d1, d2)
    trace: list = []
    out = adjust(curve, star, trace)
    ident = identity_triple(curve)
    return FinalClass(
        curve, str(D), fibers, d1, d2, star, out, ident, out == ident, tuple(trace), swap_infinity
    )
