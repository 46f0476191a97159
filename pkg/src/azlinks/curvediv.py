"""Plane curves, their genus, divisors of coordinate functions, double covers.

Singularities are handled only when they are nodes (ordinary double
points); everything else raises :class:`UnsupportedSingularity`.  Points
live over Q or a single quadratic field.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .exactfield import QuadraticElement, Scalar, normalize
from .polyring import (
    TriPoly,
    UniPoly,
    UnresolvedCoordinates,
    parse_tripoly,
    poly_gcd,
    resultant_bivariate,
    roots_in_field,
)

PROJ = ("x", "y", "t")


class UnsupportedSingularity(ValueError):
    """A singular point that is not an ordinary double point."""


class DeductionIncomplete(ValueError):
    pass


# ---------------------------------------------------------------------------
# points and divisors


@dataclass(frozen=True)
class Finite:
    x: Scalar
    y: Scalar

    def __post_init__(self):
        object.__setattr__(self, "x", normalize(self.x))
        object.__setattr__(self, "y", normalize(self.y))

    def __str__(self):
        return f"({self.x}, {self.y})"


@dataclass(frozen=True)
class InfinitePlace:
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class CoverPoint:
    """A point of a double cover: ``sheet`` is 'ram' over a branch point, else a label."""

    base: Finite | InfinitePlace
    sheet: str

    def __str__(self):
        if self.sheet == "ram":
            return f"~{self.base}"
        if isinstance(self.base, InfinitePlace):
            return self.sheet
        return f"~{self.base}{self.sheet}"




class Divisor:
    """Finite formal sum of points with nonzero integer multiplicities."""

    __slots__ = ("support",)

    def __init__(self, support: dict | Iterable = ()):
        items = support.items() if isinstance(support, dict) else support
        acc: Counter = Counter()
        for p, m in items:
            acc[p] += m
        self.support = {p: m for p, m in acc.items() if m != 0}

    @classmethod
    def point(cls, p, m: int = 1) -> Divisor:
        return cls({p: m})

    @property
    def degree(self) -> int:
        return sum(self.support.values())

    def __add__(self, other: Divisor) -> Divisor:
        return Divisor(list(self.support.items()) + list(other.support.items()))

    def __neg__(self) -> Divisor:
        return Divisor({p: -m for p, m in self.support.items()})

    def __sub__(self, other: Divisor) -> Divisor:
        return self + (-other)

    def __mul__(self, k: int) -> Divisor:
        return Divisor({p: k * m for p, m in self.support.items()})

    __rmul__ = __mul__

    def halve(self) -> Divisor:
        if any(m % 2 for m in self.support.values()):
            raise ValueError(f"{self} has odd multiplicities")
        return Divisor({p: m // 2 for p, m in self.support.items()})

    def is_zero(self) -> bool:
        return not self.support

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.support == other.support

    def __hash__(self):
        return hash(frozenset(self.support.items()))

    def effective_part(self) -> Divisor:
        return Divisor({p: m for p, m in self.support.items() if m > 0})

    def __str__(self):
        if not self.support:
            return "0"
        parts = []
        for p, m in sorted(self.support.items(), key=lambda pm: (-pm[1], str(pm[0]))):
            mag = abs(m)
            body = str(p) if mag == 1 else f"{mag}*{p}"
            if not parts:
                parts.append(("-" if m < 0 else "") + body)
            else:
                parts.append((" - " if m < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Divisor({self})"


# ---------------------------------------------------------------------------
# projective plane curves


class ProjectivePlaneCurve:
    """Zero set of a homogeneous F(x, y, t) in P^2."""

    def __init__(self, F: TriPoly):
        F = F.rename(PROJ)
        if not F.is_homogeneous() or F.is_zero():
            raise ValueError(f"{F} is not a nonzero homogeneous polynomial")
        self.F = F
        self.n = F.total_degree

    @classmethod
    def from_affine(cls, f: TriPoly | str) -> ProjectivePlaneCurve:
        if isinstance(f, str):
            f = parse_tripoly(f, PROJ, allowed={"x", "y"})
        f = f.rename(PROJ)
        if f.degree_in("t") > 0:
            raise ValueError("affine equation must only involve x and y")
        return cls(f.homogenize("t"))

    @property
    def affine(self) -> TriPoly:
        return self.F.substitute("t", 1)

    def contains(self, point: Sequence) -> bool:
        return self.F.evaluate(*point) == 0

    def __str__(self):
        return str(self.F)


def is_singular(curve: ProjectivePlaneCurve, point: Sequence) -> bool:
    return all(curve.F.partial(i).evaluate(*point) == 0 for i in range(3))


def points_at_infinity(curve: ProjectivePlaneCurve) -> list[tuple[tuple, str]]:
    """Intersection with t = 0, each point tagged 'smooth' or 'singular'."""
    G = curve.F.substitute("t", 0)
    if G.is_zero():
        raise ValueError("the line at infinity is a component of the curve")
    pts: list[tuple] = []
    along = G.substitute("x", 1).to_unipoly("y")
    for m, _ in roots_in_field(along) if along.degree > 0 else []:
        pts.append((Fraction(1), m, Fraction(0)))
    if G.evaluate(0, 1, 0) == 0:
        pts.append((Fraction(0), Fraction(1), Fraction(0)))
    return [(p, "singular" if is_singular(curve, p) else "smooth") for p in pts]


def _chart(point: Sequence) -> int:
    for i, c in enumerate(point):
        if c != 0:
            return i
    raise ValueError("(0:0:0) is not a point")


def local_equation(curve: ProjectivePlaneCurve, point: Sequence) -> tuple[TriPoly, tuple[int, int]]:
    """Dehomogenize in a chart containing ``point`` and move the point to the origin.

    Returns the local polynomial (in the two surviving variables, which keep
    their slot in the triple) and the indices of those variables.
    """
    if not curve.contains(point):
        raise ValueError(f"{point} is not on the curve")
    k = _chart(point)
    scale = 1 / normalize(point[k])
    p = [normalize(c * scale) for c in point]
    G = curve.F.substitute(k, 1)
    free = tuple(i for i in range(3) if i != k)
    for i in free:
        if p[i] != 0:
            G = G.substitute(i, TriPoly.var(PROJ[i], PROJ) + p[i])
    return G, free


def _order(G: TriPoly) -> int:
    return min(sum(e) for e in G.terms)


def multiplicity_at(curve: ProjectivePlaneCurve, point: Sequence) -> int:
    """Lowest total degree of the local equation at ``point``."""
    G, _ = local_equation(curve, point)
    return _order(G)


def tangent_cone(curve: ProjectivePlaneCurve, point: Sequence) -> TriPoly:
    G, _ = local_equation(curve, point)
    m = _order(G)
    return TriPoly({e: c for e, c in G.terms.items() if sum(e) == m}, G.names)


@dataclass
class SingularityRecord:
    point: tuple
    multiplicity: int
    resolved: bool
    children: list = field(default_factory=list)
    note: str = ""

    def multiplicities(self) -> list[int]:
        out = [self.multiplicity]
        for c in self.children:
            out.extend(c.multiplicities())
        return out


def _strict_transform(G: TriPoly, u: int, v: int, swap: bool) -> TriPoly:
    """G(u, u*s) / u^2 (or with the roles of u and v exchanged), s stored in v's slot."""
    if swap:
        u, v = v, u
    su = TriPoly.var(PROJ[u], PROJ)
    sv = TriPoly.var(PROJ[v], PROJ)
    H = G.substitute(v, su * sv)
    out = {}
    for e, c in H.terms.items():
        if e[u] < 2:
            raise ArithmeticError("exceptional divisor does not divide twice")
        ne = list(e)
        ne[u] -= 2
        out[tuple(ne)] = c
    return TriPoly(out, PROJ)


def blowup_node(curve: ProjectivePlaneCurve, point: Sequence) -> SingularityRecord:
    """Blow up a double point once; resolved iff it is a node with smooth exceptional points."""
    G, (u, v) = local_equation(curve, point)
    m = _order(G)
    if m < 2:
        raise ValueError(f"{point} is a smooth point")
    if m != 2:
        raise UnsupportedSingularity(f"multiplicity {m} at {point}")
    cone = {e: c for e, c in G.terms.items() if sum(e) == 2}

    def coeff(i, j):
        e = [0, 0, 0]
        e[u], e[v] = i, j
        return cone.get(tuple(e), Fraction(0))

    a, b, c = coeff(2, 0), coeff(1, 1), coeff(0, 2)
    disc = normalize(b * b - 4 * a * c)
    if disc == 0:
        return SingularityRecord(tuple(point), 2, False, [], "tangent cone has a double line")
    children = []
    # chart v = u*s: exceptional points are roots of a + b s + c s^2
    G1 = _strict_transform(G, u, v, swap=False)
    slopes = UniPoly([a, b, c], "s")
    for s0, _ in roots_in_field(slopes) if slopes.degree > 0 else []:
        q = [Fraction(0)] * 3
        q[v] = s0
        children.append(_exceptional(G1, q))
    if c == 0:
        # direction u = 0 is a tangent; it lives at s' = 0 of the chart u = v*s'
        G2 = _strict_transform(G, u, v, swap=True)
        children.append(_exceptional(G2, [Fraction(0)] * 3))
    resolved = len(children) == 2 and all(ch.multiplicity == 1 for ch in children)
    note = "node" if resolved else "exceptional points not smooth"
    return SingularityRecord(tuple(point), 2, resolved, children, note)


def _exceptional(G: TriPoly, q: list) -> SingularityRecord:
    if G.evaluate(*q) != 0:
        raise ArithmeticError(f"exceptional point {q} not on the strict transform")
    smooth = any(G.partial(i).evaluate(*q) != 0 for i in range(3))
    return SingularityRecord(tuple(q), 1 if smooth else 2, smooth)


def affine_singular_points(curve: ProjectivePlaneCurve) -> list[tuple]:
    """Affine points where F, dF/dx, dF/dy all vanish, found through resultants."""
    f = curve.affine
    fx, fy = f.partial("x"), f.partial("y")
    common = None
    for g in (fx, fy):
        if g.is_zero():
            continue
        r = resultant_bivariate(f, g, "y")
        if r.is_zero():
            raise ValueError(f"{f} has a repeated component")
        r = UniPoly(r.coeffs, "x")
        common = r if common is None else poly_gcd(common, r)
    if common is None or common.degree <= 0:
        return []
    points = []
    for x0, _ in roots_in_field(common):
        polys = [p for p in (_y_poly(q, x0) for q in (f, fx, fy)) if not p.is_zero()]
        if not polys:
            raise ValueError(f"line x = {x0} lies on the curve")
        g = polys[0]
        for p in polys[1:]:
            g = poly_gcd(g, p)
        if g.degree <= 0:
            continue
        for y0, _ in roots_in_field(g):
            points.append((x0, y0, Fraction(1)))
    return points


def singular_points(curve: ProjectivePlaneCurve) -> list[tuple]:
    pts = affine_singular_points(curve)
    pts += [p for p, kind in points_at_infinity(curve) if kind == "singular"]
    return pts


def plane_genus(curve: ProjectivePlaneCurve | TriPoly | str) -> int:
    """Genus from (n-1)(n-2)/2 minus d(d-1)/2 over all infinitely near points."""
    if not isinstance(curve, ProjectivePlaneCurve):
        curve = ProjectivePlaneCurve.from_affine(curve)
    n = curve.n
    total = (n - 1) * (n - 2) // 2
    for p in singular_points(curve):
        rec = blowup_node(curve, p)
        if not rec.resolved:
            raise UnsupportedSingularity(f"{p}: {rec.note}")
        total -= sum(d * (d - 1) // 2 for d in rec.multiplicities())
    if total < 0:
        raise ArithmeticError("negative genus: curve is reducible")
    return total


def hurwitz_genus(cover_degree: int, base_genus: int, ramification_indices: Iterable[int]) -> int:
    """g with 2g - 2 = degree (2 base_genus - 2) + sum (e_P - 1)."""
    excess = sum(e - 1 for e in ramification_indices)
    total = cover_degree * (2 * base_genus - 2) + excess
    if total % 2 or total < -2:
        raise ValueError(f"2g - 2 = {total} is impossible")
    return total // 2 + 1


# ---------------------------------------------------------------------------
# divisors of x - c


def _as_affine(curve) -> TriPoly:
    if isinstance(curve, ProjectivePlaneCurve):
        return curve.affine
    if isinstance(curve, str):
        return parse_tripoly(curve, PROJ, allowed={"x", "y"})
    return curve.rename(PROJ)


def section_divisor(curve, c, polar: Divisor | None = None) -> Divisor:
    """Affine zeros of x - c on the curve, plus an optional declared polar part."""
    f = _as_affine(curve)
    c = normalize(c)
    g = f.substitute("x", c)
    if g.is_zero():
        raise ValueError(f"x = {c} is a component of the curve")
    py = _y_poly(f, c)
    D = Divisor()
    if py.degree > 0:
        D = Divisor([(Finite(c, y0), m) for y0, m in roots_in_field(py)])
    if polar is not None:
        D = D - polar
    return D


def polar_divisor_smooth_infinity(curve: ProjectivePlaneCurve, labels: Sequence[str]) -> Divisor:
    """Poles of x - c when the curve meets t = 0 transversally at smooth points."""
    pts = points_at_infinity(curve)
    if any(kind != "smooth" for _, kind in pts) or len(pts) != curve.n:
        raise UnsupportedSingularity("points at infinity are not simple and smooth")
    if len(labels) != len(pts):
        raise ValueError("one label per point at infinity")
    return Divisor([(InfinitePlace(lbl), 1) for lbl in labels])


# ---------------------------------------------------------------------------
# stereographic chart of x^2 + y^2 = 5 and the double cover


SQRT5 = QuadraticElement.sqrt(5)
INFINITY = "inf"
CONIC = parse_tripoly("x^2 + y^2 - 5", PROJ, allowed={"x", "y"})


def stereo_image(point, center=SQRT5):
    """Projection from (0, sqrt 5): (x, y) -> sqrt5 x / (sqrt5 - y).

    ``point`` is a Finite point or a projective triple; points at infinity
    (1 : b*sqrt(-1) : 0) go to -sqrt5 / (b i) = sqrt(-5) / b.
    """
    if isinstance(point, tuple) and len(point) == 3:
        X, Y, T = (normalize(v) for v in point)
        if T != 0:
            return stereo_image(Finite(X / T, Y / T), center)
        if X == 0:
            raise ValueError("(0:1:0) is not on the conic")
        m = normalize(Y / X)
        if not (isinstance(m, QuadraticElement) and m.d == -1 and m.a == 0):
            raise UnresolvedCoordinates(f"slope {m} at infinity is not a multiple of i")
        return QuadraticElement(0, 1 / m.b, -5)
    x, y = point.x, point.y
    if CONIC.evaluate(x, y) != 0:
        raise ValueError(f"{point} is not on x^2 + y^2 = 5")
    if y == center:
        return INFINITY
    return normalize(center * x / (center - y))


@dataclass
class DoubleCover:
    """Degree-2 cover of a rational plane curve, branched where ``discriminant`` vanishes."""

    base: TriPoly
    discriminant: TriPoly
    ramification: list
    split_infinite: dict
    infinite_points: dict = field(default_factory=dict)
    chart_center: Scalar = SQRT5

    def is_ramified(self, p: Finite) -> bool:
        if self.base.evaluate(p.x, p.y) != 0:
            raise ValueError(f"{p} is not on the base curve")
        return self.discriminant.evaluate(p.x, p.y) == 0

    @property
    def genus(self) -> int:
        return hurwitz_genus(2, 0, [2] * len(self.ramification))


def ramification_points(base: TriPoly, discriminant: TriPoly) -> list[Finite]:
    """Common points of base and discriminant, solved by eliminating y."""
    base, disc = base.rename(PROJ), discriminant.rename(PROJ)
    pts = []
    for factor in _split_products(disc):
        r = resultant_bivariate(base, factor, "y")
        for x0, _ in roots_in_field(r):
            g = poly_gcd(_y_poly(base, x0), _y_poly(factor, x0))
            for y0, _ in roots_in_field(g) if g.degree > 0 else []:
                pts.append(Finite(x0, y0))
    return sorted(set(pts), key=lambda p: (str(p.x), str(p.y)))


def _y_poly(f: TriPoly, x0) -> UniPoly:
    g = f.substitute("x", x0)
    return UniPoly([g.terms.get((0, k, 0), 0) for k in range(max(g.degree_in("y"), 0) + 1)], "y")


def _split_products(disc: TriPoly) -> list[TriPoly]:
    # x^2 y^2 - 4 = (xy - 2)(xy + 2): try the difference-of-squares split
    xy = TriPoly({(1, 1, 0): 1}, PROJ)
    for k in (2,):
        if disc == xy * xy - k * k:
            return [xy - k, xy + k]
    return [disc]


def fiber_cover_622() -> DoubleCover:
    """z^2 - x y z + 1 = 0 over x^2 + y^2 = 5; the fiber is ramified where x^2 y^2 = 4."""
    disc = parse_tripoly("x^2*y^2 - 4", PROJ, allowed={"x", "y"})
    return DoubleCover(
        base=CONIC,
        discriminant=disc,
        ramification=ramification_points(CONIC, disc),
        split_infinite={"Q1": ("Q~1", "Q~2"), "Q2": ("Q~3", "Q~4")},
        infinite_points={"Q1": _conic_infinity()[0], "Q2": _conic_infinity()[1]},
    )


def _conic_infinity() -> list[tuple]:
    return [p for p, _ in points_at_infinity(ProjectivePlaneCurve(CONIC.homogenize("t")))]


def pullback(cover: DoubleCover, D: Divisor) -> Divisor:
    """Ramified P -> 2 P~, split P -> P~+ + P~- (infinite places use declared labels)."""
    out = Divisor()
    for p, m in D.support.items():
        if isinstance(p, InfinitePlace):
            if p.label not in cover.split_infinite:
                raise ValueError(f"no fiber data for {p}")
            for lbl in cover.split_infinite[p.label]:
                out = out + Divisor.point(CoverPoint(p, lbl), m)
        elif cover.is_ramified(p):
            out = out + Divisor.point(CoverPoint(p, "ram"), 2 * m)
        else:
            out = out + Divisor.point(CoverPoint(p, "+"), m) + Divisor.point(CoverPoint(p, "-"), m)
    return out


@dataclass
class WeierstrassDivisor:
    """A divisor on y^2 = f(x) written as branch points plus whole vertical fibers.

    ``branch`` maps an abscissa a to the multiplicity of (a, 0); ``fibers``
    maps c to the multiplicity of the fiber over x = c, which is linearly
    equivalent to P_inf + Pbar_inf.
    """

    branch: dict
    fibers: dict

    def __str__(self):
        parts = [f"{m:+d}*({a}, 0)" for a, m in self.branch.items()]
        parts += [f"{m:+d}*fiber({c})" for c, m in self.fibers.items()]
        return " ".join(parts) if parts else "0"


def to_weierstrass(cover: DoubleCover, D: Divisor) -> WeierstrassDivisor:
    """Move a divisor on the cover to the model y^2 = f(x) through the stereographic chart.

    Ramified points go to (psi(P), 0).  Split points must appear with both
    sheets at equal multiplicity, since only the full fiber is transported.
    """
    branch: dict = {}
    sheets: dict = {}
    for p, m in D.support.items():
        if not isinstance(p, CoverPoint):
            raise TypeError(f"{p} is not a point of the cover")
        if p.sheet == "ram":
            a = stereo_image(p.base, cover.chart_center)
            branch[a] = branch.get(a, 0) + m
        else:
            sheets.setdefault(p.base, {})[p.sheet] = m
    fibers: dict = {}
    for base, mults in sheets.items():
        expected = cover.split_infinite.get(base.label, ()) if isinstance(base, InfinitePlace) else ("+", "-")
        if set(mults) != set(expected) or len(set(mults.values())) != 1:
            raise ValueError(f"sheets over {base} do not form whole fibers: {mults}")
        if isinstance(base, InfinitePlace):
            c = stereo_image(cover.infinite_points[base.label], cover.chart_center)
        else:
            c = stereo_image(base, cover.chart_center)
        fibers[c] = fibers.get(c, 0) + next(iter(mults.values()))
    return WeierstrassDivisor(branch, fibers)


# ---------------------------------------------------------------------------
# principality on a genus-1 curve


@dataclass
class Deduction:
    principal: bool
    trace: list[str]
    reduced: Divisor


def genus1_not_principal(
    D: Divisor, relations: Sequence[tuple[str, Divisor]], max_coeff: int = 2
) -> Deduction:
    """Subtract principal relations until D reaches 0 or P - Q.

    On a curve of positive genus P - Q is principal only when P = Q, so the
    reduced form decides principality.
    """
    if D.degree != 0:
        raise ValueError("divisor must have degree zero")
    trace = [f"D = {D}"]
    if D.is_zero():
        trace.append("D = 0 is principal")
        return Deduction(True, trace, D)
    combos = sorted(
        product(range(-max_coeff, max_coeff + 1), repeat=len(relations)),
        key=lambda cs: (sum(abs(c) for c in cs), [-c for c in cs]),
    )
    for cs in combos:
        E = D
        for c, (_, R) in zip(cs, relations):
            E = E - R * c
        sup = E.support
        if E.is_zero() or (len(sup) == 2 and sorted(sup.values()) == [-1, 1]):
            used = " ".join(
                f"{'-' if c > 0 else '+'} {abs(c) if abs(c) != 1 else ''}{name}"
                for c, (name, _) in zip(cs, relations)
                if c
            )
            trace.append(f"D {used} = {E}".replace("  ", " "))
            if E.is_zero():
                trace.append("reduced to 0, so D is principal")
                return Deduction(True, trace, E)
            P = next(p for p, m in sup.items() if m == 1)
            Q = next(p for p, m in sup.items() if m == -1)
            trace.append(f"{P} - {Q} principal would force {P} = {Q}, but {P} != {Q}")
            return Deduction(False, trace, E)
    raise DeductionIncomplete(f"no combination of relations reduces {D} to P - Q")


# ---------------------------------------------------------------------------
# curve table used by the command line


def elliptic_curve_h() -> TriPoly:
    return parse_tripoly("9*x^2 + 9*y^2 - 2*x^2*y^2 - 36", PROJ, allowed={"x", "y"})


def declared_polar(curve_name: str) -> Divisor:
    """Poles of x - c at infinity: computed for the conic, declared for h."""
    if curve_name == "conic":
        return polar_divisor_smooth_infinity(ProjectivePlaneCurve(CONIC.homogenize("t")), ["Q1", "Q2"])
    if curve_name == "h":
        # both nodes at infinity carry one simple pole each of x - c
        return Divisor([(InfinitePlace("Q1"), 1), (InfinitePlace("Q2"), 1)])
    raise KeyError(curve_name)


CURVES = {"h": elliptic_curve_h, "conic": lambda: CONIC}

