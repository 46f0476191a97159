"""Shared generators for randomized exact tests."""

from __future__ import annotations

import random
from fractions import Fraction

from azlinks.hyperjac import RealHyperellipticCurve, triple_from_points
from azlinks.polyring import UniPoly, expand_from_roots, poly_gcd

# filled by the acceptance tests, printed by the terminal summary hook
ACCEPTANCE_LINES: list[str] = []


def small_fraction(rng: random.Random, num: int = 9, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def curve_with_points(rng: random.Random, g: int, k: int):
    """y^2 = s(x)^2 + c * prod(x - x_i): the points (x_i, +-s(x_i)) are rational."""
    while True:
        s = UniPoly([rng.randint(-4, 4) for _ in range(g + 1)] + [1])
        xs = rng.sample(range(-12, 13), k)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        f = s * s + expand_from_roots(xs).scale(c)
        if f.degree == 2 * g + 2 and poly_gcd(f, f.derivative()).degree == 0:
            pts = [(Fraction(x), s.evaluate(Fraction(x))) for x in xs]
            return RealHyperellipticCurve(f), pts


def random_class(rng: random.Random, curve, pts, max_deg: int):
    """Triple for a random reduced divisor built from some of the rational points."""
    g = curve.g
    k = rng.randint(0, min(max_deg, g, len(pts)))
    chosen = rng.sample(pts, k)
    chosen = [(x, y if rng.random() < 0.5 else -y) for x, y in chosen]
    half = -(-g // 2)
    a = rng.randint(-half, g - k - half)
    return triple_from_points(curve, chosen, a, -k - a)


def branch_curve(rng: random.Random, g: int):
    """y^2 = prod(x - r_i) over 2g + 2 distinct rational roots."""
    roots = rng.sample(range(-15, 16), 2 * g + 2)
    return RealHyperellipticCurve(expand_from_roots(roots)), [Fraction(r) for r in roots]
