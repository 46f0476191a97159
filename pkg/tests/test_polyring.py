import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from azlinks.exactfield import QuadraticElement
from azlinks.polyring import (
    NEG_INF,
    PolySyntaxError,
    TriPoly,
    UniPoly,
    UnresolvedCoordinates,
    bareiss_det,
    expand_from_roots,
    parse_tripoly,
    parse_unipoly,
    poly_divmod,
    poly_gcd,
    resultant_bivariate,
    roots_in_field,
    squarefree_decomposition,
    squarefree_part,
    sylvester_matrix,
    xgcd,
    xgcd2,
)

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)
polys = st.lists(coeff, min_size=0, max_size=7).map(UniPoly)
nonzero_polys = polys.filter(lambda p: not p.is_zero())


def test_zero_degree_and_printing():
    assert UniPoly([]).degree == NEG_INF
    assert UniPoly([0, 0]).is_zero()
    assert str(parse_unipoly("x^4 - 15*x^2 + 25")) == "x^4 - 15*x^2 + 25"
    assert str(UniPoly([Fraction(-5425, 8), 0, Fraction(-105, 2), 0, 1])) == "x^4 - 105/2*x^2 - 5425/8"


def test_parser_grammar():
    p = parse_tripoly("3*x^2*y - 7/2*z + 52.5")
    assert p.terms == {(2, 1, 0): 3, (0, 0, 1): Fraction(-7, 2), (0, 0, 0): Fraction(105, 2)}
    assert parse_tripoly("2x y") == parse_tripoly("2*x*y")
    assert parse_tripoly("(x + y)^2") == parse_tripoly("x^2 + 2*x*y + y^2")
    with pytest.raises(PolySyntaxError):
        parse_tripoly("x + w")
    with pytest.raises(PolySyntaxError):
        parse_unipoly("x + y")
    with pytest.raises(PolySyntaxError):
        parse_tripoly("x +")


def test_divmod_example():
    q, r = poly_divmod(parse_unipoly("x^3 - 1"), parse_unipoly("x - 1"))
    assert q == parse_unipoly("x^2 + x + 1") and r.is_zero()
    with pytest.raises(ZeroDivisionError):
        poly_divmod(parse_unipoly("x"), UniPoly([]))


@settings(max_examples=300, deadline=None)
@given(polys, nonzero_polys)
def test_divmod_certificate(f, g):
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.degree < g.degree


@settings(max_examples=300, deadline=None)
@given(polys, polys, polys)
def test_xgcd_certificate(f, g, h):
    if f.is_zero() and g.is_zero() and h.is_zero():
        with pytest.raises(ZeroDivisionError):
            xgcd(f, g, h)
        return
    w, c1, c2, c3 = xgcd(f, g, h)
    assert w.is_monic()
    assert c1 * f + c2 * g + c3 * h == w
    for p in (f, g, h):
        assert (p % w).is_zero()


def test_xgcd2_example():
    d, a, b = xgcd2(parse_unipoly("x^2 - 1"), parse_unipoly("x^2 - 3*x + 2"))
    assert d == parse_unipoly("x - 1")
    assert a * parse_unipoly("x^2 - 1") + b * parse_unipoly("x^2 - 3*x + 2") == d


def test_squarefree():
    f = parse_unipoly("(x - 1)^3 * (x + 2)^2 * (x - 5)")
    assert squarefree_part(f) == parse_unipoly("(x - 1)*(x + 2)*(x - 5)")
    parts = dict((m, p) for p, m in squarefree_decomposition(f))
    assert parts[1] == parse_unipoly("x - 5")
    assert parts[2] == parse_unipoly("x + 2")
    assert parts[3] == parse_unipoly("x - 1")
    assert squarefree_part(parse_unipoly("x^2 - 4")).degree == 2


def test_roots_in_field():
    roots = sorted(r for r, _ in roots_in_field(parse_unipoly("x^4 - 5*x^2 + 4")))
    assert roots == [-2, -1, 1, 2]
    quad = {r for r, _ in roots_in_field(parse_unipoly("x^2 - 5*x + 5"))}
    assert quad == {QuadraticElement(Fraction(5, 2), s * Fraction(1, 2), 5) for s in (1, -1)}
    assert roots_in_field(parse_unipoly("(x - 3)^2")) == [(3, 2)]
    with pytest.raises(UnresolvedCoordinates):
        roots_in_field(parse_unipoly("x^3 - 2"))


def test_expand_from_roots():
    r = QuadraticElement(Fraction(5, 2), Fraction(1, 2), 5)
    u = expand_from_roots([r, r.conj()])
    assert u == parse_unipoly("x^2 - 5*x + 5") and u.is_rational()


def test_resultants():
    h = parse_tripoly("9*x^2 + 9*y^2 - 2*x^2*y^2 - 36")
    assert resultant_bivariate(h, h.partial("x"), "y") == parse_unipoly("324*x^2")
    assert resultant_bivariate(parse_tripoly("y - 1"), parse_tripoly("y + 1"), "y") == UniPoly([2])
    # Res_y(y - x, y^2 - 2) = x^2 - 2
    assert resultant_bivariate(parse_tripoly("y - x"), parse_tripoly("y^2 - 2"), "y") == parse_unipoly("x^2 - 2")


def test_bareiss_against_cofactor():
    rng = random.Random(3)
    for _ in range(50):
        M = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
        expect = (
            M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
        )
        assert bareiss_det([row[:] for row in M]) == expect


def test_sylvester_shape():
    rows = sylvester_matrix([1, 2, 3], [4, 5])
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)
    assert rows[0] == [1, 2, 3]


def test_tripoly_ops():
    x, y, z = (TriPoly.var(v) for v in "xyz")
    p = x * y - 2 * z
    assert p.substitute("z", x * y / 2).is_zero()
    assert p.evaluate(2, 3, 3) == 0
    assert p.partial("x") == y
    assert (x + y).homogenize("z").is_homogeneous() is True
    basis = [parse_tripoly("y - 2"), parse_tripoly("z - x")]
    assert parse_tripoly("z*y - 2*x").reduce(basis).is_zero()


@pytest.mark.parametrize("seed", range(10))
def test_gradient_finite_difference(seed):
    rng = random.Random(seed)
    f = parse_tripoly("z^4 - x*y*z^3 + (x^2 + y^2 - 3)*z^2 - x*y*z + 1")
    pt = [Fraction(rng.randint(-30, 30), rng.randint(1, 10)) for _ in range(3)]
    step = 1e-6
    for i, d in enumerate(f.gradient()):
        exact = float(d.evaluate(*pt))
        lo, hi = [float(v) for v in pt], [float(v) for v in pt]
        lo[i] -= step
        hi[i] += step
        approx = (f.evaluate_float(*hi) - f.evaluate_float(*lo)).real / (2 * step)
        assert abs(approx - exact) <= 1e-6 * max(1.0, abs(exact))


def test_gcd_of_coprime():
    assert poly_gcd(parse_unipoly("x^2 + 1"), parse_unipoly("x - 1")) == UniPoly([1])
