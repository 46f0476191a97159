from fractions import Fraction

import pytest

from azlinks.curvediv import (
    CONIC,
    CoverPoint,
    DeductionIncomplete,
    Divisor,
    Finite,
    InfinitePlace,
    ProjectivePlaneCurve,
    UnsupportedSingularity,
    blowup_node,
    declared_polar,
    elliptic_curve_h,
    fiber_cover_622,
    genus1_not_principal,
    hurwitz_genus,
    multiplicity_at,
    plane_genus,
    points_at_infinity,
    pullback,
    section_divisor,
    stereo_image,
    tangent_cone,
    to_weierstrass,
)
from azlinks.exactfield import QuadraticElement
from azlinks.hyperjac import MODEL_622
from azlinks.polyring import expand_from_roots, parse_unipoly, poly_gcd

H = ProjectivePlaneCurve.from_affine(elliptic_curve_h())


def test_h_points_at_infinity_are_nodes():
    pts = points_at_infinity(H)
    assert sorted(p for p, _ in pts) == [(0, 1, 0), (1, 0, 0)]
    assert all(kind == "singular" for _, kind in pts)
    for p, _ in pts:
        assert multiplicity_at(H, p) == 2
        rec = blowup_node(H, p)
        assert rec.resolved and rec.note == "node"
        assert [c.multiplicity for c in rec.children] == [1, 1]
        assert {c.point[2] for c in rec.children} == {
            QuadraticElement(0, Fraction(1, 3), 2),
            QuadraticElement(0, Fraction(-1, 3), 2),
        }


def test_genus_examples():
    assert plane_genus(H) == 1
    assert plane_genus(CONIC) == 0
    assert plane_genus("y^2 - x^3 - x") == 1
    assert plane_genus("y^2 - x^3 - x^2") == 0  # nodal cubic
    assert plane_genus("y - x^2") == 0
    with pytest.raises(UnsupportedSingularity):
        plane_genus("y^2 - x^3")  # cusp


def test_tangent_cone_of_node():
    C = ProjectivePlaneCurve.from_affine("y^2 - x^3 - x^2")
    assert str(tangent_cone(C, (0, 0, 1))) == "-x^2 + y^2"
    with pytest.raises(ValueError):
        blowup_node(C, (-1, 0, 1))  # smooth point


def test_hurwitz():
    assert hurwitz_genus(2, 0, [2] * 8) == 3
    assert hurwitz_genus(2, 0, [2] * 4) == 1
    with pytest.raises(ValueError):
        hurwitz_genus(2, 0, [2] * 3)


def test_section_divisors():
    h_polar = declared_polar("h")
    D = section_divisor(elliptic_curve_h(), -2, h_polar)
    assert D == Divisor({Finite(-2, 0): 2, InfinitePlace("Q1"): -1, InfinitePlace("Q2"): -1})
    assert D.degree == 0
    c = section_divisor(CONIC, 2, declared_polar("conic"))
    assert c.support[Finite(2, 1)] == 1 and c.support[Finite(2, -1)] == 1 and c.degree == 0


def test_divisor_algebra():
    P, Q = Finite(1, 2), Finite(2, 1)
    D = Divisor.point(P, 2) - Divisor.point(Q)
    assert (D + D).support == {P: 4, Q: -2}
    assert (D - D).is_zero()
    with pytest.raises(ValueError):
        Divisor.point(P, 3).halve()


def test_elliptic_deduction():
    polar = declared_polar("h")
    d1 = section_divisor(elliptic_curve_h(), -2, polar)
    d2 = section_divisor(elliptic_curve_h(), 2, polar)
    D = (d1 + d2).halve()
    res = genus1_not_principal(D, [("div(x+2)", d1), ("div(x-2)", d2)])
    assert not res.principal
    assert res.reduced == Divisor({Finite(2, 0): 1, Finite(-2, 0): -1})
    assert res.trace[1] == "D - div(x+2) = (2, 0) - (-2, 0)"
    assert genus1_not_principal(d1, [("div(x+2)", d1)]).principal
    with pytest.raises(DeductionIncomplete):
        genus1_not_principal(Divisor.point(Finite(1, 1), 2) - Divisor.point(Finite(0, 3), 2), [])


def test_stereographic_images():
    s5 = QuadraticElement.sqrt(5)
    assert stereo_image(Finite(0, -s5)) == 0
    assert stereo_image(Finite(0, s5)) == "inf"
    assert stereo_image(Finite(2, 1)) == QuadraticElement(Fraction(5, 2), Fraction(1, 2), 5)
    i = QuadraticElement.sqrt(-1)
    assert stereo_image((1, i, 0)) == QuadraticElement.sqrt(-5)
    assert stereo_image((1, -i, 0)) == -QuadraticElement.sqrt(-5)
    with pytest.raises(ValueError):
        stereo_image(Finite(1, 1))


def test_weierstrass_model():
    cover = fiber_cover_622()
    assert len(cover.ramification) == 8 and cover.genus == 3
    f = expand_from_roots([stereo_image(p) for p in cover.ramification])
    assert f == parse_unipoly(MODEL_622) and f.is_rational()
    assert poly_gcd(f, f.derivative()).degree == 0


def test_pullback_and_transport():
    cover = fiber_cover_622()
    polar = declared_polar("conic")
    base = section_divisor(CONIC, -2, polar) + section_divisor(CONIC, 2, polar)
    up = pullback(cover, base)
    assert all(m == 2 for p, m in up.support.items() if p.sheet == "ram")
    assert up.degree == 0
    W = to_weierstrass(cover, up.halve())
    assert set(W.fibers) == {QuadraticElement.sqrt(-5), -QuadraticElement.sqrt(-5)}
    assert len(W.branch) == 4
    # a split point with one sheet only cannot be transported
    lone = Divisor.point(CoverPoint(Finite(0, QuadraticElement.sqrt(5) * -1), "+"))
    with pytest.raises(ValueError):
        to_weierstrass(cover, lone)
