import pytest

from azlinks.linkgroup import ALPHA, BETA, get_case
from azlinks.polyring import parse_tripoly, parse_unipoly
from azlinks.surfacecurve import (
    IndeterminateOrder,
    curve_of_reducibles,
    decomposition_identity,
    extendability_verdict,
    tame_symbol,
    transversal_order,
    whitehead_symbols,
)


@pytest.mark.parametrize(
    "tag, rem", [("W512", "2*z - x*y"), ("L632", "3*z - x*y"), ("L622", "z^2 - x*y*z + 1")]
)
def test_decomposition(tag, rem):
    assert decomposition_identity(tag) == parse_tripoly(rem)


def test_whitehead_lines():
    d = curve_of_reducibles("W512")
    assert [L.name for L in d.lines] == ["L1", "L2", "L3", "L4"]
    assert d.selected == "L3" and d.witness == (0, 2, 0)
    f = get_case("W512").canonical_poly
    for L in d.lines:
        assert L.restrict(f).is_zero() and L.restrict(BETA).is_zero()
    L1 = d.lines[0]
    assert L1.point(5) == (2, 5, 5)


@pytest.mark.parametrize("tag, witness", [("W512", (0, 2, 0)), ("L632", (0, 2, 0)), ("L622", (1, 2, 1))])
def test_witnesses(tag, witness):
    d = curve_of_reducibles(tag)
    f = get_case(tag).canonical_poly
    assert d.witness == witness
    assert f.evaluate(*witness) == 0 and BETA.evaluate(*witness) == 0
    assert ALPHA.evaluate(*witness) != 0
    assert all(g.evaluate(*witness) == 0 for g in d.generators)


def test_curve_generators():
    assert curve_of_reducibles("L632").generators[1] == parse_tripoly("9*x^2 + 9*y^2 - 2*x^2*y^2 - 36")
    assert curve_of_reducibles("L622").generators[0] == parse_tripoly("x^2 + y^2 - 5")


@pytest.mark.parametrize("tag", ["W512", "L632", "L622"])
def test_orders(tag):
    assert transversal_order(tag, ALPHA) == 0
    assert transversal_order(tag, BETA) == 1


def test_indeterminate_order():
    # beta^2 vanishes on C to order two: every minor vanishes at the witness
    with pytest.raises(IndeterminateOrder):
        transversal_order("L622", BETA * BETA)


def test_tame_symbol_whitehead():
    sym = tame_symbol("W512")
    assert (sym.ord_alpha, sym.ord_beta) == (0, 1)
    assert sym.restricted == parse_unipoly("x^2 - 4")
    assert sym.trivial is False


def test_all_lines_nontrivial():
    reports = {s.component: s for s in whitehead_symbols()}
    assert (reports["L1"].ord_alpha, reports["L1"].ord_beta) == (1, 1)
    assert reports["L1"].restricted == parse_unipoly("y^2 - 4", "y")
    assert not any(s.trivial for s in reports.values())


def test_implicit_symbols():
    for tag in ("L632", "L622"):
        sym = tame_symbol(tag)
        assert sym.symbol_rep == ALPHA and sym.trivial is None


@pytest.mark.parametrize("tag, kind", [("W512", "squarefree"), ("L632", "elliptic-deduction"), ("L622", "jacobian")])
def test_verdicts(tag, kind):
    r = extendability_verdict(tag)
    assert r.extends is False
    assert r.certificate["kind"] == kind
    assert r.tame_symbol == "x^2 - 4"


def test_l622_certificate_contents():
    cert = extendability_verdict("L622").certificate
    assert cert["triple"] == "x^2;-25;0" and cert["identity"] == "1;0;2"
    assert cert["compose"] == "x^4 - 15*x^2 + 25;0;2"
    assert cert["swapped_infinity_triple"] == cert["triple"]
