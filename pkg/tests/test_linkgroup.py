import numpy as np
import pytest

from azlinks import _kernels
from azlinks.linkgroup import (
    ALPHA,
    BETA,
    CASES,
    NotUnimodular,
    ParabolicTrace,
    Word,
    commutator_trace,
    get_case,
    hilbert_symbol_pair,
    lift_character,
    random_unimodular,
    relator_residual,
    sample_validate,
    schubert_word,
    trace_triple,
    word_matrix,
    z_coefficients,
)
from azlinks.polyring import parse_tripoly


@pytest.mark.parametrize(
    "form, word",
    [((8, 3), "baBABab"), ((10, 3), "babABAbab"), ((12, 5), "baBAbabABab")],
)
def test_schubert_words(form, word):
    assert str(schubert_word(*form)) == word


def test_schubert_rejects():
    for bad in ((8, 4), (3, 5), (0, 1)):
        with pytest.raises(ValueError):
            schubert_word(*bad)


def test_word_roundtrip():
    assert str(Word.parse("baBABab")) == "baBABab"
    with pytest.raises(ValueError):
        Word.parse("bac")


def test_case_table():
    assert {c.schubert for c in CASES.values()} == {(8, 3), (10, 3), (12, 5)}
    assert get_case("w512").canonical_poly == parse_tripoly("z^3 - x*y*z^2 + (x^2 + y^2 - 2)*z - x*y")
    with pytest.raises(KeyError):
        get_case("L999")
    pair = hilbert_symbol_pair()
    assert pair.alpha == ALPHA and pair.beta == BETA


def test_commutator_trace_exact():
    assert commutator_trace(2, 2, 2) == 2
    assert BETA.evaluate(2, 2, 2) == commutator_trace(2, 2, 2) - 2


def test_trace_identities():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        X, Y = random_unimodular(rng), random_unimodular(rng)
        Yi = np.linalg.inv(Y)
        x, y, z = trace_triple(X, Y)
        assert abs(np.trace(X @ Y) - (x * y - np.trace(X @ Yi))) < 1e-9
        comm = X @ Y @ np.linalg.inv(X) @ Yi
        assert abs(np.trace(comm) - commutator_trace(x, y, z)) < 1e-9


def test_lift_character():
    A, B = lift_character(3.0 + 0.5j, -1.2 + 0j, 0.7 - 2j)
    x, y, z = trace_triple(A, B)
    assert abs(x - (3 + 0.5j)) < 1e-12 and abs(y + 1.2) < 1e-12 and abs(z - (0.7 - 2j)) < 1e-12
    with pytest.raises(ParabolicTrace):
        lift_character(2.0, 1.0, 1.0)


def test_word_matrix_checks_determinant():
    with pytest.raises(NotUnimodular):
        word_matrix("ab", np.array([[2, 0], [0, 2]]), np.eye(2))
    I = np.eye(2, dtype=complex)
    assert np.allclose(word_matrix("aAbB", I * 1, I * 1), I)


def test_relator_detects_wrong_points():
    # a generic point off the surface does not satisfy the relator
    A, B = lift_character(1.3 + 0.2j, 0.9 - 0.4j, 0.1 + 0.3j)
    assert relator_residual("W512", A, B) > 1e-3


@pytest.mark.parametrize("tag", ["W512", "L622", "L632"])
def test_sample_validate(tag):
    rep = sample_validate(tag, 100, tol=1e-8, seed=0)
    assert rep.ok and rep.max_residual < 1e-8
    assert rep.roots_checked == 100 * get_case(tag).canonical_poly.degree_in("z")


def test_swapped_pairing_fails():
    case = get_case("W512")
    wrong = type(case)(case.tag, case.name, (12, 5), case.canonical_poly)
    assert not sample_validate(wrong, 20, seed=1).ok


def test_z_coefficients():
    x = np.array([1.0 + 0j])
    y = np.array([2.0 + 0j])
    rows = z_coefficients(get_case("W512").canonical_poly, x, y)
    assert np.allclose(rows, [[1, -2, 3, -2]])


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not importable")
def test_backends_agree():
    rng = np.random.default_rng(11)
    coeffs = rng.normal(size=(40, 5)) + 1j * rng.normal(size=(40, 5))
    r1, c1 = _kernels.poly_roots(coeffs, backend="numba")
    r2, c2 = _kernels.poly_roots(coeffs, backend="numpy")
    assert c1.all() and c2.all()
    for a, b in zip(r1, r2):
        assert np.allclose(np.sort_complex(a), np.sort_complex(b), atol=1e-9)
    letters = schubert_word(10, 3).codes()
    x, y, z = (rng.normal(size=40) + 1j * rng.normal(size=40) + 3 for _ in range(3))
    assert np.allclose(
        _kernels.relator_residuals(letters, x, y, z, backend="numba"),
        _kernels.relator_residuals(letters, x, y, z, backend="numpy"),
    )
    for tag in CASES:
        a = sample_validate(tag, 30, seed=4, backend="numba")
        b = sample_validate(tag, 30, seed=4, backend="numpy")
        assert a.ok and b.ok


def test_roots_are_roots():
    coeffs = np.array([[1, 0, -5, 0, 4]], dtype=complex)
    roots, ok = _kernels.poly_roots(coeffs)
    assert ok.all()
    assert np.allclose(np.sort(roots[0].real), [-2, -1, 1, 2], atol=1e-10)
