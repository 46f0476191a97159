"""Two-bridge link groups <a, b | a w a^-1 w^-1> and their SL2 characters.

Covers the Schubert word, trace identities, the Hilbert-symbol entries of
the canonical quaternion algebra, and a floating-point sampler that checks
the canonical-surface polynomials against the group relator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .polyring import TriPoly, parse_tripoly

_CODES = {"a": 0, "A": 1, "b": 2, "B": 3}


@dataclass(frozen=True)
class Word:
    """Letters as (generator, exponent) pairs; ``str`` gives the aAbB spelling."""

    letters: tuple[tuple[str, int], ...]

    def __str__(self):
        return "".join(g if e == 1 else g.upper() for g, e in self.letters)

    def __len__(self):
        return len(self.letters)

    @classmethod
    def parse(cls, text: str) -> Word:
        out = []
        for ch in text:
            if ch not in _CODES:
                raise ValueError(f"bad letter {ch!r}")
            out.append((ch.lower(), 1 if ch.islower() else -1))
        return cls(tuple(out))

    def codes(self) -> np.ndarray:
        return np.array([_CODES[str(Word(((g, e),)))] for g, e in self.letters], dtype=np.int64)


def schubert_word(alpha: int, beta: int) -> Word:
    """w = b^e1 a^e2 b^e3 ... b^e_{alpha-1} with e_i = (-1)^floor(i beta / alpha)."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if beta >= alpha:
        raise ValueError(f"need beta < alpha, got ({alpha}, {beta})")
    if beta % 2 == 0:
        raise ValueError("beta must be odd")
    letters = []
    for i in range(1, alpha):
        gen = "b" if i % 2 else "a"
        letters.append((gen, -1 if (i * beta // alpha) % 2 else 1))
    return Word(tuple(letters))


@dataclass(frozen=True)
class LinkCase:
    tag: str
    name: str
    schubert: tuple[int, int]
    canonical_poly: TriPoly = field(compare=False)

    @property
    def word(self) -> Word:
        return schubert_word(*self.schubert)


# 6_3^2 is paired with the cubic carrying (x^2 + y^2 - 1) and 6_2^2 with the quartic
CASES: dict[str, LinkCase] = {
    "W512": LinkCase("W512", "5_1^2 (Whitehead)", (8, 3), parse_tripoly("z^3 - x*y*z^2 + (x^2 + y^2 - 2)*z - x*y")),
    "L622": LinkCase("L622", "6_2^2", (10, 3), parse_tripoly("z^4 - x*y*z^3 + (x^2 + y^2 - 3)*z^2 - x*y*z + 1")),
    "L632": LinkCase("L632", "6_3^2", (12, 5), parse_tripoly("z^3 - x*y*z^2 + (x^2 + y^2 - 1)*z - x*y")),
}


def get_case(tag: str) -> LinkCase:
    key = tag.upper()
    if key not in CASES:
        raise KeyError(f"unknown case {tag!r}; expected one of {', '.join(CASES)}")
    return CASES[key]


@dataclass(frozen=True)
class SymbolPair:
    alpha: TriPoly
    beta: TriPoly


ALPHA = parse_tripoly("x^2 - 4")
BETA = parse_tripoly("x^2 + y^2 + z^2 - x*y*z - 4")


def hilbert_symbol_pair(case: LinkCase | str | None = None) -> SymbolPair:
    """(tr(a)^2 - 4, tr([a, b]) - 2) in the coordinates x = tr a, y = tr b, z = tr ab."""
    return SymbolPair(ALPHA, BETA)


def commutator_trace(x, y, z):
    """tr[X, Y] from x = tr X, y = tr Y, z = tr XY."""
    return x * x + y * y + z * z - x * y * z - 2


# ---------------------------------------------------------------------------
# matrices


class NotUnimodular(ValueError):
    pass


def _check_unimodular(M, tol=1e-10):
    M = np.asarray(M)
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    exact = not np.issubdtype(M.dtype, np.inexact)
    if (exact and det != 1) or (not exact and abs(det - 1) > tol):
        raise NotUnimodular(f"det = {det}")


def word_matrix(w: Word | str, A, B) -> np.ndarray:
    """Product of letter matrices in order; inverses are adjugates."""
    if isinstance(w, str):
        w = Word.parse(w)
    _check_unimodular(A)
    _check_unimodular(B)
    return _kernels.word_product(w.codes(), A, B)


def relator_residual(case: LinkCase | str, A, B) -> float:
    """max |A W - W A| with W the case word evaluated at (A, B)."""
    if isinstance(case, str):
        case = get_case(case)
    A = np.asarray(A, dtype=np.complex128)
    W = word_matrix(case.word, A, B)
    return float(np.abs(A @ W - W @ A).max())


class ParabolicTrace(ValueError):
    pass


def lift_character(x: complex, y: complex, z: complex, guard: float = 1e-12):
    """Matrices A = [[p, 1], [0, 1/p]], B = [[q, 0], [r, 1/q]] with traces x, y and tr AB = z."""
    if abs(abs(x) - 2) < guard:
        raise ParabolicTrace(f"tr A = {x} is parabolic")
    if abs(abs(y) - 2) < guard:
        raise ParabolicTrace(f"tr B = {y} is parabolic")
    p = (x + np.sqrt(complex(x * x - 4))) / 2
    q = (y + np.sqrt(complex(y * y - 4))) / 2
    r = z - p * q - 1 / (p * q)
    A = np.array([[p, 1], [0, 1 / p]], dtype=np.complex128)
    B = np.array([[q, 0], [r, 1 / q]], dtype=np.complex128)
    return A, B


def trace_triple(A, B) -> tuple[complex, complex, complex]:
    A, B = np.asarray(A), np.asarray(B)
    return complex(np.trace(A)), complex(np.trace(B)), complex(np.trace(A @ B))


# ---------------------------------------------------------------------------
# sampling


@dataclass
class SampleReport:
    case: str
    samples: int
    roots_checked: int
    max_residual: float
    tol: float
    failures: list = field(default_factory=list)
    backend: str = ""

    @property
    def ok(self) -> bool:
        return not self.failures and self.max_residual < self.tol

    def as_dict(self) -> dict:
        return {
            "case": self.case,
            "samples": self.samples,
            "roots_checked": self.roots_checked,
            "max_residual": self.max_residual,
            "tol": self.tol,
            "failures": self.failures,
            "ok": self.ok,
        }


PARABOLIC_BAND = 0.05
MODULUS_RANGE = (0.5, 3.0)


def draw_traces(rng: np.random.Generator, n: int) -> np.ndarray:
    """n complex numbers with modulus in [0.5, 3] avoiding |.| within 0.05 of 2."""
    out = np.empty(n, dtype=np.complex128)
    lo, hi = MODULUS_RANGE
    k = 0
    while k < n:
        r = rng.uniform(lo, hi)
        if abs(r - 2) < PARABOLIC_BAND:
            continue
        out[k] = r * np.exp(1j * rng.uniform(0, 2 * math.pi))
        k += 1
    return out


def z_coefficients(poly: TriPoly, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Coefficient rows (highest power of z first) of poly(x_i, y_i, z)."""
    groups = poly.coefficients_in("z")
    deg = max(groups)
    out = np.zeros((len(x), deg + 1), dtype=np.complex128)
    for k, coeff in groups.items():
        col = np.zeros(len(x), dtype=np.complex128)
        for (i, j, _), c in coeff.terms.items():
            col += float(c) * x**i * y**j
        out[:, deg - k] = col
    return out


def sample_validate(
    case: LinkCase | str, n: int, tol: float = 1e-8, seed: int = 0, backend: str | None = None
) -> SampleReport:
    """Check that lifted points of {canonical_poly = 0} satisfy the relator."""
    if isinstance(case, str):
        case = get_case(case)
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    x = draw_traces(rng, n)
    y = draw_traces(rng, n)
    coeffs = z_coefficients(case.canonical_poly, x, y)
    roots, converged = _kernels.poly_roots(coeffs, backend=backend)
    failures = [
        {"sample": int(i), "reason": "root finder did not converge"}
        for i in np.flatnonzero(~converged)
    ]
    keep = np.flatnonzero(converged)
    d = roots.shape[1]
    xs = np.repeat(x[keep], d)
    ys = np.repeat(y[keep], d)
    zs = roots[keep].reshape(-1)
    res = _kernels.relator_residuals(case.word.codes(), xs, ys, zs, backend=backend)
    max_res = float(res.max()) if res.size else 0.0
    return SampleReport(
        case.tag, n, int(res.size), max_res, tol, failures, backend or _kernels.BACKEND
    )


def random_unimodular(rng: np.random.Generator, min_det: float = 0.1) -> np.ndarray:
    """Random complex matrix scaled to determinant 1 (small determinants are redrawn)."""
    while True:
        M = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
        if abs(det) >= min_det:
            return M / np.sqrt(det)
