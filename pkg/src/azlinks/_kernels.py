"""Floating-point inner loops for the relator sampler.

Two interchangeable backends compute the same things:

* ``numba``: scalar loops compiled with ``@njit``;
* ``numpy``: the same algorithms vectorized over the sample axis.

The backend is chosen once at import from ``AZLINKS_BACKEND`` (``numba`` or
``numpy``); the default is numba when it imports, numpy otherwise.
Letters of a word are encoded as 0 = a, 1 = A (a^-1), 2 = b, 3 = B (b^-1).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

ROOT_TOL = 1e-12
ROOT_MAXITER = 200
ROOT_RESTARTS = 4


def _choose_backend() -> str:
    wanted = os.environ.get("AZLINKS_BACKEND", "").strip().lower()
    if wanted in ("numpy", "python", "0", "off"):
        return "numpy"
    if wanted == "numba" and not HAVE_NUMBA:
        raise RuntimeError("AZLINKS_BACKEND=numba but numba is not importable")
    return "numba" if HAVE_NUMBA else "numpy"


BACKEND = _choose_backend()


# ---------------------------------------------------------------------------
# numpy backend


def _lift_np(x, y, z):
    sx = np.sqrt(x * x - 4 + 0j)
    sy = np.sqrt(y * y - 4 + 0j)
    p = (x + sx) / 2
    q = (y + sy) / 2
    r = z - p * q - 1 / (p * q)
    n = x.shape[0]
    A = np.zeros((n, 2, 2), dtype=np.complex128)
    B = np.zeros((n, 2, 2), dtype=np.complex128)
    A[:, 0, 0] = p
    A[:, 0, 1] = 1
    A[:, 1, 1] = 1 / p
    B[:, 0, 0] = q
    B[:, 1, 0] = r
    B[:, 1, 1] = 1 / q
    return A, B


def _inv_np(M):
    out = np.empty_like(M)
    out[:, 0, 0] = M[:, 1, 1]
    out[:, 1, 1] = M[:, 0, 0]
    out[:, 0, 1] = -M[:, 0, 1]
    out[:, 1, 0] = -M[:, 1, 0]
    return out


def word_product_np(letters, A, B):
    """Batched product of letter matrices; A and B have shape (n, 2, 2)."""
    mats = (A, _inv_np(A), B, _inv_np(B))
    W = np.broadcast_to(np.eye(2, dtype=np.complex128), A.shape).copy()
    for code in letters:
        W = W @ mats[code]
    return W


def relator_residuals_np(letters, x, y, z):
    A, B = _lift_np(x, y, z)
    W = word_product_np(letters, A, B)
    return np.abs(A @ W - W @ A).reshape(len(x), 4).max(axis=1)


def _horner_np(coeffs, z):
    acc = np.zeros_like(z)
    for k in range(coeffs.shape[-1]):
        acc = acc * z + coeffs[..., k : k + 1]
    return acc


def poly_roots_np(coeffs, tol=ROOT_TOL, maxiter=ROOT_MAXITER):
    """All roots of each row of ``coeffs`` (highest degree first) by Durand-Kerner."""
    c = coeffs / coeffs[:, :1]
    n, d = c.shape[0], c.shape[1] - 1
    radius = 1 + np.abs(c[:, 1:]).max(axis=1)
    converged = np.zeros(n, dtype=np.bool_)
    roots = np.zeros((n, d), dtype=np.complex128)
    seed = (0.4 + 0.9j) ** np.arange(d)
    for attempt in range(ROOT_RESTARTS):
        todo = ~converged
        if not todo.any():
            break
        rot = np.exp(1j * 0.7 * attempt)
        zs = radius[todo, None] * seed[None, :] * rot
        cc = c[todo]
        done = np.zeros(zs.shape[0], dtype=np.bool_)
        for _ in range(maxiter):
            diff = zs[:, :, None] - zs[:, None, :]
            diff[:, np.arange(d), np.arange(d)] = 1
            step = _horner_np(cc, zs) / diff.prod(axis=2)
            zs = zs - step
            done = (np.abs(step) <= tol * (1 + np.abs(zs))).all(axis=1)
            if done.all():
                break
        zs = _newton_np(cc, zs)
        idx = np.flatnonzero(todo)
        roots[idx] = zs
        converged[idx] = done & np.isfinite(zs).all(axis=1)
    return roots, converged


def _newton_np(c, zs, steps=2):
    d = c.shape[1] - 1
    dc = c[:, :-1] * np.arange(d, 0, -1)[None, :]
    for _ in range(steps):
        val = _horner_np(c, zs)
        der = _horner_np(dc, zs)
        ok = der != 0
        zs = np.where(ok, zs - val / np.where(ok, der, 1), zs)
    return zs


# ---------------------------------------------------------------------------
# numba backend

if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _mul2(a, b):
        out = np.empty((2, 2), dtype=np.complex128)
        out[0, 0] = a[0, 0] * b[0, 0] + a[0, 1] * b[1, 0]
        out[0, 1] = a[0, 0] * b[0, 1] + a[0, 1] * b[1, 1]
        out[1, 0] = a[1, 0] * b[0, 0] + a[1, 1] * b[1, 0]
        out[1, 1] = a[1, 0] * b[0, 1] + a[1, 1] * b[1, 1]
        return out

    @numba.njit(cache=True)
    def _word_product_nb(letters, A, B):
        Ai = np.empty((2, 2), dtype=np.complex128)
        Ai[0, 0], Ai[0, 1], Ai[1, 0], Ai[1, 1] = A[1, 1], -A[0, 1], -A[1, 0], A[0, 0]
        Bi = np.empty((2, 2), dtype=np.complex128)
        Bi[0, 0], Bi[0, 1], Bi[1, 0], Bi[1, 1] = B[1, 1], -B[0, 1], -B[1, 0], B[0, 0]
        W = np.eye(2, dtype=np.complex128)
        for code in letters:
            if code == 0:
                W = _mul2(W, A)
            elif code == 1:
                W = _mul2(W, Ai)
            elif code == 2:
                W = _mul2(W, B)
            else:
                W = _mul2(W, Bi)
        return W

    @numba.njit(cache=True)
    def _relator_residuals_nb(letters, x, y, z):
        n = x.shape[0]
        out = np.empty(n, dtype=np.float64)
        A = np.zeros((2, 2), dtype=np.complex128)
        B = np.zeros((2, 2), dtype=np.complex128)
        for i in range(n):
            p = (x[i] + np.sqrt(x[i] * x[i] - 4 + 0j)) / 2
            q = (y[i] + np.sqrt(y[i] * y[i] - 4 + 0j)) / 2
            A[0, 0], A[0, 1], A[1, 0], A[1, 1] = p, 1, 0, 1 / p
            B[0, 0], B[0, 1], B[1, 0], B[1, 1] = q, 0, z[i] - p * q - 1 / (p * q), 1 / q
            W = _word_product_nb(letters, A, B)
            L = _mul2(A, W)
            R = _mul2(W, A)
            m = 0.0
            for r in range(2):
                for c in range(2):
                    m = max(m, abs(L[r, c] - R[r, c]))
            out[i] = m
        return out

    @numba.njit(cache=True)
    def _horner_nb(c, z):
        acc = 0j
        for k in range(c.shape[0]):
            acc = acc * z + c[k]
        return acc

    @numba.njit(cache=True)
    def _poly_roots_nb(coeffs, tol, maxiter, restarts):
        n, d = coeffs.shape[0], coeffs.shape[1] - 1
        roots = np.zeros((n, d), dtype=np.complex128)
        converged = np.zeros(n, dtype=np.bool_)
        zs = np.empty(d, dtype=np.complex128)
        steps = np.empty(d, dtype=np.complex128)
        dc = np.empty(d, dtype=np.complex128)
        for s in range(n):
            c = coeffs[s] / coeffs[s, 0]
            radius = 1.0
            for k in range(1, d + 1):
                radius = max(radius, 1 + abs(c[k]))
            for k in range(d):
                dc[k] = c[k] * (d - k)
            for attempt in range(restarts):
                rot = np.exp(1j * 0.7 * attempt)
                for k in range(d):
                    zs[k] = radius * (0.4 + 0.9j) ** k * rot
                done = False
                for _ in range(maxiter):
                    for i in range(d):
                        den = 1.0 + 0j
                        for j in range(d):
                            if j != i:
                                den *= zs[i] - zs[j]
                        steps[i] = _horner_nb(c, zs[i]) / den
                    done = True
                    for i in range(d):
                        zs[i] -= steps[i]
                        if abs(steps[i]) > tol * (1 + abs(zs[i])):
                            done = False
                    if done:
                        break
                for _ in range(2):
                    for i in range(d):
                        der = _horner_nb(dc, zs[i])
                        if der != 0:
                            zs[i] -= _horner_nb(c, zs[i]) / der
                finite = True
                for i in range(d):
                    if not np.isfinite(zs[i].real) or not np.isfinite(zs[i].imag):
                        finite = False
                roots[s, :] = zs
                if done and finite:
                    converged[s] = True
                    break
        return roots, converged


def word_product(letters, A, B):
    """Product of the letter matrices for a single pair (A, B)."""
    letters = np.asarray(letters, dtype=np.int64)
    A = np.asarray(A, dtype=np.complex128)
    B = np.asarray(B, dtype=np.complex128)
    if BACKEND == "numba":
        return _word_product_nb(letters, A, B)
    return word_product_np(letters, A[None], B[None])[0]


def relator_residuals(letters, x, y, z, backend: str | None = None):
    """max |A W - W A| for the normal-form lift of each trace triple."""
    letters = np.asarray(letters, dtype=np.int64)
    x, y, z = (np.asarray(v, dtype=np.complex128) for v in (x, y, z))
    if (backend or BACKEND) == "numba":
        return _relator_residuals_nb(letters, x, y, z)
    return relator_residuals_np(letters, x, y, z)


def poly_roots(coeffs, tol=ROOT_TOL, maxiter=ROOT_MAXITER, backend: str | None = None):
    """Roots of each row of ``coeffs`` (highest degree first) and a per-row convergence flag."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    if (backend or BACKEND) == "numba":
        return _poly_roots_nb(coeffs, tol, maxiter, ROOT_RESTARTS)
    return poly_roots_np(coeffs, tol, maxiter)
