"""Dense complex-Hermitian eigensolver.

Householder reduction to real symmetric tridiagonal form followed by
implicit-shift QL with eigenvector accumulation.  Deterministic: no
randomness, stable ascending ordering, and a global-phase fix that makes
the largest-magnitude component of every eigenvector real and positive
(ties broken by lowest index).

Sized for the dense N <= 512 problems in this package; not a general
replacement for LAPACK.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceFailure

_MAX_QL_ITERATIONS = 50


def _tridiagonalize(a: np.ndarray):
    """Unitary reduction A = Q T Q^H, T real symmetric tridiagonal.

    Returns (d, e, q) with d the diagonal and e the n-1 subdiagonal
    entries of T.
    """
    n = a.shape[0]
    a = np.array(a, dtype=complex)
    q = np.eye(n, dtype=complex)
    for k in range(n - 2):
        x = a[k + 1:, k].copy()
        xnorm = np.linalg.norm(x)
        if xnorm == 0.0:
            continue
        phase = x[0] / abs(x[0]) if abs(x[0]) > 0.0 else 1.0
        beta = -phase * xnorm
        v = x
        v[0] -= beta
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            continue
        v /= vnorm
        # Two-sided reflection (I - 2vv^H) A (I - 2vv^H) on the trailing block.
        sub = a[k + 1:, k + 1:]
        u = sub @ v
        c = float(np.real(np.vdot(v, u)))
        w = 2.0 * (u - c * v)
        sub -= np.outer(w, v.conj()) + np.outer(v, w.conj())
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
        a[k + 1, k] = beta
        a[k, k + 1] = np.conj(beta)
        qsub = q[:, k + 1:]
        q[:, k + 1:] = qsub - 2.0 * np.outer(qsub @ v, v.conj())
    # Rotate residual subdiagonal phases into q so T becomes real.
    d = np.real(np.diag(a)).copy()
    e = np.zeros(max(n - 1, 0))
    phase = 1.0 + 0.0j
    for i in range(n - 1):
        t = a[i + 1, i]
        mag = abs(t)
        e[i] = mag
        if mag > 0.0:
            phase = phase * (t / mag)
        q[:, i + 1] *= phase
    return d, e, q


def _ql_implicit_shift(d: np.ndarray, e: np.ndarray, z: np.ndarray):
    """Implicit-shift QL on tridiagonal (d, e); rotations accumulate into z."""
    n = d.size
    eps = np.finfo(float).eps
    e = np.append(e, 0.0)
    for l in range(n):
        iterations = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            iterations += 1
            if iterations > _MAX_QL_ITERATIONS:
                raise ConvergenceFailure(
                    f"QL iteration cap hit for eigenvalue index {l}"
                )
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                col = z[:, i + 1].copy()
                z[:, i + 1] = s * z[:, i] + c * col
                z[:, i] = c * z[:, i] - s * col
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return d, z


def phase_fixed(vector: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude component is real
    and positive; np.argmax breaks exact ties at the lowest index."""
    i = int(np.argmax(np.abs(vector)))
    pivot = vector[i]
    if pivot == 0.0:
        return vector
    return vector * (np.conj(pivot) / abs(pivot))


def hermitian_eigensystem(a: np.ndarray):
    """All eigenvalues and eigenvectors of a Hermitian matrix.

    Parameters
    ----------
    a : (n, n) complex Hermitian matrix.

    Returns
    -------
    values : (n,) real, ascending.
    vectors : (n, n) complex; column j is the unit eigenvector of values[j],
        phase-fixed per :func:`phase_fixed`.

    Raises
    ------
    ConvergenceFailure
        If the QL iteration cap is exceeded (pathological input).
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n == 1:
        return np.array([float(np.real(a[0, 0]))]), np.ones((1, 1), dtype=complex)
    d, e, q = _tridiagonalize(a)
    values, vectors = _ql_implicit_shift(d, e, q)
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = vectors[:, order]
    for j in range(n):
        vectors[:, j] = phase_fixed(vectors[:, j])
    return values, vectors
