"""Small dense symmetric linear algebra.

The eigensolver is a cyclic Jacobi method. It is slower than LAPACK but
self-contained and very accurate for the small matrices (covariances of a
few variables, cross-dependence matrices) handled here.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import NonFiniteError, SingularMatrixError

#: Default relative eigenvalue floor below which a matrix counts as singular.
SPD_REL_TOL = 1e-12


class EigDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_symmetric(a, *, rtol: float = 1e-10) -> np.ndarray:
    """Return ``a`` as an exactly symmetric float array.

    Raises ``ValueError`` if ``a`` is not square or is visibly asymmetric;
    round-off asymmetry below ``rtol`` (relative to the largest entry) is
    removed by averaging with the transpose.
    """
    a = np.array(a, dtype=float, ndmin=2)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError("matrix must have dimension >= 1")
    if not np.all(np.isfinite(a)):
        raise NonFiniteError("matrix has non-finite entries")
    scale = np.max(np.abs(a), initial=0.0)
    if np.max(np.abs(a - a.T), initial=0.0) > rtol * max(scale, 1e-300):
        raise ValueError("matrix is not symmetric")
    return 0.5 * (a + a.T)


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off < tol * norm:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                gap = a[q, q] - a[p, p]
                if abs(apq) <= 1e-18 * abs(gap):
                    # rotation angle below rounding; drop the entry
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = gap / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(1.0, theta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # A <- J^T A J with J the (p, q) rotation
                ap = a[:, p].copy()
                aq = a[:, q]
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :]
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    return np.diag(a).copy(), v


def eig_symmetric(a, *, tol: float = 1e-14, max_sweeps: int = 100) -> EigDecomposition:
    """Eigendecomposition of a real symmetric matrix.

    Parameters
    ----------
    a : array_like, shape (d, d)
        Symmetric matrix with finite entries.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm falls below
        ``tol * ||a||_F``.
    max_sweeps : int
        Upper bound on the number of cyclic sweeps.

    Returns
    -------
    EigDecomposition
        Eigenvalues in ascending order and the matching orthonormal
        eigenvectors as columns.
    """
    a = as_symmetric(a)
    w, v = _jacobi(a, tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    return EigDecomposition(w[order], v[:, order])


def eigvalsh(a) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix."""
    return eig_symmetric(a).eigenvalues


def inv_sqrt_spd(a, rel_tol: float = SPD_REL_TOL) -> np.ndarray:
    """Symmetric inverse square root ``a^{-1/2}`` of an SPD matrix.

    Raises
    ------
    SingularMatrixError
        If the smallest eigenvalue is below ``rel_tol`` times the largest.
    """
    w, q = eig_symmetric(a)
    if w[-1] <= 0.0 or w[0] < rel_tol * w[-1]:
        raise SingularMatrixError(
            f"matrix is not positive definite (eigenvalues {w[0]:.3g} .. {w[-1]:.3g})"
        )
    b = (q / np.sqrt(w)) @ q.T
    return 0.5 * (b + b.T)


def inv_spd(a, rel_tol: float = SPD_REL_TOL) -> np.ndarray:
    """Inverse of an SPD matrix through its eigendecomposition."""
    w, q = eig_symmetric(a)
    if w[-1] <= 0.0 or w[0] < rel_tol * w[-1]:
        raise SingularMatrixError(
            f"matrix is not positive definite (eigenvalues {w[0]:.3g} .. {w[-1]:.3g})"
        )
    b = (q / w) @ q.T
    return 0.5 * (b + b.T)


def cholesky(a) -> np.ndarray:
    """Lower-triangular Cholesky factor ``L`` with ``L @ L.T == a``."""
    a = as_symmetric(a)
    try:
        return np.linalg.cholesky(a)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrixError("matrix is not positive definite") from exc


def spectral_norm(a) -> float:
    """Largest absolute eigenvalue of a symmetric matrix."""
    w = eig_symmetric(a).eigenvalues
    return float(max(abs(w[0]), abs(w[-1])))
