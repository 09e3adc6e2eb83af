"""Sample distance covariance and distance correlation.

Samples are stored one observation per row: an array of shape ``(n, d)``
(a 1-D array is read as ``n`` scalar observations). All estimators are the
V-statistic (``1/n**2``) versions built from double-centered Euclidean
distance matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import (
    LengthMismatchError,
    NonFiniteError,
    SingularMatrixError,
    TooFewSamplesError,
)
from .linalg import as_symmetric, inv_sqrt_spd

# Above this sample count the n x n matrices are never materialized at once.
_DIRECT_MAX_N = 2048
_BLOCK_ROWS = 512


@dataclass(frozen=True)
class DcovResult:
    """Squared distance covariances and the derived distance correlation.

    ``degenerate`` is set when ``r`` is zero by convention because a
    distance variance vanished (standard variant) or a sample covariance
    was singular (affine variant).
    """

    v2: float
    v2_xx: float
    v2_yy: float
    r: float
    variant: Literal["standard", "affine"] = "standard"
    degenerate: bool = False

    def as_dict(self) -> dict:
        return {
            "v2": self.v2,
            "v2_xx": self.v2_xx,
            "v2_yy": self.v2_yy,
            "r": self.r,
            "degenerate": self.degenerate,
        }


def as_samples(x, name: str = "x") -> np.ndarray:
    """Coerce ``x`` to a finite float array of shape ``(n, d)``."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    if x.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got {x.ndim}-D")
    if x.shape[1] < 1:
        raise ValueError(f"{name} has no variables")
    if not np.all(np.isfinite(x)):
        raise NonFiniteError(f"{name} has non-finite entries")
    return x


def _cross_distances(xa: np.ndarray, xb: np.ndarray) -> np.ndarray:
    if xa.shape[1] == 1:
        return np.abs(xa - xb.T)
    sq = np.zeros((xa.shape[0], xb.shape[0]))
    for k in range(xa.shape[1]):
        diff = xa[:, k, None] - xb[None, :, k]
        sq += diff * diff
    return np.sqrt(sq)


def pairwise_distances(x) -> np.ndarray:
    """Euclidean distance matrix ``a[k, l] = |x_k - x_l|``."""
    x = as_samples(x)
    if x.shape[0] < 1:
        raise TooFewSamplesError("need at least one sample")
    d = _cross_distances(x, x)
    np.fill_diagonal(d, 0.0)
    return d


def double_center(d) -> np.ndarray:
    """Subtract row and column means and add back the grand mean."""
    d = np.asarray(d, dtype=float)
    row = d.mean(axis=1, keepdims=True)
    col = d.mean(axis=0, keepdims=True)
    return d - row - col + d.mean()


def _row_means(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    out = np.empty(n)
    for i0 in range(0, n, _BLOCK_ROWS):
        out[i0:i0 + _BLOCK_ROWS] = _cross_distances(x[i0:i0 + _BLOCK_ROWS], x).mean(axis=1)
    return out


def _dcov_terms_blocked(x: np.ndarray, y: np.ndarray):
    n = x.shape[0]
    ra, rb = _row_means(x), _row_means(y)
    ga, gb = ra.mean(), rb.mean()
    sxy = sxx = syy = 0.0
    for i0 in range(0, n, _BLOCK_ROWS):
        i1 = min(i0 + _BLOCK_ROWS, n)
        a = _cross_distances(x[i0:i1], x)
        a -= ra[i0:i1, None]
        a -= ra[None, :]
        a += ga
        b = _cross_distances(y[i0:i1], y)
        b -= rb[i0:i1, None]
        b -= rb[None, :]
        b += gb
        sxy += float(np.sum(a * b))
        sxx += float(np.sum(a * a))
        syy += float(np.sum(b * b))
    nn = float(n) * n
    return sxy / nn, sxx / nn, syy / nn


def dcov_terms(x, y):
    """``(V_n^2(x, y), V_n^2(x, x), V_n^2(y, y))`` from one pass over the data.

    Negative round-off in the cross term is clamped to zero.
    """
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    n = x.shape[0]
    if y.shape[0] != n:
        raise LengthMismatchError(f"x has {n} samples, y has {y.shape[0]}")
    if n < 1:
        raise TooFewSamplesError("need at least one sample")
    if n <= _DIRECT_MAX_N:
        a = double_center(pairwise_distances(x))
        b = double_center(pairwise_distances(y))
        nn = float(n) * n
        vxy, vxx, vyy = np.sum(a * b) / nn, np.sum(a * a) / nn, np.sum(b * b) / nn
    else:
        vxy, vxx, vyy = _dcov_terms_blocked(x, y)
    return max(float(vxy), 0.0), float(vxx), float(vyy)


def dcov2_sample(x, y) -> float:
    """Squared sample distance covariance ``V_n^2(x, y)``.

    Examples
    --------
    >>> dcov2_sample([0.0, 1.0], [0.0, 1.0])
    0.25
    """
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    n = x.shape[0]
    if y.shape[0] != n:
        raise LengthMismatchError(f"x has {n} samples, y has {y.shape[0]}")
    if n < 1:
        raise TooFewSamplesError("need at least one sample")
    if n > _DIRECT_MAX_N:
        return dcov_terms(x, y)[0]
    a = double_center(pairwise_distances(x))
    b = double_center(pairwise_distances(y))
    return max(float(np.sum(a * b) / (float(n) * n)), 0.0)


def _correlation(vxy: float, vxx: float, vyy: float) -> tuple[float, bool]:
    if vxx <= 0.0 or vyy <= 0.0:
        return 0.0, True
    r2 = vxy / math.sqrt(vxx * vyy)
    return min(math.sqrt(max(r2, 0.0)), 1.0), False


def dcor_sample(x, y) -> DcovResult:
    """Sample distance correlation, zero when either distance variance is zero."""
    vxy, vxx, vyy = dcov_terms(x, y)
    r, degenerate = _correlation(vxy, vxx, vyy)
    return DcovResult(vxy, vxx, vyy, r, "standard", degenerate)


def sample_covariance(x) -> np.ndarray:
    """Sample covariance matrix with denominator ``n - 1``."""
    x = as_samples(x)
    if x.shape[0] < 2:
        raise TooFewSamplesError("sample covariance needs at least 2 samples")
    xc = x - x.mean(axis=0)
    return (xc.T @ xc) / (x.shape[0] - 1)


def whiten(x, cov=None) -> np.ndarray:
    """Map every sample ``x_k`` to ``S^{-1/2} x_k``.

    ``S`` is the sample covariance unless ``cov`` supplies another estimate.
    The data are not recentered; distances are translation invariant.

    Raises
    ------
    SingularMatrixError
        If the covariance is singular (for example, samples confined to a
        lower-dimensional subspace, or a constant column).
    TooFewSamplesError
        If ``cov`` is omitted and there are fewer than two samples.
    """
    x = as_samples(x)
    s = sample_covariance(x) if cov is None else as_symmetric(cov)
    if s.shape != (x.shape[1], x.shape[1]):
        raise ValueError(f"covariance shape {s.shape} does not match dimension {x.shape[1]}")
    return x @ inv_sqrt_spd(s)


def dcor_sample_affine(x, y, cov_x=None, cov_y=None) -> DcovResult:
    """Sample affinely invariant distance correlation.

    Both samples are whitened with their own covariance (sample covariance
    by default) and the standard statistic is applied. A singular covariance
    makes every output zero with ``degenerate=True``.
    """
    x = as_samples(x, "x")
    y = as_samples(y, "y")
    if x.shape[0] != y.shape[0]:
        raise LengthMismatchError(f"x has {x.shape[0]} samples, y has {y.shape[0]}")
    try:
        xw = whiten(x, cov_x)
        yw = whiten(y, cov_y)
    except SingularMatrixError:
        return DcovResult(0.0, 0.0, 0.0, 0.0, "affine", True)
    res = dcor_sample(xw, yw)
    return DcovResult(res.v2, res.v2_xx, res.v2_yy, res.r, "affine", res.degenerate)


def dcor(x, y, affine: bool = False, cov_x: Optional[np.ndarray] = None,
         cov_y: Optional[np.ndarray] = None) -> DcovResult:
    """Dispatch to :func:`dcor_sample` or :func:`dcor_sample_affine`."""
    if affine:
        return dcor_sample_affine(x, y, cov_x, cov_y)
    return dcor_sample(x, y)
