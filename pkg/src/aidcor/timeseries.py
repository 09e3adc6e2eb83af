"""Auto and cross distance correlation functions of vector time series.

For lag ``k`` the statistic pairs ``x_j`` with ``y_{j+k}`` over the
``T - |k|`` overlapping time points. A positive peak lag therefore means
the first series leads the second: what happens in ``x`` at time ``j``
shows up in ``y`` at time ``j + k``.

Normalizing distance variances, and for the affine variant the whitening
covariances, are estimated once from the full series, so the auto
correlogram equals 1 at lag 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import LagTooLargeError, LengthMismatchError, SingularMatrixError, TooFewSamplesError
from .stats import as_samples, dcov2_sample, dcov_terms, whiten

Variant = Literal["standard", "affine"]

LAG_CONVENTION = (
    "lag k pairs x[j] with y[j+k]; positive lags indicate the first series leading the second"
)


@dataclass(frozen=True)
class VectorSeries:
    """A finite window of a vector-valued time series, shape ``(T, dim)``."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        v = as_samples(self.values, self.label or "series")
        if v.shape[0] < 2:
            raise TooFewSamplesError("a series needs at least 2 observations")
        object.__setattr__(self, "values", v)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dim(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class CorrelogramResult:
    lags: np.ndarray
    values: np.ndarray
    n_effective: np.ndarray
    variant: Variant
    kind: Literal["auto", "cross"]
    degenerate: bool = False
    labels: tuple = field(default=())

    def at(self, lag: int) -> float:
        idx = np.nonzero(self.lags == lag)[0]
        if not idx.size:
            raise KeyError(lag)
        return float(self.values[idx[0]])

    @property
    def peak_lag(self) -> int:
        return int(self.lags[int(np.argmax(self.values))])


def _series(x, name: str) -> VectorSeries:
    return x if isinstance(x, VectorSeries) else VectorSeries(np.asarray(x, dtype=float), name)


def _prepare(s: VectorSeries, variant: Variant) -> np.ndarray:
    if variant == "standard":
        return s.values
    if variant == "affine":
        return whiten(s.values)
    raise ValueError(f"unknown variant {variant!r}")


def _pair(x: np.ndarray, y: np.ndarray, k: int):
    t = x.shape[0]
    if k >= 0:
        return x[: t - k], y[k:]
    return x[-k:], y[: t + k]


def _check_lag(max_lag: int, length: int):
    if max_lag < 0:
        raise ValueError("max_lag must be nonnegative")
    if max_lag >= length - 1:
        raise LagTooLargeError(
            f"max_lag={max_lag} leaves fewer than 2 overlapping observations (series length {length})"
        )


def _lagged(xw, yw, lags, denom, variant, kind, labels):
    values = np.zeros(len(lags))
    n_eff = np.array([xw.shape[0] - abs(k) for k in lags])
    if denom > 0.0:
        for i, k in enumerate(lags):
            xs, ys = _pair(xw, yw, k)
            values[i] = min(math.sqrt(dcov2_sample(xs, ys) / denom), 1.0)
    return CorrelogramResult(np.asarray(lags), values, n_eff, variant, kind, denom <= 0.0, labels)


def auto_dcor(x, max_lag: int, variant: Variant = "affine",
              negative_lags: bool = False) -> CorrelogramResult:
    """Sample auto distance correlation function at lags ``0 .. max_lag``.

    With ``negative_lags=True`` the lags run over ``-max_lag .. max_lag``;
    the negative side pairs the same observations with roles swapped and
    mirrors the positive side. A constant series (or singular covariance,
    for the affine variant) gives zeros with ``degenerate=True``.
    """
    s = _series(x, "x")
    _check_lag(max_lag, s.length)
    lags = list(range(-max_lag if negative_lags else 0, max_lag + 1))
    try:
        xw = _prepare(s, variant)
    except SingularMatrixError:
        return CorrelogramResult(np.asarray(lags), np.zeros(len(lags)),
                                 np.array([s.length - abs(k) for k in lags]),
                                 variant, "auto", True, (s.label,))
    denom = dcov_terms(xw, xw)[1]
    return _lagged(xw, xw, lags, denom, variant, "auto", (s.label,))


def cross_dcor(x, y, max_lag: int, variant: Variant = "affine") -> CorrelogramResult:
    """Sample cross distance correlation function at lags ``-max_lag .. max_lag``.

    Lag ``k`` pairs ``x_j`` with ``y_{j+k}``; see :data:`LAG_CONVENTION`.
    The denominator is ``sqrt(V(x, x) V(y, y))`` from the full series.
    """
    sx, sy = _series(x, "x"), _series(y, "y")
    if sx.length != sy.length:
        raise LengthMismatchError(f"series lengths differ: {sx.length} vs {sy.length}")
    _check_lag(max_lag, sx.length)
    lags = list(range(-max_lag, max_lag + 1))
    try:
        xw, yw = _prepare(sx, variant), _prepare(sy, variant)
    except SingularMatrixError:
        return CorrelogramResult(np.asarray(lags), np.zeros(len(lags)),
                                 np.array([sx.length - abs(k) for k in lags]),
                                 variant, "cross", True, (sx.label, sy.label))
    _, vxx, vyy = dcov_terms(xw, yw)
    denom = math.sqrt(vxx * vyy) if vxx > 0.0 and vyy > 0.0 else 0.0
    return _lagged(xw, yw, lags, denom, variant, "cross", (sx.label, sy.label))
