"""Exact distance dependence measures for multivariate normal populations.

For ``(X, Y) ~ N_{p+q}(mu, Sigma)`` the affinely invariant distance
covariance depends on ``Sigma`` only through the eigenvalues of

    Lambda = Sigma_Y^{-1/2} Sigma_YX Sigma_X^{-1} Sigma_XY Sigma_Y^{-1/2},

and is a one-part zonal-polynomial series in ``Lambda``. Every function
that takes a :class:`GaussianSpec` has an ``*_from_eigenvalues`` (or
``SpectralLambda``-based) counterpart, which is how high-dimensional cases
are evaluated without forming ``p x p`` matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NotPositiveDefiniteError, NotScalarCovarianceError, SingularMatrixError
from .linalg import as_symmetric, eigvalsh, inv_spd, inv_sqrt_spd
from .specfun import (
    BOUNDARY_MARGIN,
    SeriesValue,
    SpectralLambda,
    _sum_adaptive,
    a_constant,
    c_ratio,
    const_c,
    hyp_onepart,
    onepart_products,
)

_HYP_NUMER = (0.5, -0.5, -0.5)


@dataclass(frozen=True)
class GaussianSpec:
    """Block covariance of a jointly normal vector ``(X, Y)``.

    ``sigma_xy`` is the ``p x q`` cross-covariance block. Positive
    definiteness of the full matrix is checked lazily by
    :func:`lambda_from_spec`.
    """

    sigma_x: np.ndarray
    sigma_y: np.ndarray
    sigma_xy: np.ndarray
    mean: Optional[np.ndarray] = None

    def __post_init__(self):
        sx = as_symmetric(self.sigma_x)
        sy = as_symmetric(self.sigma_y)
        sxy = np.array(self.sigma_xy, dtype=float, ndmin=2)
        if sxy.shape != (sx.shape[0], sy.shape[0]):
            raise ValueError(
                f"sigma_xy has shape {sxy.shape}, expected {(sx.shape[0], sy.shape[0])}"
            )
        if not np.all(np.isfinite(sxy)):
            raise ValueError("sigma_xy has non-finite entries")
        object.__setattr__(self, "sigma_x", sx)
        object.__setattr__(self, "sigma_y", sy)
        object.__setattr__(self, "sigma_xy", sxy)
        if self.mean is not None:
            mu = np.asarray(self.mean, dtype=float).ravel()
            if mu.shape != (sx.shape[0] + sy.shape[0],):
                raise ValueError(f"mean must have length {sx.shape[0] + sy.shape[0]}")
            object.__setattr__(self, "mean", mu)

    @property
    def p(self) -> int:
        return self.sigma_x.shape[0]

    @property
    def q(self) -> int:
        return self.sigma_y.shape[0]

    @property
    def sigma(self) -> np.ndarray:
        """The full ``(p + q) x (p + q)`` covariance matrix."""
        return np.block([[self.sigma_x, self.sigma_xy], [self.sigma_xy.T, self.sigma_y]])

    @property
    def mu(self) -> np.ndarray:
        return np.zeros(self.p + self.q) if self.mean is None else self.mean

    def transposed(self) -> "GaussianSpec":
        """The same law with the roles of ``X`` and ``Y`` exchanged."""
        mean = None if self.mean is None else np.concatenate([self.mean[self.p:], self.mean[: self.p]])
        return GaussianSpec(self.sigma_y, self.sigma_x, self.sigma_xy.T, mean)

    @classmethod
    def from_sigma(cls, sigma, p: int, mean=None) -> "GaussianSpec":
        """Split a full covariance matrix after the first ``p`` coordinates."""
        sigma = as_symmetric(sigma)
        return cls(sigma[:p, :p], sigma[p:, p:], sigma[:p, p:], mean)

    @classmethod
    def bivariate(cls, rho: float, sigma_x: float = 1.0, sigma_y: float = 1.0) -> "GaussianSpec":
        """Bivariate normal with correlation ``rho`` and the given standard deviations."""
        return cls([[sigma_x ** 2]], [[sigma_y ** 2]], [[rho * sigma_x * sigma_y]])

    @classmethod
    def from_lambda_xy(cls, lambda_xy) -> "GaussianSpec":
        """Identity marginals with cross-covariance block ``lambda_xy``."""
        lxy = np.array(lambda_xy, dtype=float, ndmin=2)
        p, q = lxy.shape
        return cls(np.eye(p), np.eye(q), lxy)

    @classmethod
    def equicorrelated(cls, rho: float, p: int, q: int) -> "GaussianSpec":
        """Identity marginals, ``Sigma_XY = rho * I_{p x q}`` (rectangular identity)."""
        return cls(np.eye(p), np.eye(q), rho * np.eye(p, q))


@dataclass(frozen=True)
class PopulationResult:
    """Population affine distance covariances and correlation."""

    v2_xy: float
    v2_xx: float
    v2_yy: float
    r_affine: float
    truncation_k: int
    tail_estimate: float

    def as_dict(self) -> dict:
        return {
            "v2_xy": self.v2_xy,
            "v2_xx": self.v2_xx,
            "v2_yy": self.v2_yy,
            "r_affine": self.r_affine,
            "truncation_k": self.truncation_k,
            "tail_estimate": self.tail_estimate,
        }


def _spectral(eigenvalues) -> SpectralLambda:
    if isinstance(eigenvalues, SpectralLambda):
        return eigenvalues
    try:
        return SpectralLambda(np.asarray(eigenvalues, dtype=float))
    except DomainError as exc:
        lam = np.asarray(eigenvalues, dtype=float)
        raise NotPositiveDefiniteError(str(exc), float(lam.max()) if lam.size else None) from exc


def lambda_matrix(spec: GaussianSpec) -> np.ndarray:
    """The ``q x q`` matrix ``Sigma_Y^{-1/2} Sigma_YX Sigma_X^{-1} Sigma_XY Sigma_Y^{-1/2}``."""
    try:
        sy_isqrt = inv_sqrt_spd(spec.sigma_y)
        sx_inv = inv_spd(spec.sigma_x)
    except SingularMatrixError as exc:
        raise NotPositiveDefiniteError(f"marginal covariance not positive definite: {exc}") from exc
    m = sy_isqrt @ spec.sigma_xy.T @ sx_inv @ spec.sigma_xy @ sy_isqrt
    return 0.5 * (m + m.T)


def lambda_from_spec(spec: GaussianSpec) -> SpectralLambda:
    """Eigenvalues of the squared cross-dependence matrix of ``spec``.

    Raises
    ------
    NotPositiveDefiniteError
        If a marginal covariance is singular or some eigenvalue is within
        ``1e-12`` of 1 (the joint covariance is then not positive definite).
    """
    w = eigvalsh(lambda_matrix(spec))
    if w[-1] >= 1.0 - BOUNDARY_MARGIN:
        raise NotPositiveDefiniteError(
            f"joint covariance not positive definite: Lambda has eigenvalue {w[-1]:.17g}",
            float(w[-1]),
        )
    return _spectral(w)


# -- affine distance covariance ---------------------------------------------

def _aidcov_weights(p: int, q: int, k_max: int) -> np.ndarray:
    # coefficient of e_k: (1 - 2^{1-2k}) (-1/2)_k^2 / ((p/2)_k (q/2)_k)
    k = np.arange(k_max, dtype=float)
    w = np.cumprod((k - 0.5) ** 2 / ((0.5 * p + k) * (0.5 * q + k)))
    return w * (1.0 - 2.0 ** (1.0 - 2.0 * (k + 1.0)))


def aidcov2_series(lam, p: int, q: int) -> SeriesValue:
    """Zonal series for the squared affine distance covariance.

    ``lam`` holds the eigenvalues of ``Lambda`` (a :class:`SpectralLambda`
    or a vector; zero eigenvalues may be omitted). The summand

        (2^{2k} - 2) / (k! 2^{2k}) (1/2)_k (-1/2)_k^2 / ((p/2)_k (q/2)_k) C_(k)(Lambda)

    is evaluated with ``C_(k) = k!/(1/2)_k e_k``, where ``e_k`` are the
    generating-function coefficients, so the factorials cancel exactly.
    """
    lam = _spectral(lam)
    const = 4.0 * math.pi * c_ratio(p) * c_ratio(q)

    def terms_upto(k):
        return _aidcov_weights(p, q, k) * onepart_products(lam, k)[1:]

    s = _sum_adaptive(terms_upto, lam.norm)
    return SeriesValue(const * s.value, s.truncation_k, const * s.tail_estimate)


def aidcov2_from_eigenvalues(eigenvalues, p: int, q: int) -> float:
    return aidcov2_series(eigenvalues, p, q).value


def aidcov2_gaussian(spec: GaussianSpec) -> float:
    """Squared affinely invariant distance covariance of a Gaussian spec."""
    return aidcov2_series(lambda_from_spec(spec), spec.p, spec.q).value


def aidcov2_hyp_from_eigenvalues(eigenvalues, p: int, q: int) -> float:
    """Same quantity as :func:`aidcov2_series`, via two matrix ``3F2`` calls.

    ``4 pi (c_{p-1}/c_p)(c_{q-1}/c_q) [3F2(Lambda) - 2 3F2(Lambda/4) + 1]`` with
    parameters ``(1/2, -1/2, -1/2; p/2, q/2)``.
    """
    lam = _spectral(eigenvalues)
    denom = (0.5 * p, 0.5 * q)
    f_full = hyp_onepart(_HYP_NUMER, denom, lam.eigenvalues)
    f_quarter = hyp_onepart(_HYP_NUMER, denom, lam.eigenvalues, scale=0.25)
    bracket = (f_full.value - 1.0) - 2.0 * (f_quarter.value - 1.0)
    return 4.0 * math.pi * c_ratio(p) * c_ratio(q) * max(bracket, 0.0)


def aidcov2_gaussian_hyp(spec: GaussianSpec) -> float:
    """Squared affine distance covariance through the ``3F2`` representation."""
    return aidcov2_hyp_from_eigenvalues(lambda_from_spec(spec), spec.p, spec.q)


def aidvar2_gaussian(p: int) -> float:
    """Squared affine distance variance ``4 pi (c_{p-1}/c_p)^2 A(p)``.

    It does not depend on the covariance of ``X``. For ``p = 1`` it equals
    ``4/3 - 4 (sqrt(3) - 1) / pi``.
    """
    if p < 1:
        raise DomainError("p must be >= 1")
    return 4.0 * math.pi * c_ratio(p) ** 2 * a_constant(p)


def _correlation(v2_xy: float, v2_xx: float, v2_yy: float) -> float:
    if v2_xx <= 0.0 or v2_yy <= 0.0:
        return 0.0
    return min(math.sqrt(max(v2_xy, 0.0) / math.sqrt(v2_xx * v2_yy)), 1.0)


def aidcor_from_eigenvalues(eigenvalues, p: int, q: int) -> PopulationResult:
    """Affine distance correlation from the eigenvalues of ``Lambda``."""
    s = aidcov2_series(eigenvalues, p, q)
    vxx, vyy = aidvar2_gaussian(p), aidvar2_gaussian(q)
    return PopulationResult(s.value, vxx, vyy, _correlation(s.value, vxx, vyy),
                            s.truncation_k, s.tail_estimate)


def aidcor_gaussian(spec: GaussianSpec) -> PopulationResult:
    """Population affinely invariant distance correlation of a Gaussian spec."""
    return aidcor_from_eigenvalues(lambda_from_spec(spec), spec.p, spec.q)


def pearson_to_dcor_gaussian(spec: GaussianSpec) -> float:
    """Distance correlation implied by Pearson covariances under Gaussianity.

    For ``p = q = 1`` this is the bivariate conversion of a correlation
    coefficient; for larger blocks it is the affine distance correlation.
    """
    return aidcor_gaussian(spec).r_affine


def pearson_to_dcor(rho: float) -> float:
    """Bivariate shortcut: distance correlation of a normal pair with correlation ``rho``."""
    if not -1.0 <= rho <= 1.0:
        raise DomainError("rho must lie in [-1, 1]")
    if abs(rho) == 1.0:
        return 1.0
    return pearson_to_dcor_gaussian(GaussianSpec.bivariate(rho))


def aidcor_boundary_limit(direction, p: int, q: int, j_range=range(10, 21)) -> float:
    """Limit of the affine distance correlation as ``Lambda`` approaches the boundary.

    The eigenvalues ``direction`` are rescaled so the largest equals
    ``1 - eps`` for ``eps = 2^-j``; the values are Richardson-extrapolated
    to ``eps = 0`` assuming a leading error linear in ``eps``.
    """
    d = np.asarray(direction, dtype=float)
    d = d / d.max()
    js = list(j_range)
    vals = [aidcor_from_eigenvalues(d * (1.0 - 2.0 ** -j), p, q).r_affine for j in js]
    # eps halves between consecutive j
    return 2.0 * vals[-1] - vals[-2]


# -- standard distance covariance, scalar marginal covariances -----------------

def _scalar_variance(m: np.ndarray, name: str) -> float:
    s = float(m[0, 0])
    if s <= 0 or not np.allclose(m, s * np.eye(m.shape[0]), rtol=0.0, atol=1e-12 * s):
        raise NotScalarCovarianceError(f"{name} is not a positive multiple of the identity")
    return s


def dcov2_gaussian_scalar(spec: GaussianSpec) -> float:
    """Standard squared distance covariance when ``Sigma_X``, ``Sigma_Y`` are scalar.

    With ``Sigma_X = sx^2 I`` and ``Sigma_Y = sy^2 I`` put ``L = Sigma_YX Sigma_XY``;
    then ``V^2 = 4 pi sx sy (c_{p-1}/c_p)(c_{q-1}/c_q)
    [(3F2(L/(sx sy)^2) - 1) - 2 (3F2(L/(4 (sx sy)^2)) - 1)]``.
    """
    vx = _scalar_variance(spec.sigma_x, "sigma_x")
    vy = _scalar_variance(spec.sigma_y, "sigma_y")
    lmat = spec.sigma_xy.T @ spec.sigma_xy
    w = eigvalsh(0.5 * (lmat + lmat.T)) / (vx * vy)
    if w[-1] >= 1.0 - BOUNDARY_MARGIN:
        raise NotPositiveDefiniteError(
            f"joint covariance not positive definite: scaled Lambda has eigenvalue {w[-1]:.17g}",
            float(w[-1]),
        )
    return math.sqrt(vx * vy) * aidcov2_hyp_from_eigenvalues(np.clip(w, 0.0, None), spec.p, spec.q)


# -- limit theorems ---------------------------------------------------------

def limit_smalllambda_ratio(p: int, q: int) -> float:
    """Limit of ``R~^2 / tr(Lambda)`` as ``tr(Lambda) -> 0``: ``1 / (4 p q sqrt(A(p) A(q)))``."""
    return 1.0 / (4.0 * p * q * math.sqrt(a_constant(p) * a_constant(q)))


def limit_highdim_equal(r: float, p: int) -> tuple[float, float]:
    """``(V~^2, R~)`` for ``p = q`` and ``Lambda = r^2 I_p``, from the exact series.

    As ``p`` grows these tend to ``(r^2 / 2, r)``.
    """
    if not 0.0 <= r <= 1.0:
        raise DomainError("r must lie in [0, 1]")
    if r == 0.0:
        return 0.0, 0.0
    if r == 1.0:
        v = aidvar2_gaussian(p)
        return v, 1.0
    res = aidcor_from_eigenvalues(np.full(p, r * r), p, p)
    return res.v2_xy, res.r_affine


def limit_fixed_q_ratio(q: int) -> float:
    """Limit of ``sqrt(p) R~^2 / tr(Lambda_p)`` as ``p -> oo`` with ``q`` fixed."""
    return 1.0 / (2.0 * q * math.sqrt(a_constant(q)))


def limit_fixed_q_dcov_ratio(q: int) -> float:
    """Limit of ``sqrt(p) V~^2 / tr(Lambda_p)``: ``sqrt(pi/2) c_{q-1} / (q c_q)``."""
    return math.sqrt(math.pi / 2.0) * const_c(q - 1) / (q * const_c(q))


# -- parameter grids ---------------------------------------------------------

def _grid_value(lambda_xy, p: int, q: int) -> float:
    lxy = np.array(lambda_xy, dtype=float, ndmin=2)
    m = lxy.T @ lxy
    w = eigvalsh(0.5 * (m + m.T))
    top = w[-1]
    if top > 1.0 + 1e-12:
        return math.nan
    if top >= 1.0 - BOUNDARY_MARGIN:
        return aidcor_boundary_limit(np.clip(w, 0.0, None), p, q)
    return aidcor_from_eigenvalues(np.clip(w, 0.0, None), p, q).r_affine


def settings_grid(r_values) -> np.ndarray:
    """Rows ``(r, R~[diag(0, r)], R~[diag(r, r)], R~[all entries r])`` for ``p = q = 2``.

    The all-``r`` setting is only positive definite for ``r <= 1/2``;
    outside that range the entry is NaN. Points exactly on the boundary
    use :func:`aidcor_boundary_limit`.
    """
    rows = []
    for r in r_values:
        rows.append((
            r,
            _grid_value([[0.0, 0.0], [0.0, r]], 2, 2),
            _grid_value([[r, 0.0], [0.0, r]], 2, 2),
            _grid_value([[r, r], [r, r]], 2, 2),
        ))
    return np.array(rows, dtype=float)


def rs_grid(r_values, s_values, layout: str = "diag") -> np.ndarray:
    """Rows ``(r, s, R~)`` on a grid.

    Layout ``"diag"``: ``p = q = 2``, ``Lambda_XY = diag(r, s)``.
    Layout ``"column"``: ``p = 2``, ``q = 1``, ``Lambda_XY = (r, s)'``; NaN where
    ``r^2 + s^2 > 1``.
    """
    rows = []
    for r in r_values:
        for s in s_values:
            if layout == "diag":
                val = _grid_value([[r, 0.0], [0.0, s]], 2, 2)
            elif layout == "column":
                val = _grid_value([[r], [s]], 2, 1)
            else:
                raise ValueError(f"unknown layout {layout!r}")
            rows.append((r, s, val))
    return np.array(rows, dtype=float)
