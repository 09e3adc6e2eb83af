"""Special functions for the Gaussian distance-covariance series.

Only one-part partitions ``(k)`` ever contribute to the matrix-argument
series used in this package, so zonal polynomials are evaluated through the
generating function

    prod_j (1 - lambda_j x)^(-1/2) = sum_k (1/2)_k C_(k)(Lambda) x^k / k!

rather than through a general-partition algorithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

#: Relative size of the last retained term at which a series is stopped.
SERIES_TOL = 1e-14
#: Hard cap on the number of series terms.
SERIES_K_MAX = 2000
#: Eigenvalues of a cross-dependence matrix must stay this far below 1.
BOUNDARY_MARGIN = 1e-12


@dataclass(frozen=True)
class SeriesValue:
    """A truncated series together with its bookkeeping."""

    value: float
    truncation_k: int
    tail_estimate: float


@dataclass(frozen=True)
class SpectralLambda:
    """Eigenvalues of a squared cross-dependence matrix, each in ``[0, 1)``."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.eigenvalues, dtype=float).ravel()
        if lam.size < 1:
            raise DomainError("need at least one eigenvalue")
        if not np.all(np.isfinite(lam)):
            raise DomainError("eigenvalues must be finite")
        if np.any(lam < -BOUNDARY_MARGIN):
            raise DomainError(f"negative eigenvalue {lam.min():.3g}")
        if np.any(lam >= 1.0 - BOUNDARY_MARGIN):
            raise DomainError(
                f"eigenvalue {lam.max():.17g} is not below 1; joint covariance not positive definite"
            )
        lam = np.sort(np.clip(lam, 0.0, None))[::-1]
        object.__setattr__(self, "eigenvalues", lam)

    @property
    def q(self) -> int:
        return int(self.eigenvalues.size)

    @property
    def norm(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def trace(self) -> float:
        return float(self.eigenvalues.sum())

    def scaled(self, factor: float) -> "SpectralLambda":
        return SpectralLambda(self.eigenvalues * factor)


@dataclass(frozen=True)
class ZonalCoefficients:
    """``values[k - 1] == C_(k)(Lambda)`` for ``k = 1 .. k_max``."""

    k_max: int
    values: np.ndarray

    def __getitem__(self, k: int) -> float:
        if not 1 <= k <= self.k_max:
            raise IndexError(k)
        return float(self.values[k - 1])


# -- scalar helpers ---------------------------------------------------------

def gamma_ratio(a: float, b: float) -> float:
    """``Gamma(a) / Gamma(b)`` for positive ``a`` and ``b``."""
    if a < 170.0 and b < 170.0:
        return math.gamma(a) / math.gamma(b)
    return math.exp(math.lgamma(a) - math.lgamma(b))


def const_c(p: int) -> float:
    """``c_p = pi^((p+1)/2) / Gamma((p+1)/2)``, defined for ``p >= 0``."""
    if p < 0:
        raise DomainError("p must be nonnegative")
    h = 0.5 * (p + 1)
    if h < 170.0:
        return math.pi ** h / math.gamma(h)
    return math.exp(h * math.log(math.pi) - math.lgamma(h))


def c_ratio(p: int) -> float:
    """``c_{p-1} / c_p = Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2))``, overflow-free."""
    if p < 1:
        raise DomainError("p must be >= 1")
    return gamma_ratio(0.5 * (p + 1), 0.5 * p) / math.sqrt(math.pi)


def rising_factorial(alpha: float, k: int) -> float:
    """``(alpha)_k = alpha (alpha + 1) ... (alpha + k - 1)``; ``(alpha)_0 = 1``."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    return math.prod(alpha + i for i in range(k)) if k else 1.0


# -- one-part zonal polynomials --------------------------------------------

def _eigenvalue_array(lam) -> np.ndarray:
    if isinstance(lam, SpectralLambda):
        return lam.eigenvalues
    lam = np.asarray(lam, dtype=float).ravel()
    if lam.size < 1 or not np.all(np.isfinite(lam)):
        raise DomainError("eigenvalues must be a nonempty finite vector")
    if np.any(lam < -BOUNDARY_MARGIN):
        raise DomainError(f"negative eigenvalue {lam.min():.3g}")
    return np.clip(lam, 0.0, None)


def onepart_products(lam, k_max: int) -> np.ndarray:
    """Coefficients ``e_0 .. e_{k_max}`` of ``prod_j (1 - lambda_j x)^(-1/2)``.

    Each factor expands as ``sum_i (1/2)_i lambda_j^i x^i / i!``; the
    factor sequences are convolved and truncated at degree ``k_max``.
    """
    lam = _eigenvalue_array(lam)
    i = np.arange(1, k_max + 1)
    half_binom = (i - 0.5) / i
    e = np.zeros(k_max + 1)
    e[0] = 1.0
    for lj in lam:
        if lj == 0.0:
            continue
        g = np.concatenate(([1.0], np.cumprod(half_binom * lj)))
        e = np.convolve(e, g)[: k_max + 1]
    return e


def _zonal_scale(k_max: int) -> np.ndarray:
    # k! / (1/2)_k for k = 1 .. k_max
    i = np.arange(1, k_max + 1)
    return np.cumprod(i / (i - 0.5))


def zonal_onepart(lam, k_max: int) -> ZonalCoefficients:
    """One-part zonal polynomials ``C_(1)(Lambda) .. C_(k_max)(Lambda)``.

    ``lam`` is a :class:`SpectralLambda` or any vector of nonnegative
    eigenvalues (eigenvalues equal to 1 are allowed here, which makes
    ``C_(k)(I_q)`` available).
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    e = onepart_products(lam, k_max)
    return ZonalCoefficients(k_max, _zonal_scale(k_max) * e[1:])


# -- series driver ----------------------------------------------------------

def _sum_adaptive(terms_upto: Callable[[int], np.ndarray], ratio_bound: float,
                  tol: float = SERIES_TOL, k_cap: int = SERIES_K_MAX) -> SeriesValue:
    """Sum ``terms_upto(K)`` (terms ``k = 1 .. K``) with adaptive truncation.

    The sum stops at the first term whose magnitude is below ``tol`` times
    the partial sum; ``K`` is doubled until that happens or ``k_cap`` is hit.
    """
    k = min(32, k_cap)
    while True:
        terms = terms_upto(k)
        partial = np.cumsum(terms)
        small = np.nonzero(np.abs(terms) <= tol * np.abs(partial))[0]
        if small.size or k >= k_cap:
            stop = int(small[0]) if small.size else k - 1
            last = float(abs(terms[stop]))
            if ratio_bound <= 0.0:
                tail = 0.0
            elif ratio_bound < 1.0:
                tail = last * ratio_bound / (1.0 - ratio_bound)
            else:
                tail = math.inf
            return SeriesValue(float(partial[stop]), stop + 1, tail)
        k = min(2 * k, k_cap)


def _rising_ratio_weights(numer: Sequence[float], denom: Sequence[float], k_max: int) -> np.ndarray:
    # prod (a)_k / prod (b)_k / k! for k = 1 .. k_max, by term ratios
    k = np.arange(k_max, dtype=float)
    ratio = np.ones(k_max)
    for a in numer:
        ratio *= a + k
    for b in denom:
        ratio /= b + k
    ratio /= k + 1.0
    return np.cumprod(ratio)


def hyp_onepart(numer: Sequence[float], denom: Sequence[float], lam, scale: float = 1.0,
                tol: float = SERIES_TOL, k_cap: int = SERIES_K_MAX) -> SeriesValue:
    """Matrix-argument hypergeometric series ``pFq(numer; denom; scale * Lambda)``.

    Only valid when ``1/2`` is one of the numerator parameters: then the
    partitional rising factorial ``(1/2)_kappa`` vanishes for every
    partition with more than one part, and the series reduces exactly to
    ``sum_k prod(a)_k / prod(b)_k C_(k)(scale * Lambda) / k!``.
    """
    if not any(a == 0.5 for a in numer):
        raise DomainError("one-part reduction requires 1/2 among the numerator parameters")
    if any(b <= 0 for b in denom):
        raise DomainError("denominator parameters must be positive")
    lam = _eigenvalue_array(lam) * scale
    norm = float(lam.max())
    if norm >= 1.0:
        raise DomainError(f"series argument has norm {norm:.17g} >= 1")

    def terms_upto(k):
        return _rising_ratio_weights(numer, denom, k) * zonal_onepart(lam, k).values

    partial = _sum_adaptive(terms_upto, norm, tol, k_cap)
    return SeriesValue(1.0 + partial.value, partial.truncation_k, partial.tail_estimate)


# -- Gauss 2F1(-1/2, -1/2; c; z) -------------------------------------------

def gauss_2f1_at_one(c: float) -> float:
    """``2F1(-1/2, -1/2; c; 1) = Gamma(c) Gamma(c + 1) / Gamma(c + 1/2)^2``."""
    if c <= 0:
        raise DomainError("c must be positive")
    if c + 1.0 < 170.0:
        g = math.gamma(c) / math.gamma(c + 0.5)
        return c * g * g
    return math.exp(math.lgamma(c) + math.lgamma(c + 1.0) - 2.0 * math.lgamma(c + 0.5))


def gauss_2f1_neg_half_series(c: float, z: float, tol: float = SERIES_TOL,
                              k_cap: int = SERIES_K_MAX) -> SeriesValue:
    """Series for ``2F1(-1/2, -1/2; c; z)`` on ``0 <= z < 1``, with bookkeeping."""
    if c <= 0:
        raise DomainError("c must be positive")
    if not 0.0 <= z < 1.0:
        raise DomainError(f"z={z!r} outside [0, 1)")
    partial = _neg_half_terms_sum(c, z, tol, k_cap)
    return SeriesValue(1.0 + partial.value, partial.truncation_k, partial.tail_estimate)


def _neg_half_terms_sum(c, z, tol=SERIES_TOL, k_cap=SERIES_K_MAX) -> SeriesValue:
    # the k >= 1 part of the 2F1(-1/2, -1/2; c; z) series
    if z == 0.0:
        return SeriesValue(0.0, 0, 0.0)

    def terms_upto(kk):
        k = np.arange(1, kk + 1, dtype=float)
        return np.cumprod((k - 1.5) ** 2 / ((c + k - 1.0) * k) * z)

    return _sum_adaptive(terms_upto, z, tol, k_cap)


def gauss_2f1_neg_half(c: float, z: float) -> float:
    """Gauss hypergeometric function ``2F1(-1/2, -1/2; c; z)``, ``0 <= z <= 1``.

    At ``z = 1`` Gauss's summation theorem gives the closed form. Below 1
    the power series is summed; its terms decay like ``k^(-c-2) z^k``, so
    for ``z`` very close to 1 the capped series loses accuracy.

    Examples
    --------
    >>> round(gauss_2f1_neg_half(0.5, 0.25), 10)  # rho asin(rho) + sqrt(1 - rho^2), rho = 1/2
    1.1278247916
    """
    if c <= 0:
        raise DomainError("c must be positive")
    if z > 1.0 or z < 0.0:
        raise DomainError(f"z={z!r} outside [0, 1]")
    if z == 1.0:
        return gauss_2f1_at_one(c)
    return gauss_2f1_neg_half_series(c, z).value


def a_constant(p: int) -> float:
    """Dimension constant ``A(p)`` of the Gaussian affine distance variance.

    ``A(p) = Gamma(p/2) Gamma(p/2 + 1) / Gamma((p + 1)/2)^2
    - 2 2F1(-1/2, -1/2; p/2; 1/4) + 1``, evaluated as
    ``[F(1) - 1] - 2 [F(1/4) - 1]`` to limit cancellation for large ``p``.
    """
    if p < 1:
        raise DomainError("p must be >= 1")
    c = 0.5 * p
    if c + 1.0 < 170.0:
        at_one_m1 = gauss_2f1_at_one(c) - 1.0
    else:
        at_one_m1 = math.expm1(math.lgamma(c) + math.lgamma(c + 1.0) - 2.0 * math.lgamma(c + 0.5))
    quarter_m1 = _neg_half_terms_sum(c, 0.25).value
    return at_one_m1 - 2.0 * quarter_m1
