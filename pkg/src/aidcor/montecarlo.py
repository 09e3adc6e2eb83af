"""Seeded Monte Carlo experiments for the Gaussian formulas.

Every replicate draws from its own Philox stream keyed by
``(seed, stream, *key)``, so results do not depend on execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import NotPositiveDefiniteError, SingularMatrixError
from .gaussian import GaussianSpec, aidcor_gaussian
from .linalg import cholesky
from .stats import dcor_sample_affine, dcov2_sample


@dataclass(frozen=True)
class RngSpec:
    seed: int = 0
    stream: int = 0

    def generator(self, *key: int) -> np.random.Generator:
        """Independent generator for ``(seed, stream, *key)``."""
        ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream, *key))
        return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class McReport:
    estimate: float
    replicates: int
    std_error: float
    target: Optional[float] = None
    z_score: Optional[float] = None
    n: Optional[int] = None
    values: tuple = ()

    @property
    def median_abs_error(self) -> Optional[float]:
        if self.target is None:
            return None
        return float(np.median(np.abs(np.asarray(self.values) - self.target)))

    def as_dict(self) -> dict:
        d = {
            "estimate": self.estimate,
            "replicates": self.replicates,
            "std_error": self.std_error,
            "target": self.target,
            "z_score": self.z_score,
            "n": self.n,
        }
        if self.target is not None:
            d["median_abs_error"] = self.median_abs_error
        return d


def summarize(values: Sequence[float], target: Optional[float] = None,
              n: Optional[int] = None) -> McReport:
    """Mean, standard error of the mean, and z-score against ``target``."""
    v = np.asarray(values, dtype=float)
    m = len(v)
    est = math.fsum(v) / m
    se = float(np.std(v, ddof=1) / math.sqrt(m)) if m > 1 else 0.0
    z = None
    if target is not None and se > 0.0:
        z = (est - target) / se
    return McReport(est, m, se, target, z, n, tuple(float(t) for t in v))


def sample_mvn(spec: GaussianSpec, n: int, rng: RngSpec, *key: int):
    """Draw ``n`` samples of ``(X, Y)``; returns arrays of shape ``(n, p)`` and ``(n, q)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    try:
        chol = cholesky(spec.sigma)
    except SingularMatrixError as exc:
        raise NotPositiveDefiniteError("joint covariance not positive definite") from exc
    z = rng.generator(*key).standard_normal((n, spec.p + spec.q))
    joint = spec.mu + z @ chol.T
    return joint[:, : spec.p], joint[:, spec.p:]


def consistency_experiment(spec: GaussianSpec, n_grid: Sequence[int], replicates: int,
                           rng: RngSpec) -> list[McReport]:
    """Sample affine distance correlation against its population value, per ``n``."""
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    target = aidcor_gaussian(spec).r_affine
    reports = []
    for i, n in enumerate(n_grid):
        vals = []
        for rep in range(replicates):
            x, y = sample_mvn(spec, n, rng, i, rep)
            vals.append(dcor_sample_affine(x, y).r)
        reports.append(summarize(vals, target, n))
    return reports


def mc_standard_dcov_gaussian(spec: GaussianSpec, n: int, replicates: int, rng: RngSpec,
                              target: Optional[float] = None) -> McReport:
    """Monte Carlo estimate of the standard squared distance covariance ``V^2(X, Y)``."""
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    vals = [dcov2_sample(*sample_mvn(spec, n, rng, 0, rep)) for rep in range(replicates)]
    return summarize(vals, target, n)


def mc_affine_dcor_gaussian(spec: GaussianSpec, n: int, replicates: int, rng: RngSpec,
                            target: Optional[float] = None) -> McReport:
    """Monte Carlo mean of the sample affine distance correlation at one ``n``."""
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    vals = [dcor_sample_affine(*sample_mvn(spec, n, rng, 0, rep)).r for rep in range(replicates)]
    return summarize(vals, target, n)
