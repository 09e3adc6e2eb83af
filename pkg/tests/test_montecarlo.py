import numpy as np
import pytest

from aidcor.errors import NotPositiveDefiniteError
from aidcor.gaussian import GaussianSpec, aidcor_gaussian
from aidcor.montecarlo import (
    RngSpec,
    consistency_experiment,
    mc_affine_dcor_gaussian,
    mc_standard_dcov_gaussian,
    sample_mvn,
    summarize,
)


def test_determinism():
    spec = GaussianSpec.bivariate(0.3)
    a = sample_mvn(spec, 50, RngSpec(7), 1, 2)
    b = sample_mvn(spec, 50, RngSpec(7), 1, 2)
    np.testing.assert_array_equal(a[0], b[0])
    np.testing.assert_array_equal(a[1], b[1])
    c = sample_mvn(spec, 50, RngSpec(7), 1, 3)
    assert not np.array_equal(a[0], c[0])
    r1 = mc_affine_dcor_gaussian(spec, 30, 4, RngSpec(11))
    r2 = mc_affine_dcor_gaussian(spec, 30, 4, RngSpec(11))
    assert r1 == r2


def test_identity_covariance_recovered():
    spec = GaussianSpec(np.eye(1), np.eye(1), np.zeros((1, 1)))
    x, y = sample_mvn(spec, 10_000, RngSpec(3))
    cov = np.cov(np.hstack([x, y]).T)
    assert np.abs(cov - np.eye(2)).max() < 0.05


def test_cholesky_sampling_3x3():
    sigma = np.array([[2.0, 0.6, -0.4], [0.6, 1.0, 0.3], [-0.4, 0.3, 1.5]])
    spec = GaussianSpec.from_sigma(sigma, 2, mean=[1.0, -2.0, 0.5])
    x, y = sample_mvn(spec, 100_000, RngSpec(5))
    z = np.hstack([x, y])
    assert np.abs(np.cov(z.T) - sigma).max() < 0.02
    assert np.abs(z.mean(axis=0) - spec.mu).max() < 0.02


def test_small_instances():
    spec = GaussianSpec.bivariate(0.2)
    x, y = sample_mvn(spec, 1, RngSpec(0))
    assert x.shape == (1, 1) and y.shape == (1, 1)
    rep = mc_standard_dcov_gaussian(spec, 2, 1, RngSpec(0))
    assert np.isfinite(rep.estimate) and rep.std_error == 0.0 and rep.z_score is None
    with pytest.raises(ValueError):
        mc_standard_dcov_gaussian(spec, 10, 0, RngSpec(0))


def test_not_positive_definite():
    spec = GaussianSpec.bivariate(1.0)
    with pytest.raises(NotPositiveDefiniteError):
        sample_mvn(spec, 10, RngSpec(0))


def test_summarize():
    rep = summarize([1.0, 2.0, 3.0], target=1.0, n=5)
    assert rep.estimate == 2.0
    assert rep.std_error == pytest.approx(1 / np.sqrt(3))
    assert rep.z_score == pytest.approx(np.sqrt(3))
    assert rep.median_abs_error == 1.0
    assert rep.as_dict()["n"] == 5


def test_independence_estimates_decline():
    spec = GaussianSpec.bivariate(0.0)
    reps = consistency_experiment(spec, [50, 400, 3200], 8, RngSpec(2))
    est = [r.estimate for r in reps]
    assert est[0] > est[1] > est[2] > 0.0
    assert reps[0].target == 0.0


@pytest.mark.slow
def test_error_trend_across_seeds():
    # at rho = 0 the error is the positive bias, the cleanest trend to test
    spec = GaussianSpec.bivariate(0.0)
    good = 0
    for seed in range(10):
        reps = consistency_experiment(spec, [25, 100, 400, 1600], 10, RngSpec(seed))
        med = [r.median_abs_error for r in reps]
        good += all(a > b for a, b in zip(med, med[1:]))
    assert good >= 9


def test_targets_propagate():
    spec = GaussianSpec.bivariate(0.4)
    target = aidcor_gaussian(spec).r_affine
    rep = mc_affine_dcor_gaussian(spec, 200, 10, RngSpec(1), target)
    assert rep.target == target and rep.z_score is not None
    assert abs(rep.z_score) < 5
