"""Acceptance criteria, one test per criterion, at the pinned tolerances."""

import math

import numpy as np
import pytest

from aidcor.gaussian import (
    GaussianSpec,
    aidcor_from_eigenvalues,
    aidcor_gaussian,
    aidcov2_gaussian,
    aidcov2_gaussian_hyp,
    aidvar2_gaussian,
    dcov2_gaussian_scalar,
    lambda_from_spec,
    limit_fixed_q_ratio,
    limit_smalllambda_ratio,
)
from aidcor.montecarlo import RngSpec, consistency_experiment, mc_standard_dcov_gaussian
from aidcor.stats import dcor_sample, dcor_sample_affine, dcov2_sample
from aidcor.timeseries import auto_dcor, cross_dcor

from .oracles import bivariate_aidcov2, dcov2_s123, random_spec


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_c01_variance_p1(criterion):
    exact = 4 / 3 - 4 * (math.sqrt(3) - 1) / math.pi
    err = _rel(aidvar2_gaussian(1), exact)
    criterion(1, "variance p = 1 closed form", err <= 1e-12, f"rel err {err:.1e}")


def test_c02_variance_p3(criterion):
    exact = 2 - 4 * (3 * math.sqrt(3) - 4) / math.pi
    err = _rel(aidvar2_gaussian(3), exact)
    criterion(2, "variance p = 3 closed form", err <= 1e-12, f"rel err {err:.1e}")


def test_c03_bivariate_reduction(criterion):
    errs = []
    for rho in np.round(np.arange(0.0, 0.95, 0.1), 10):
        series = aidcov2_gaussian(GaussianSpec.bivariate(rho))
        closed = bivariate_aidcov2(rho)
        errs.append(abs(series - closed) if rho == 0 else _rel(series, closed))
    worst = max(errs)
    criterion(3, "bivariate series vs arcsine closed form", worst <= 1e-10, f"max rel err {worst:.1e}")


def test_c04_path_equivalence(criterion):
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        p, q = (int(v) for v in rng.integers(1, 7, size=2))
        spec = random_spec(rng, p, q)
        worst = max(worst, _rel(aidcov2_gaussian_hyp(spec), aidcov2_gaussian(spec)))
    criterion(4, "series vs hypergeometric path, 100 specs", worst <= 1e-12, f"max rel err {worst:.1e}")


def test_c05_interchange(criterion):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(100):
        p, q = (int(v) for v in rng.integers(1, 7, size=2))
        spec = random_spec(rng, p, q)
        worst = max(worst, _rel(aidcov2_gaussian(spec.transposed()), aidcov2_gaussian(spec)))
    criterion(5, "X <-> Y interchange, 100 specs", worst <= 1e-12, f"max rel err {worst:.1e}")


def test_c06_small_lambda_constant(criterion):
    tr = 1e-6
    errs = []
    for p, q in ((1, 1), (2, 2), (3, 2)):
        lam = np.full(min(p, q), tr / min(p, q))
        r = aidcor_from_eigenvalues(lam, p, q).r_affine
        errs.append(_rel(r * r / tr, limit_smalllambda_ratio(p, q)))
    slope = math.sqrt(limit_smalllambda_ratio(1, 1))
    slope_exact = 1 / (2 * math.sqrt(1 + math.pi / 3 - math.sqrt(3)))
    ok = max(errs) <= 1e-4 and _rel(slope, slope_exact) <= 1e-12 and abs(slope - 0.890662) < 2e-6
    criterion(6, "small-Lambda limit constant", ok, f"max rel err {max(errs):.1e}, slope {slope:.6f}")


def test_c07_highdim_variance(criterion):
    ps = [8, 16, 32, 64, 128, 256]
    gaps = [abs(aidvar2_gaussian(p) - 0.5) for p in ps]
    ok = all(a > b for a, b in zip(gaps, gaps[1:])) and gaps[-1] < 0.02
    criterion(7, "variance tends to 1/2 as p grows", ok, f"final |V2 - 1/2| {gaps[-1]:.2e}")


def test_c08_boundary_limit(criterion):
    r0, s0 = 0.6, 0.8
    vals = []
    for j in (19, 20):
        scale = math.sqrt(1 - 2.0 ** -j)
        spec = GaussianSpec.from_lambda_xy([[r0 * scale], [s0 * scale]])
        vals.append(aidcor_gaussian(spec).r_affine)
    limit = 2 * vals[1] - vals[0]
    criterion(8, "boundary limit for p = 2, q = 1", abs(limit - 0.8252) <= 1e-3, f"extrapolated {limit:.6f}")


def test_c09_fixed_q_constant(criterion):
    p, tr = 4096, 0.01
    r = aidcor_from_eigenvalues([tr], p, 1).r_affine
    ratio = math.sqrt(p) * r * r / tr
    err = _rel(ratio, limit_fixed_q_ratio(1))
    criterion(9, "fixed-q high-dimension constant", err <= 0.02, f"ratio {ratio:.6f}, rel err {err:.1e}")


def test_c10_estimator_equivalence(criterion):
    rng = np.random.default_rng(10)
    worst = 0.0
    for i in range(100):
        n = (2, 3, 10, 50)[i % 4]
        p, q = (int(v) for v in rng.integers(1, 4, size=2))
        x = rng.standard_normal((n, p))
        y = rng.standard_normal((n, q)) + x[:, :1] * rng.uniform(-1, 1)
        ref = dcov2_s123(x, y)
        worst = max(worst, abs(dcov2_sample(x, y) - ref) / max(abs(ref), 1e-300))
    criterion(10, "Schur form vs S1 + S2 - 2 S3, 100 instances", worst <= 1e-10, f"max rel err {worst:.1e}")


def test_c11_sample_invariance(criterion):
    rng = np.random.default_rng(11)
    aff, std = 0.0, 0.0
    for _ in range(10):
        x = rng.standard_normal((60, 3))
        y = np.tanh(x[:, :2]) + rng.standard_normal((60, 2))
        base = dcor_sample_affine(x, y).r
        m = rng.standard_normal((3, 3)) + 2 * np.eye(3)
        b = rng.standard_normal((2, 2)) + 2 * np.eye(2)
        aff = max(aff, abs(dcor_sample_affine(x @ m.T + rng.standard_normal(3), y).r - base))
        aff = max(aff, abs(dcor_sample_affine(x, y @ b.T - 2.0).r - base))
        base_std = dcor_sample(x, y).r
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        moved = dcor_sample(1.0 + rng.uniform(0.1, 5.0) * x @ q.T, y * rng.uniform(-5.0, -0.1) + 3.0).r
        std = max(std, abs(moved - base_std))
    criterion(11, "sample affine / similarity invariance", aff <= 1e-8 and std <= 1e-9,
              f"affine {aff:.1e}, standard {std:.1e}")


@pytest.mark.slow
def test_c12_monte_carlo_consistency(criterion):
    spec = GaussianSpec.bivariate(0.5)
    target = aidcor_gaussian(spec).r_affine
    main = consistency_experiment(spec, [5000], 20, RngSpec(12))[0]
    trend = consistency_experiment(spec, [250, 1000, 4000], 20, RngSpec(1212))
    med = [r.median_abs_error for r in trend]
    ok = abs(main.estimate - target) < 3 * main.std_error and med[0] > med[1] > med[2]
    criterion(12, "Monte Carlo consistency at rho = 0.5", ok,
              f"z {main.z_score:.2f}, median errors {', '.join(f'{m:.4f}' for m in med)}")


@pytest.mark.slow
def test_c13_scalar_series(criterion):
    rng = np.random.default_rng(13)
    unit_err = 0.0
    for p, q in ((1, 1), (2, 3), (4, 2)):
        sxy = rng.uniform(-1, 1, size=(p, q))
        sxy *= 0.8 / np.linalg.norm(sxy, 2)
        spec = GaussianSpec(np.eye(p), np.eye(q), sxy)
        unit_err = max(unit_err, _rel(dcov2_gaussian_scalar(spec), aidcov2_gaussian(spec)))
    spec = GaussianSpec([[4.0]], [[1.0]], [[1.0]])
    exact = dcov2_gaussian_scalar(spec)
    rep = mc_standard_dcov_gaussian(spec, 5000, 20, RngSpec(13), exact)
    ok = unit_err <= 1e-10 and abs(rep.z_score) < 3
    criterion(13, "scalar-covariance series", ok, f"unit rel err {unit_err:.1e}, MC z {rep.z_score:.2f}")


def test_c14_correlograms(criterion):
    rng = np.random.default_rng(14)
    e = rng.standard_normal((603, 2))
    z = e.copy()
    for j in range(1, len(z)):
        z[j] = 0.5 * z[j - 1] + e[j]
    lag0 = auto_dcor(z, 5).at(0)
    x, y = z[3:], z[:-3]  # y_j = x_{j-3}
    res = cross_dcor(x, y, 6)
    swap = np.abs(res.values - cross_dcor(y, x, 6).values[::-1]).max()
    ok = abs(lag0 - 1.0) < 1e-12 and res.peak_lag == 3 and res.at(3) >= 0.99 and swap <= 1e-12
    criterion(14, "correlogram contracts", ok,
              f"lag0 {lag0:.15f}, peak lag {res.peak_lag} value {res.at(3):.6f}, swap {swap:.1e}")
