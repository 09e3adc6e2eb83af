import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aidcor.errors import DomainError
from aidcor.specfun import (
    SpectralLambda,
    a_constant,
    c_ratio,
    const_c,
    gauss_2f1_neg_half,
    gauss_2f1_neg_half_series,
    hyp_onepart,
    onepart_products,
    rising_factorial,
    zonal_onepart,
)

from .oracles import hyp2f1_neg_half, rising, zonal_by_compositions


def test_const_c_small():
    assert const_c(0) == pytest.approx(1.0, rel=1e-15)
    assert const_c(1) == pytest.approx(math.pi, rel=1e-15)
    assert const_c(2) == pytest.approx(2 * math.pi, rel=1e-15)


@pytest.mark.parametrize("p", [1, 2, 5, 40, 400, 3000])
def test_c_ratio_against_mpmath(p):
    ref = mpmath.gamma(mpmath.mpf(p + 1) / 2) / (mpmath.sqrt(mpmath.pi) * mpmath.gamma(mpmath.mpf(p) / 2))
    assert c_ratio(p) == pytest.approx(float(ref), rel=1e-12)
    if p < 300:
        assert c_ratio(p) == pytest.approx(const_c(p - 1) / const_c(p), rel=1e-13)


def test_rising_factorial_examples():
    assert rising_factorial(3.7, 0) == 1.0
    assert rising_factorial(0.5, 2) == 0.75
    assert rising_factorial(-0.5, 2) == -0.25
    assert rising_factorial(1.0, 5) == 120.0
    with pytest.raises(DomainError):
        rising_factorial(1.0, -1)


def test_spectral_lambda_validation():
    lam = SpectralLambda([0.2, -1e-14, 0.5])
    np.testing.assert_array_equal(lam.eigenvalues, [0.5, 0.2, 0.0])
    assert lam.norm == 0.5 and lam.q == 3
    with pytest.raises(DomainError):
        SpectralLambda([1.0])
    with pytest.raises(DomainError):
        SpectralLambda([1.0 - 1e-13])
    with pytest.raises(DomainError):
        SpectralLambda([-0.01])


@pytest.mark.parametrize("eigs", [[0.3], [0.4, 0.1], [0.7, 0.2, 0.05], [0.9, 0.9, 0.5, 0.1]])
def test_zonal_matches_compositions(eigs):
    z = zonal_onepart(eigs, 6)
    for k in range(1, 7):
        assert z[k] == pytest.approx(zonal_by_compositions(eigs, k), rel=1e-12)


@pytest.mark.parametrize("q", [1, 2, 3, 7])
def test_zonal_identity_matrix(q):
    z = zonal_onepart(np.ones(q), 30)
    for k in (1, 2, 5, 30):
        assert z[k] == pytest.approx(rising(q / 2, k) / rising(0.5, k), rel=1e-12)


def test_zonal_single_eigenvalue():
    rho = 0.6
    z = zonal_onepart([rho ** 2], 40)
    np.testing.assert_allclose(z.values, rho ** (2 * np.arange(1, 41)), rtol=1e-12)


def test_zonal_two_eigenvalues_k2():
    a, b = 0.3, 0.6
    # (2 / (3/4)) * [(3/8) a^2 + (1/4) a b + (3/8) b^2]
    expected = 2 / 0.75 * (0.375 * a * a + 0.25 * a * b + 0.375 * b * b)
    assert zonal_onepart([a, b], 2)[2] == pytest.approx(expected, rel=1e-14)


def test_generating_function():
    lam, x = 0.8, 0.625  # lambda * x = 0.5
    e = onepart_products([lam], 80)
    partial = np.cumsum(e * x ** np.arange(81))
    assert partial[-1] == pytest.approx((1 - lam * x) ** -0.5, abs=1e-10)
    # the same identity through C_(k)
    z = zonal_onepart([lam], 80).values
    k = np.arange(1, 81)
    w = np.array([rising(0.5, int(i)) / math.factorial(int(i)) for i in k])
    assert 1 + np.sum(z * w * x ** k) == pytest.approx((1 - lam * x) ** -0.5, abs=1e-10)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0.0, 0.99), min_size=1, max_size=6), st.floats(0.05, 1.0))
def test_zonal_properties(eigs, delta):
    z = zonal_onepart(eigs, 12)
    tr = sum(eigs)
    assert np.all(z.values >= 0.0)
    assert z[1] == pytest.approx(tr, rel=1e-13, abs=1e-300)
    zd = zonal_onepart(np.asarray(eigs) * delta, 12)
    for k in range(1, 13):
        assert zd[k] == pytest.approx(delta ** k * z[k], rel=1e-12, abs=1e-300)
    if tr > 0:
        q = len(eigs)
        for k in range(1, 13):
            assert z[k] / tr <= rising(q / 2, k) / rising(0.5, k) * (1 + 1e-12)
            assert z[k] <= max(eigs) ** k * rising(q / 2, k) / rising(0.5, k) * (1 + 1e-12)


def test_2f1_endpoints():
    assert gauss_2f1_neg_half(2.0, 0.0) == 1.0
    for c in (0.5, 1.0, 1.5, 7.0, 200.0):
        assert gauss_2f1_neg_half(c, 1.0) == pytest.approx(hyp2f1_neg_half(c, 1.0), rel=1e-13)


def test_2f1_arcsine_identity():
    rho = 0.5
    assert gauss_2f1_neg_half(0.5, rho ** 2) == pytest.approx(
        rho * math.asin(rho) + math.sqrt(1 - rho ** 2), rel=1e-14)
    assert gauss_2f1_neg_half(0.5, rho ** 2) == pytest.approx(0.5 * math.pi / 6 + math.sqrt(0.75), rel=1e-14)


def test_2f1_odd_identity():
    rho = 0.3
    expected = 3 * math.sqrt(1 - rho ** 2) / 4 + (1 + 2 * rho ** 2) * math.asin(rho) / (4 * rho)
    assert gauss_2f1_neg_half(1.5, rho ** 2) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.5, 10.0])
@pytest.mark.parametrize("z", [0.1, 0.25, 0.7, 0.95])
def test_2f1_against_mpmath(c, z):
    assert gauss_2f1_neg_half(c, z) == pytest.approx(hyp2f1_neg_half(c, z), rel=1e-13)


def test_2f1_monotone_in_z():
    zs = np.linspace(0.0, 0.99, 60)
    for c in (0.5, 1.0, 3.0):
        vals = [gauss_2f1_neg_half(c, z) for z in zs]
        assert np.all(np.diff(vals) > 0)
        assert vals[-1] < gauss_2f1_neg_half(c, 1.0)


def test_2f1_domain():
    with pytest.raises(DomainError):
        gauss_2f1_neg_half(1.0, 1.01)
    with pytest.raises(DomainError):
        gauss_2f1_neg_half(0.0, 0.5)
    with pytest.raises(DomainError):
        gauss_2f1_neg_half(1.0, -0.1)


def test_2f1_series_bookkeeping():
    s = gauss_2f1_neg_half_series(1.0, 0.5)
    assert s.truncation_k > 1
    assert 0.0 <= s.tail_estimate < 1e-13


def test_a_constant_p1():
    assert a_constant(1) == pytest.approx(math.pi / 3 - math.sqrt(3) + 1, rel=1e-14)
    assert a_constant(1) == pytest.approx(0.315147, abs=5e-7)


@pytest.mark.parametrize("p", [1, 2, 3, 6, 20, 100, 400])
def test_a_constant_against_mpmath(p):
    c = mpmath.mpf(p) / 2
    mpmath.mp.dps = 40
    ref = (mpmath.gamma(c) * mpmath.gamma(c + 1) / mpmath.gamma(c + 0.5) ** 2
           - 2 * mpmath.hyp2f1(-0.5, -0.5, c, 0.25) + 1)
    mpmath.mp.dps = 15
    assert a_constant(p) == pytest.approx(float(ref), rel=1e-11)
    assert a_constant(p) > 0


def test_hyp_onepart_scalar_reduces_to_gauss():
    # with q = 1 the matrix series is the scalar 3F2(1/2, -1/2, -1/2; c, d; z)
    z, c, d = 0.4, 1.5, 2.0
    ref = float(mpmath.hyp3f2(0.5, -0.5, -0.5, c, d, z))
    assert hyp_onepart([0.5, -0.5, -0.5], [c, d], [z]).value == pytest.approx(ref, rel=1e-13)
    with pytest.raises(DomainError):
        hyp_onepart([1.0, -0.5], [1.0], [0.3])
    with pytest.raises(DomainError):
        hyp_onepart([0.5], [1.0], [0.5], scale=2.0)
