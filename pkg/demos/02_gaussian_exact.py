"""
Exact values for Gaussian populations
=====================================

For a jointly normal ``(X, Y)`` the affine distance correlation depends
only on the eigenvalues of the squared cross-dependence matrix Lambda.
Two independent code paths evaluate it.
"""

import math

import numpy as np

from aidcor import GaussianSpec, aidcor_gaussian, aidcov2_gaussian, aidcov2_gaussian_hyp, aidvar2_gaussian
from aidcor.gaussian import pearson_to_dcor

# the affine distance variance has closed forms in low dimension
print("V2(X, X), p = 1:", aidvar2_gaussian(1), "closed form", 4 / 3 - 4 * (math.sqrt(3) - 1) / math.pi)
print("V2(X, X), p = 3:", aidvar2_gaussian(3), "closed form", 2 - 4 * (3 * math.sqrt(3) - 4) / math.pi)

# Pearson rho against distance correlation in the bivariate case
for rho in (0.1, 0.3, 0.5, 0.7, 0.9):
    print(f"rho={rho:.1f}  R={pearson_to_dcor(rho):.6f}")

# a random 3 + 2 dimensional law; the series and the hypergeometric form agree
rng = np.random.default_rng(2)
w = rng.standard_normal((5, 8))
sigma = w @ w.T / 8 + 0.3 * np.eye(5)
spec = GaussianSpec.from_sigma(sigma, 3)
print("series     ", aidcov2_gaussian(spec))
print("hypergeom  ", aidcov2_gaussian_hyp(spec))
res = aidcor_gaussian(spec)
print("R =", res.r_affine, "using", res.truncation_k, "terms, tail <", res.tail_estimate)
