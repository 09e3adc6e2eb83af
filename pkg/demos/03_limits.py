"""
Limiting behaviour
==================

Checks the limit constants against the exact series: weak dependence,
growing dimension and the boundary of the parameter space.
"""

import math

import numpy as np

from aidcor.gaussian import (
    aidcor_boundary_limit,
    aidcor_from_eigenvalues,
    aidvar2_gaussian,
    limit_fixed_q_ratio,
    limit_highdim_equal,
    limit_smalllambda_ratio,
)

# weak dependence: R^2 / tr(Lambda) settles at a constant
for p, q in ((1, 1), (2, 2), (3, 2)):
    lam = np.full(min(p, q), 1e-6 / min(p, q))
    r = aidcor_from_eigenvalues(lam, p, q).r_affine
    print(f"p={p} q={q}: ratio {r * r / 1e-6:.8f}  limit {limit_smalllambda_ratio(p, q):.8f}")

# the affine distance variance approaches 1/2 from below
for p in (8, 32, 128, 512):
    print(f"p={p:4d}  V2(X, X) = {aidvar2_gaussian(p):.6f}")

# Lambda = r^2 I with p = q growing: R tends to r
for p in (8, 64, 256):
    print(f"p={p:3d}  R = {limit_highdim_equal(0.6, p)[1]:.5f}")

# q = 1 fixed while p grows, rank-one Lambda with small trace
p, tr = 4096, 0.01
r = aidcor_from_eigenvalues([tr], p, 1).r_affine
print("sqrt(p) R^2 / tr:", math.sqrt(p) * r * r / tr, "limit", limit_fixed_q_ratio(1))

# p = 2, q = 1 at the edge r^2 + s^2 -> 1, by extrapolation in eps
print("boundary limit:", aidcor_boundary_limit([1.0], 2, 1))
