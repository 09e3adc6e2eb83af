"""
Auto and cross distance correlograms
====================================

Two synthetic bivariate series, the second a delayed and distorted copy
of the first. The cross correlogram pairs ``x[j]`` with ``y[j + k]``, so
the peak sits at the positive lag by which ``x`` leads ``y``.
"""

import numpy as np

from aidcor import auto_dcor, cross_dcor

rng = np.random.default_rng(4)
T, delay = 1500, 3
e = rng.standard_normal((T + delay, 2))
z = np.zeros_like(e)
for j in range(1, len(z)):
    z[j] = 0.6 * z[j - 1] + e[j]

x = z[delay:]
y = np.tanh(z[:-delay]) + 0.2 * rng.standard_normal((T, 2))

acf = auto_dcor(x, 8)
print("auto, affine")
for k, v in zip(acf.lags, acf.values):
    print(f"  lag {k:2d}  {v:.4f}")

ccf = cross_dcor(x, y, 6)
print("cross, affine; peak at lag", ccf.peak_lag)
for k, v in zip(ccf.lags, ccf.values):
    print(f"  lag {k:+d}  {v:.4f}")
