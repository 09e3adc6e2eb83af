"""
Sample distance correlation
===========================

Distance correlation sees nonlinear dependence that Pearson correlation
misses. The affine variant whitens each sample first, so it does not care
about linear changes of coordinates.
"""

import numpy as np

from aidcor import dcor_sample, dcor_sample_affine

rng = np.random.default_rng(1)

# a parabola: Pearson correlation is near zero, distance correlation is not
x = rng.uniform(-1, 1, size=(500, 1))
y = x ** 2 + 0.05 * rng.standard_normal((500, 1))
print("pearson       ", round(float(np.corrcoef(x[:, 0], y[:, 0])[0, 1]), 4))
print("distance corr ", round(dcor_sample(x, y).r, 4))

# independent samples give values that shrink with n
for n in (100, 1000):
    a, b = rng.standard_normal((n, 2)), rng.standard_normal((n, 2))
    print(f"independent, n={n:4d}:", round(dcor_sample(a, b).r, 4))

# stretch and shear x; the standard statistic moves, the affine one does not
x3 = rng.standard_normal((300, 3))
y3 = np.sin(x3[:, :2]) + 0.3 * rng.standard_normal((300, 2))
m = np.array([[10.0, 0.0, 0.0], [3.0, 0.1, 0.0], [0.0, 0.0, 1.0]])
print("standard before/after", round(dcor_sample(x3, y3).r, 6), round(dcor_sample(x3 @ m.T, y3).r, 6))
print("affine   before/after", round(dcor_sample_affine(x3, y3).r, 6),
      round(dcor_sample_affine(x3 @ m.T, y3).r, 6))
