"""
Measurement strength and the homodyne limits
============================================

The POVM kernel ``R diag(lambda/2, 1/(2 lambda)) R^T`` interpolates between
homodyne detection of ``x`` (lambda -> 0), heterodyne (lambda = 1) and
homodyne detection of ``p`` (lambda -> oo).
"""

# %%
import numpy as np

from eiwe import (
    GaussianMeasurement,
    block_decompose,
    conditional_covariance,
    eiwe_pipeline,
    homodyne_limit,
    two_mode_squeezed_thermal,
)

blocks = block_decompose(two_mode_squeezed_thermal(0.2, 0.8))
for lam in (1e-3, 1e-6, 1e-9):
    err = np.abs(conditional_covariance(blocks, GaussianMeasurement(lam)) - homodyne_limit(blocks, "x")).max()
    print(f"lambda = {lam:.0e}: distance to x-homodyne = {err:.2e}")

# %%
# Work as a function of strength, at fixed squeezing. The heterodyne point
# extracts the most. Because both marginals of this state are isotropic, the
# angle drops out and lambda and 1/lambda give the same work.
for lam in (0.1, 0.5, 1.0, 2.0, 10.0):
    works = [eiwe_pipeline(0.6, 1.2e15, n_bar=1e-3, measurement=GaussianMeasurement(lam, phi)).work for phi in (0, np.pi / 4)]
    print(f"lambda = {lam:5.1f}: W(phi=0) = {works[0]:.4e} J, W(phi=pi/4) = {works[1]:.4e} J")
