"""
Squeezed light leaking through a mirror
=======================================

A mirror acts on the cavity mode and the outgoing wave packet like a beam
splitter, turning single-mode squeezing into two-mode entanglement. Measuring
the wave packet then lowers the entropy of the cavity mode.
"""

# %%
import numpy as np

from eiwe import (
    GaussianState,
    apply_symplectic,
    block_decompose,
    build_symplectic,
    conditional_covariance,
    eiwe_measurement,
    von_neumann_entropy,
)
from eiwe.gaussian_core import direct_sum

n_bar = 0.1
for theta in (0.1, np.pi / 8, np.pi / 4):
    sq = apply_symplectic(build_symplectic("single_mode_squeeze", 0.5, [0]), GaussianState((n_bar + 0.5) * np.eye(2)))
    product = GaussianState(direct_sum(sq.cov, 0.5 * np.eye(2)))
    mixed = apply_symplectic(build_symplectic("beam_splitter", theta, [0, 1]), product)
    blocks = block_decompose(mixed)
    before = von_neumann_entropy(blocks.sigma_a)
    after = von_neumann_entropy(conditional_covariance(blocks, eiwe_measurement()))
    print(f"theta = {theta:.3f}: S(a) = {before:.4f} -> {after:.4f} nats")
