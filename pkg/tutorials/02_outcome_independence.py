"""
The conditional state does not depend on the outcome
=====================================================

Only the mean of mode ``a`` moves with the measurement result; its
covariance, and so its entropy and the extractable work, do not. We check
this on sampled outcomes and then with an independent number-basis
simulation.
"""

# %%
import numpy as np

from eiwe import eiwe_measurement, sample_and_condition, two_mode_squeezed_thermal
from eiwe.fock_oracle import coherent_condition, fock_covariance, fock_entropy, tmst_fock

state = two_mode_squeezed_thermal(n_bar=0.2, r=0.5)
m = eiwe_measurement()

for seed in range(4):
    outcome, cond = sample_and_condition(state, m, seed)
    print(f"alpha = {outcome.alpha:.3f}  mean_a = {np.round(cond.mean, 3)}  var_x = {cond.cov[0, 0]:.12f}")

# %%
# The same experiment with explicit density matrices (cutoff 60 per mode).
rho = tmst_fock(0.2, 0.5, cutoff=60)
print(f"trace defect: {rho.trace_defect:.2e}")
for alpha in (0, 0.5, 1 + 0.3j):
    cond = coherent_condition(rho, alpha)
    mean, cov = fock_covariance(cond)
    print(f"alpha = {alpha}: var_x = {cov[0, 0]:.9f}, entropy = {fock_entropy(cond):.9f}")
