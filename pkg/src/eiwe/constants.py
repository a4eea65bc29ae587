"""Physical constants (CODATA 2018), shared by every module."""

HBAR = 1.054571817e-34  # J s
K_B = 1.380649e-23  # J / K
G = 6.67430e-11  # m^3 kg^-1 s^-2
C = 299792458.0  # m / s

# Variance of a single vacuum quadrature.
VACUUM_VARIANCE = 0.5

SYMMETRY_TOL = 1e-12
PHYSICALITY_SLACK = 1e-10


def as_dict():
    return {"hbar": HBAR, "k_B": K_B, "G": G, "c": C, "vacuum_variance": VACUUM_VARIANCE}
