"""Entropy, extracted work and the environment-induced work law.

Mode ``a`` (the engine) is entangled with mode ``b`` through two-mode
squeezing ``r``. The environment measures ``b`` in the coherent-state basis,
which lowers the entropy of ``a``; rethermalising then yields

    W = k_B T [S(thermal) - S(conditional)],

which at low occupation approaches ``xi(r) * n_bar * hbar * omega`` with
``xi(r) = 1 - 2 / (1 + cosh 2r)``.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .constants import HBAR, K_B, PHYSICALITY_SLACK, VACUUM_VARIANCE
from .errors import InvalidArgument
from .gaussian_core import symplectic_eigenvalues
from .measurement import conditional_covariance, eiwe_measurement
from .states import (
    ThermalOccupation,
    block_decompose,
    mean_occupation,
    thermal_state,
    two_mode_squeezed_thermal,
)

# Guards the relative deviation when the closed form vanishes (r = 0).
_EPS = 1e-300
# Below this occupation, nu - 1/2 is lost to double-precision rounding.
MIN_RESOLVABLE_N_BAR = 1e-10


def entropy_from_symplectic(nu):
    """Bosonic entropy ``h(nu) = (nu+1/2) ln(nu+1/2) - (nu-1/2) ln(nu-1/2)`` in nats."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < VACUUM_VARIANCE - PHYSICALITY_SLACK):
        raise InvalidArgument(f"symplectic eigenvalue below 1/2: {nu.min()}")
    n = np.clip(nu - VACUUM_VARIANCE, 0.0, None)
    return xlogy(n + 1, n + 1) - xlogy(n, n)


def von_neumann_entropy(cov):
    """Von Neumann entropy of a Gaussian state, in nats."""
    return float(np.sum(entropy_from_symplectic(symplectic_eigenvalues(cov))))


def xi(r):
    """Entanglement degree ``1 - 2/(1 + cosh 2r)`` of two-mode squeezing ``r``."""
    # tanh^2(r) is the same quantity without cancellation at large r.
    return float(np.tanh(r) ** 2)


def r_from_xi(target, tol=1e-15):
    """Invert :func:`xi` on ``r >= 0`` by bisection."""
    if not 0 <= target < 1:
        raise InvalidArgument(f"xi must lie in [0, 1), got {target}")
    lo, hi = 0.0, 1.0
    while xi(hi) < target:
        hi *= 2
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if xi(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def extracted_work(entropy_eq, entropy_cond, temperature):
    if not temperature > 0:
        raise InvalidArgument(f"temperature must be positive, got {temperature}")
    return K_B * temperature * (entropy_eq - entropy_cond)


def eiwe_closed_form(n_bar, omega, r):
    """Predicted work ``xi(r) * n_bar * hbar * omega`` in joules."""
    if not n_bar >= 0:
        raise InvalidArgument("n_bar must be non-negative")
    if not omega > 0:
        raise InvalidArgument("omega must be positive")
    return xi(r) * n_bar * HBAR * omega


def discrete_comparison(x, omega):
    """Work ``x * hbar * omega`` from the thermal mixture of ``|0,0>`` and ``(|1,0>+|0,1>)/sqrt 2``
    after detecting one photon in mode ``b``; ``x = exp(-hbar omega / k_B T)``."""
    if not 0 <= x < 1:
        raise InvalidArgument(f"x must lie in [0, 1), got {x}")
    return x * HBAR * omega


@dataclass(frozen=True)
class WorkReport:
    entropy_eq: float
    entropy_cond: float
    work: float
    work_closed_form: float
    xi: float
    n_bar: float
    omega: float
    temperature: float
    strength: float
    phi: float
    r: float
    relative_deviation: float

    def as_dict(self):
        return dict(self.__dict__)


def resolve_occupation(omega, n_bar=None, temperature=None, model="boltzmann_approx"):
    """Settle ``(n_bar, T)`` from whichever one is given.

    Exactly one of them is primary; if both are passed they must agree
    under ``model`` to 1e-12 relative.
    """
    if n_bar is None and temperature is None:
        raise InvalidArgument("one of n_bar or temperature is required")
    if temperature is None:
        return ThermalOccupation.from_n_bar(n_bar, omega, model)
    occ = mean_occupation(omega, temperature, model)
    if n_bar is not None and not np.isclose(occ.n_bar, n_bar, rtol=1e-12, atol=0):
        raise InvalidArgument(
            f"n_bar={n_bar} inconsistent with T={temperature} K under {model} (gives {occ.n_bar})"
        )
    return occ


def eiwe_pipeline(r, omega, n_bar=None, temperature=None, measurement=None, model="boltzmann_approx"):
    """Work extracted from mode ``a`` of a two-mode squeezed thermal state.

    Args:
        r: two-mode squeezing parameter.
        omega: angular frequency of mode ``a``, rad/s.
        n_bar: thermal occupation. Under the Boltzmann model the temperature
            follows from ``k_B T = hbar omega / ln(1/n_bar)``.
        temperature: alternatively, the temperature in kelvin.
        measurement: Gaussian measurement on mode ``b``; defaults to the
            coherent-state measurement.
        model: ``"boltzmann_approx"`` or ``"bose_einstein"``.

    Returns:
        WorkReport
    """
    if not np.isfinite(r):
        raise InvalidArgument("r must be finite")
    m = eiwe_measurement() if measurement is None else measurement
    occ = resolve_occupation(omega, n_bar, temperature, model)
    if 0 < occ.n_bar < MIN_RESOLVABLE_N_BAR:
        warnings.warn(
            f"n_bar={occ.n_bar:.3g} is below {MIN_RESOLVABLE_N_BAR:g}; entropies lose precision",
            RuntimeWarning,
            stacklevel=2,
        )

    s_eq = von_neumann_entropy(thermal_state(occ.n_bar).cov)
    blocks = block_decompose(two_mode_squeezed_thermal(occ.n_bar, r, omega))
    s_cond = von_neumann_entropy(conditional_covariance(blocks, m))

    work = extracted_work(s_eq, s_cond, occ.temperature)
    closed = eiwe_closed_form(occ.n_bar, omega, r)
    return WorkReport(
        entropy_eq=s_eq,
        entropy_cond=s_cond,
        work=work,
        work_closed_form=closed,
        xi=xi(r),
        n_bar=occ.n_bar,
        omega=float(omega),
        temperature=occ.temperature,
        strength=m.strength,
        phi=m.phi,
        r=float(r),
        relative_deviation=abs(work - closed) / max(closed, _EPS),
    )
