"""Thermal and two-mode squeezed thermal states, and the two-mode block form."""

from dataclasses import dataclass

import numpy as np

from .constants import HBAR, K_B, VACUUM_VARIANCE
from .errors import InvalidArgument
from .gaussian_core import GaussianState, apply_symplectic, build_symplectic, validate_covariance

OCCUPATION_MODELS = ("bose_einstein", "boltzmann_approx")

# exp(-700) is still representable; beyond that the occupation is reported as 0.
_MAX_EXPONENT = 700.0


@dataclass(frozen=True)
class ThermalOccupation:
    n_bar: float
    omega: float
    temperature: float
    model: str = "boltzmann_approx"
    underflow: bool = False

    @classmethod
    def from_n_bar(cls, n_bar, omega, model="boltzmann_approx"):
        """Infer the temperature that produces ``n_bar`` at frequency ``omega``."""
        if model not in OCCUPATION_MODELS:
            raise InvalidArgument(f"unknown occupation model {model!r}")
        if not n_bar > 0:
            raise InvalidArgument("a temperature can only be inferred for n_bar > 0")
        if not omega > 0:
            raise InvalidArgument("omega must be positive")
        if model == "boltzmann_approx":
            if n_bar >= 1:
                raise InvalidArgument("the Boltzmann form exp(-hw/kT) requires n_bar < 1")
            beta_hw = np.log(1.0 / n_bar)
        else:
            beta_hw = np.log1p(1.0 / n_bar)
        return cls(float(n_bar), float(omega), HBAR * omega / (K_B * beta_hw), model)


def mean_occupation(omega, temperature, model="boltzmann_approx"):
    """Mean photon number of a mode at ``temperature``.

    ``bose_einstein`` gives ``1/(exp(hw/kT) - 1)``; ``boltzmann_approx`` gives
    the low-temperature form ``exp(-hw/kT)``.

    Returns:
        ThermalOccupation: ``underflow`` is set (and ``n_bar`` is 0) when
        ``hw/kT`` exceeds 700.
    """
    if model not in OCCUPATION_MODELS:
        raise InvalidArgument(f"unknown occupation model {model!r}")
    if not temperature > 0:
        raise InvalidArgument(f"temperature must be positive, got {temperature}")
    if not omega > 0:
        raise InvalidArgument(f"omega must be positive, got {omega}")
    x = HBAR * omega / (K_B * temperature)
    if x > _MAX_EXPONENT:
        return ThermalOccupation(0.0, float(omega), float(temperature), model, underflow=True)
    if model == "bose_einstein":
        n_bar = 1.0 / np.expm1(x)
    else:
        n_bar = np.exp(-x)
    return ThermalOccupation(float(n_bar), float(omega), float(temperature), model)


def thermal_state(n_bar, n_modes=1, omega=1.0):
    """Product of ``n_modes`` thermal modes with covariance ``(n_bar + 1/2) I``."""
    if not n_bar >= 0:
        raise InvalidArgument(f"n_bar must be non-negative, got {n_bar}")
    cov = (n_bar + VACUUM_VARIANCE) * np.eye(2 * n_modes)
    return GaussianState(cov, omegas=np.full(n_modes, float(omega)))


def two_mode_squeezed_thermal(n_bar, r, omega=1.0):
    """Two-mode squeezed thermal state with equal occupation ``n_bar`` in both modes.

    Blocks are ``sigma_a = sigma_b = (n_bar + 1/2) cosh(2r) I`` and
    ``c_ab = (n_bar + 1/2) sinh(2r) diag(1, -1)``.
    """
    if not n_bar >= 0:
        raise InvalidArgument(f"n_bar must be non-negative, got {n_bar}")
    if not abs(r) <= 10:
        raise InvalidArgument(f"|r| must be at most 10, got {r}")
    t = n_bar + VACUUM_VARIANCE
    diag = t * np.cosh(2 * r) * np.eye(2)
    corr = t * np.sinh(2 * r) * np.diag([1.0, -1.0])
    cov = np.block([[diag, corr], [corr, diag]])
    return GaussianState(cov, omegas=np.full(2, float(omega)))


def two_mode_squeezed_thermal_by_congruence(n_bar, r, omega=1.0):
    """Same state as :func:`two_mode_squeezed_thermal`, built as ``S (thermal x thermal) S^T``."""
    S = build_symplectic("two_mode_squeeze", r, [0, 1])
    return apply_symplectic(S, thermal_state(n_bar, 2, omega))


@dataclass(frozen=True)
class TwoModeBlocks:
    sigma_a: np.ndarray
    sigma_b: np.ndarray
    c_ab: np.ndarray

    def reassemble(self):
        return np.block([[self.sigma_a, self.c_ab], [self.c_ab.T, self.sigma_b]])

    def is_valid(self):
        return validate_covariance(self.reassemble()).valid


def block_decompose(state):
    """Split a two-mode covariance into ``sigma_a``, ``sigma_b`` and ``c_ab``."""
    cov = state.cov if isinstance(state, GaussianState) else np.asarray(state, dtype=float)
    if cov.shape != (4, 4):
        raise InvalidArgument(f"block decomposition needs exactly 2 modes, got shape {cov.shape}")
    return TwoModeBlocks(cov[:2, :2].copy(), cov[2:, 2:].copy(), cov[:2, 2:].copy())


def partial_trace(state, keep):
    """Reduced single-mode state of mode ``keep`` (0 or 1) of a two-mode state."""
    if state.n_modes != 2:
        raise InvalidArgument(f"partial_trace expects a 2-mode state, got {state.n_modes}")
    if keep not in (0, 1):
        raise InvalidArgument(f"mode index {keep} out of range for 2 modes")
    sl = slice(2 * keep, 2 * keep + 2)
    return GaussianState(state.cov[sl, sl], state.mean[sl], state.omegas[keep:keep + 1])
