"""Gaussian measurements on mode ``b`` and the resulting state of mode ``a``.

A Gaussian POVM is fixed by a pure single-mode covariance

    gamma = R(phi) diag(lambda/2, 1/(2 lambda)) R(phi)^T,

where ``lambda`` is the measurement strength. ``lambda = 1`` is projection
onto coherent states (heterodyne), ``lambda -> 0`` is homodyne detection of
``x`` and ``lambda -> oo`` homodyne detection of ``p``.

Outcomes are stored as real pairs ``(x, p)``; the coherent amplitude is
``alpha = (x + i p) / sqrt(2)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument, NumericalFailure
from .gaussian_core import GaussianState
from .states import TwoModeBlocks, block_decompose

MEASURED_MODE = 1


@dataclass(frozen=True)
class GaussianMeasurement:
    strength: float = 1.0
    phi: float = 0.0
    target: int = MEASURED_MODE

    def __post_init__(self):
        if not (np.isfinite(self.strength) and self.strength > 0):
            raise InvalidArgument(f"measurement strength must be positive and finite, got {self.strength}")
        if not np.isfinite(self.phi):
            raise InvalidArgument("phi must be finite")

    def gamma(self):
        return povm_covariance(self)


@dataclass(frozen=True)
class MeasurementOutcome:
    x: float
    p: float
    log_density: float

    @property
    def alpha(self):
        return complex(self.x, self.p) / np.sqrt(2)


def povm_covariance(m):
    lam = m.strength
    if not lam > 0:
        raise InvalidArgument(f"measurement strength must be positive, got {lam}")
    c, s = np.cos(m.phi), np.sin(m.phi)
    R = np.array([[c, -s], [s, c]])
    g = R @ np.diag([lam / 2, 1 / (2 * lam)]) @ R.T
    return (g + g.T) / 2


def eiwe_measurement(target=MEASURED_MODE):
    """The coherent-state measurement an environment performs on a leaky mode."""
    return GaussianMeasurement(1.0, 0.0, target)


def _inv2(m):
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if not det > 0:
        raise NumericalFailure(f"sigma_b + gamma is singular (det = {det})")
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]]) / det


def _check_target(m):
    if m.target != MEASURED_MODE:
        raise InvalidArgument(f"only measurements on mode {MEASURED_MODE} are supported")


def _blocks(blocks_or_state):
    if isinstance(blocks_or_state, TwoModeBlocks):
        return blocks_or_state
    return block_decompose(blocks_or_state)


def conditional_covariance(blocks, m):
    """Covariance of mode ``a`` after measuring ``b``: ``sigma_a - c (sigma_b + gamma)^-1 c^T``.

    The result does not depend on the outcome.
    """
    _check_target(m)
    blocks = _blocks(blocks)
    k = blocks.c_ab @ _inv2(blocks.sigma_b + povm_covariance(m)) @ blocks.c_ab.T
    out = blocks.sigma_a - k
    return (out + out.T) / 2


@dataclass(frozen=True)
class OutcomeDistribution:
    """Bivariate normal density of the outcome pair ``(x, p)``."""

    mean: np.ndarray
    cov: np.ndarray

    def log_density(self, outcome):
        d = np.asarray(outcome, dtype=float) - self.mean
        inv = _inv2(self.cov)
        det = np.linalg.det(self.cov)
        quad = np.einsum("...i,ij,...j->...", d, inv, d)
        return -0.5 * quad - np.log(2 * np.pi) - 0.5 * np.log(det)

    def density(self, outcome):
        return np.exp(self.log_density(outcome))

    def sample(self, rng):
        return rng.multivariate_normal(self.mean, self.cov)


def outcome_distribution(state, m):
    _check_target(m)
    if state.n_modes != 2:
        raise InvalidArgument("outcome statistics need a 2-mode state")
    sl = slice(2 * m.target, 2 * m.target + 2)
    cov = state.cov[sl, sl] + povm_covariance(m)
    return OutcomeDistribution(state.mean[sl].copy(), (cov + cov.T) / 2)


def condition_on(state, m, outcome):
    """State of mode ``a`` given measurement outcome ``(x, p)`` on mode ``b``."""
    _check_target(m)
    blocks = block_decompose(state)
    gain = blocks.c_ab @ _inv2(blocks.sigma_b + povm_covariance(m))
    mean = state.mean[:2] + gain @ (np.asarray(outcome, dtype=float) - state.mean[2:])
    return GaussianState(conditional_covariance(blocks, m), mean, state.omegas[:1])


def sample_and_condition(state, m, seed):
    """Draw an outcome with a seeded generator and condition mode ``a`` on it.

    Returns:
        tuple: ``(MeasurementOutcome, GaussianState)`` for mode ``a``.
    """
    dist = outcome_distribution(state, m)
    rng = np.random.default_rng(seed)
    x, p = dist.sample(rng)
    outcome = MeasurementOutcome(float(x), float(p), float(dist.log_density([x, p])))
    return outcome, condition_on(state, m, [x, p])


def homodyne_limit(blocks, quadrature):
    """Conditional covariance of mode ``a`` after ideal homodyne detection on ``b``.

    Uses the Moore-Penrose inverse of ``sigma_b`` projected onto the measured
    quadrature (``"x"`` or ``"p"``).
    """
    if quadrature not in ("x", "p"):
        raise InvalidArgument(f"quadrature must be 'x' or 'p', got {quadrature!r}")
    blocks = _blocks(blocks)
    i = 0 if quadrature == "x" else 1
    pinv = np.zeros((2, 2))
    pinv[i, i] = 1.0 / blocks.sigma_b[i, i]
    out = blocks.sigma_a - blocks.c_ab @ pinv @ blocks.c_ab.T
    return (out + out.T) / 2
