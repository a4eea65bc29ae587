"""Symplectic linear algebra on quadrature covariance matrices.

Conventions used throughout the package:

* quadratures are interleaved, ``(x1, p1, x2, p2, ...)``;
* a vacuum quadrature has variance 1/2, so a pure mode has symplectic
  eigenvalue 1/2 and a thermal mode with occupation ``n`` has ``n + 1/2``.
"""

from dataclasses import dataclass, field

import numpy as np

from .constants import PHYSICALITY_SLACK, SYMMETRY_TOL, VACUUM_VARIANCE
from .errors import InvalidArgument, NumericalFailure

SYMPLECTIC_KINDS = ("rotation", "single_mode_squeeze", "two_mode_squeeze", "beam_splitter")


@dataclass(frozen=True)
class GaussianState:
    """A Gaussian state given by its covariance matrix, mean and mode frequencies.

    Args:
        cov: ``(2n, 2n)`` covariance matrix in interleaved ordering.
        mean: length ``2n`` vector of quadrature means. Defaults to zero.
        omegas: length ``n`` vector of angular frequencies in rad/s.
            Defaults to ones, which is enough for anything that does not
            convert to energies.
    """

    cov: np.ndarray
    mean: np.ndarray = None
    omegas: np.ndarray = field(default=None)

    def __post_init__(self):
        cov = np.array(self.cov, dtype=float)
        if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
            raise InvalidArgument(f"covariance must be square with even size, got {cov.shape}")
        n = cov.shape[0] // 2
        mean = np.zeros(2 * n) if self.mean is None else np.array(self.mean, dtype=float)
        omegas = np.ones(n) if self.omegas is None else np.atleast_1d(np.array(self.omegas, dtype=float))
        if mean.shape != (2 * n,):
            raise InvalidArgument(f"mean must have length {2 * n}, got {mean.shape}")
        if omegas.shape != (n,):
            raise InvalidArgument(f"omegas must have length {n}, got {omegas.shape}")
        if np.any(omegas <= 0):
            raise InvalidArgument("mode frequencies must be positive")
        for name, value in (("cov", cov), ("mean", mean), ("omegas", omegas)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def n_modes(self):
        return self.cov.shape[0] // 2


@dataclass(frozen=True)
class CovarianceReport:
    valid: bool
    min_symplectic_eigenvalue: float
    symmetry_defect: float


def symplectic_form(n_modes):
    """Return the ``2n x 2n`` symplectic form, a direct sum of ``[[0, 1], [-1, 0]]``."""
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidArgument(f"n_modes must be a positive integer, got {n_modes!r}")
    return np.kron(np.eye(int(n_modes)), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def _check_square_even(cov):
    cov = np.asarray(cov, dtype=float)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1] or cov.shape[0] % 2:
        raise InvalidArgument(f"expected a square matrix of even dimension, got shape {cov.shape}")
    return cov


def _symmetry_defect(cov):
    return float(np.max(np.abs(cov - cov.T))) if cov.size else 0.0


def symplectic_eigenvalues(cov):
    """Symplectic eigenvalues of ``cov``, ascending.

    These are the moduli of the eigenvalues of ``i * Omega @ cov``, which come
    in ``+-nu`` pairs; one member of each pair is returned.
    """
    cov = _check_square_even(cov)
    if _symmetry_defect(cov) > SYMMETRY_TOL * max(1.0, np.max(np.abs(cov))):
        raise InvalidArgument("covariance matrix is not symmetric")
    n = cov.shape[0] // 2
    if n == 1:
        # Exact for a single mode, and far more accurate close to the vacuum.
        det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
        if det < 0:
            raise NumericalFailure(f"single-mode covariance has negative determinant {det}")
        return np.array([np.sqrt(det)])
    try:
        eigs = np.linalg.eigvals(1j * symplectic_form(n) @ cov)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue solver failed: {exc}") from exc
    return np.sort(np.abs(eigs))[::2]


def validate_covariance(cov):
    """Check symmetry and the uncertainty principle ``nu_k >= 1/2``."""
    cov = _check_square_even(cov)
    defect = _symmetry_defect(cov)
    sym = (cov + cov.T) / 2
    try:
        nu_min = float(symplectic_eigenvalues(sym)[0])
    except NumericalFailure:
        nu_min = float("nan")
    # Positive definiteness is implied by nu >= 1/2 only for positive matrices.
    positive = bool(np.all(np.linalg.eigvalsh(sym) > 0))
    valid = (
        defect <= SYMMETRY_TOL
        and positive
        and nu_min >= VACUUM_VARIANCE - PHYSICALITY_SLACK
    )
    return CovarianceReport(valid=bool(valid), min_symplectic_eigenvalue=nu_min, symmetry_defect=defect)


def _single_mode_block(kind, parameter):
    if kind == "rotation":
        c, s = np.cos(parameter), np.sin(parameter)
        return np.array([[c, -s], [s, c]])
    return np.diag([np.exp(-parameter), np.exp(parameter)])


def _two_mode_block(kind, parameter):
    eye = np.eye(2)
    if kind == "two_mode_squeeze":
        # x-quadratures correlate, p-quadratures anticorrelate.
        z = np.diag([1.0, -1.0])
        c, s = np.cosh(parameter), np.sinh(parameter)
        return np.block([[c * eye, s * z], [s * z, c * eye]])
    c, s = np.cos(parameter), np.sin(parameter)
    return np.block([[c * eye, s * eye], [-s * eye, c * eye]])


def build_symplectic(kind, parameter, modes, n_modes=None):
    """Build a symplectic matrix acting on ``modes`` of an ``n_modes`` system.

    Args:
        kind: one of ``"rotation"``, ``"single_mode_squeeze"``,
            ``"two_mode_squeeze"`` or ``"beam_splitter"``.
        parameter: rotation angle, squeezing parameter or mixing angle.
        modes: target mode indices (one for single-mode kinds, two otherwise).
        n_modes: size of the embedding system; defaults to ``max(modes) + 1``.

    Returns:
        np.ndarray: the embedded ``(2n, 2n)`` symplectic matrix.
    """
    if kind not in SYMPLECTIC_KINDS:
        raise InvalidArgument(f"unknown symplectic kind {kind!r}")
    if not np.isfinite(parameter):
        raise InvalidArgument("parameter must be finite")
    modes = [int(m) for m in np.atleast_1d(modes)]
    expected = 1 if kind in ("rotation", "single_mode_squeeze") else 2
    if len(modes) != expected:
        raise InvalidArgument(f"{kind} acts on {expected} mode(s), got {modes}")
    if len(set(modes)) != len(modes):
        raise InvalidArgument(f"target modes must be distinct, got {modes}")
    if n_modes is None:
        n_modes = max(modes) + 1
    if min(modes) < 0 or max(modes) >= n_modes:
        raise InvalidArgument(f"modes {modes} out of range for {n_modes} modes")

    if expected == 1:
        local = _single_mode_block(kind, parameter)
    else:
        local = _two_mode_block(kind, parameter)

    idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes])
    S = np.eye(2 * n_modes)
    S[np.ix_(idx, idx)] = local
    return S


def is_symplectic(S, tol=SYMMETRY_TOL):
    S = np.asarray(S, dtype=float)
    omega = symplectic_form(S.shape[0] // 2)
    return float(np.max(np.abs(S @ omega @ S.T - omega))) <= tol


def apply_symplectic(S, state):
    """Gaussian unitary action: ``cov -> S cov S^T``, ``mean -> S mean``."""
    S = np.asarray(S, dtype=float)
    if S.shape != state.cov.shape:
        raise InvalidArgument(
            f"symplectic of shape {S.shape} does not match a {state.n_modes}-mode state"
        )
    cov = S @ state.cov @ S.T
    return GaussianState((cov + cov.T) / 2, S @ state.mean, state.omegas)


def purity(cov):
    """Purity ``Tr(rho^2) = (1/2)^n / sqrt(det cov)``."""
    cov = _check_square_even(cov)
    n = cov.shape[0] // 2
    det = np.linalg.det(cov)
    if not det > 0:
        raise NumericalFailure(f"covariance determinant is not positive ({det})")
    return VACUUM_VARIANCE**n / np.sqrt(det)


def direct_sum(*covs):
    """Block-diagonal covariance of a product state."""
    covs = [np.asarray(c, dtype=float) for c in covs]
    size = sum(c.shape[0] for c in covs)
    out = np.zeros((size, size))
    i = 0
    for c in covs:
        k = c.shape[0]
        out[i:i + k, i:i + k] = c
        i += k
    return out
