"""Brute-force number-basis oracle for the Gaussian pipeline.

Everything here works on explicit, truncated density matrices and shares no
code with the covariance-matrix path, so agreement between the two is a
genuine cross-check.

Two-mode states are stored as ``cutoff**2`` square matrices with basis index
``n_a * cutoff + n_b``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .constants import K_B
from .errors import DegenerateOutcome, InvalidArgument, NumericalFailure, TruncationError
from .states import ThermalOccupation

EIGENVALUE_FLOOR = 1e-14
NEGATIVITY_TOL = 1e-10


@dataclass(frozen=True)
class FockDensityMatrix:
    """Truncated density matrix.

    ``entries`` is kept as computed (not renormalised); ``trace_defect`` is
    ``1 - trace`` and measures the population lost to truncation.
    """

    cutoff: int
    n_modes: int
    entries: np.ndarray
    trace_defect: float

    def normalized(self):
        return self.entries / np.trace(self.entries).real

    def as_tensor(self):
        """Two-mode entries reshaped to ``rho[a, b, a', b']``."""
        n = self.cutoff
        return self.normalized().reshape(n, n, n, n)


def _check_cutoff(cutoff):
    if int(cutoff) != cutoff or cutoff < 2:
        raise InvalidArgument(f"cutoff must be an integer >= 2, got {cutoff}")
    return int(cutoff)


def _thermal_probabilities(n_bar, size):
    n = np.arange(size)
    if n_bar == 0:
        return (n == 0).astype(float)
    q = n_bar / (n_bar + 1)
    return np.exp(n * np.log(q)) / (n_bar + 1)


def thermal_fock(n_bar, cutoff, max_defect=1e-8):
    """Diagonal Bose-Einstein mixture ``p_n = n_bar^n / (n_bar+1)^(n+1)``."""
    cutoff = _check_cutoff(cutoff)
    if not n_bar >= 0:
        raise InvalidArgument("n_bar must be non-negative")
    p = _thermal_probabilities(n_bar, cutoff)
    defect = max(0.0, 1.0 - float(p.sum()))
    if defect > max_defect:
        raise TruncationError(f"cutoff {cutoff} loses {defect:.3e} of the thermal population", defect)
    return FockDensityMatrix(cutoff, 1, np.diag(p), defect)


def _squeeze_generator_chain(offset, length):
    """``a^dag b^dag - a b`` restricted to states ``|k+offset, k>``, k < length."""
    k = np.arange(length - 1)
    off = np.sqrt((k + offset + 1.0) * (k + 1.0))
    return np.diag(off, -1) - np.diag(off, 1)


def tmst_fock(n_bar, r, cutoff, max_defect=1e-6, padding=None):
    """Two-mode squeezed thermal state ``S(r) (rho_th x rho_th) S(r)^dag``.

    ``S(r) = exp[r (a^dag b^dag - a b)]``. The generator conserves
    ``n_a - n_b``, so the exponential is taken sector by sector in a padded
    space of ``cutoff + padding`` levels per mode and then projected onto
    ``cutoff`` levels; the population lost in that projection is the
    reported trace defect.
    """
    cutoff = _check_cutoff(cutoff)
    if not n_bar >= 0:
        raise InvalidArgument("n_bar must be non-negative")
    if not np.isfinite(r):
        raise InvalidArgument("r must be finite")
    work = cutoff + (cutoff + 20 if padding is None else int(padding))
    p = _thermal_probabilities(n_bar, work)

    rho = np.zeros((cutoff * cutoff, cutoff * cutoff))
    for d in range(-(work - 1), work):
        length = work - abs(d)
        k = np.arange(length)
        na, nb = (k + d, k) if d >= 0 else (k, k - d)
        U = expm(r * _squeeze_generator_chain(abs(d), length))
        block = (U * (p[na] * p[nb])) @ U.T
        keep = (na < cutoff) & (nb < cutoff)
        if not keep.any():
            continue
        idx = na[keep] * cutoff + nb[keep]
        rho[np.ix_(idx, idx)] = block[np.ix_(keep, keep)]

    rho = (rho + rho.T) / 2
    defect = max(0.0, 1.0 - float(np.trace(rho)))
    if defect > max_defect:
        raise TruncationError(
            f"cutoff {cutoff} loses {defect:.3e} of the population at n_bar={n_bar}, r={r}", defect
        )
    return FockDensityMatrix(cutoff, 2, rho, defect)


def coherent_amplitudes(alpha, cutoff):
    """Number-basis amplitudes ``<n|alpha>`` for ``n < cutoff``."""
    n = np.arange(cutoff)
    alpha = complex(alpha)
    if alpha == 0:
        return (n == 0).astype(complex)
    log_mag = -abs(alpha) ** 2 / 2 + n * np.log(abs(alpha)) - 0.5 * gammaln(n + 1)
    return np.exp(log_mag + 1j * n * np.angle(alpha))


def coherent_condition(rho, alpha):
    """State of mode ``a`` after projecting mode ``b`` onto ``|alpha>``."""
    if rho.n_modes != 2:
        raise InvalidArgument("coherent conditioning needs a 2-mode state")
    if abs(alpha) ** 2 > rho.cutoff / 4:
        raise InvalidArgument(f"|alpha|^2 = {abs(alpha) ** 2:.3g} is not representable at cutoff {rho.cutoff}")
    c = coherent_amplitudes(alpha, rho.cutoff)
    # <alpha|m> = conj(c_m)
    rho_a = np.einsum("imjn,m,n->ij", rho.as_tensor(), c.conj(), c)
    prob = np.trace(rho_a).real
    if not prob > 1e-300:
        raise DegenerateOutcome(f"outcome alpha={alpha} has vanishing probability")
    rho_a = rho_a / prob
    rho_a = (rho_a + rho_a.conj().T) / 2
    return FockDensityMatrix(rho.cutoff, 1, rho_a, rho.trace_defect)


def fock_entropy(rho):
    """``-sum(l ln l)`` over the eigenvalues of the normalised density matrix."""
    evals = np.linalg.eigvalsh(rho.normalized())
    if evals.min() < -NEGATIVITY_TOL:
        raise NumericalFailure(f"density matrix has eigenvalue {evals.min():.3e}")
    evals = evals[evals > EIGENVALUE_FLOOR]
    return float(-np.sum(evals * np.log(evals)))


def mean_photon_number(rho, mode=0):
    n = np.arange(rho.cutoff)
    if rho.n_modes == 1:
        return float(np.real(np.diag(rho.normalized())) @ n)
    pops = np.real(np.diag(rho.normalized())).reshape(rho.cutoff, rho.cutoff)
    return float(pops.sum(axis=1 - mode) @ n)


def _quadratures(cutoff):
    a = np.diag(np.sqrt(np.arange(1, cutoff)), 1).astype(complex)
    x = (a + a.conj().T) / np.sqrt(2)
    p = (a - a.conj().T) / (1j * np.sqrt(2))
    return [x, p]


def fock_covariance(rho):
    """Quadrature means and symmetrised covariance (vacuum variance 1/2).

    Returns:
        tuple: ``(mean, cov)`` in interleaved ``(x1, p1, x2, p2)`` ordering.
    """
    n = rho.cutoff
    quads = _quadratures(n)
    eye = np.eye(n)
    if rho.n_modes == 1:
        R = quads
        r1 = rho.normalized()

        def expect(A, B=None):
            return np.trace(r1 @ (A if B is None else A @ B))
    else:
        t = rho.as_tensor()
        R = [(q, eye) for q in quads] + [(eye, q) for q in quads]

        def expect(A, B=None):
            if B is None:
                return np.einsum("abcd,ca,db->", t, A[0], A[1])
            return np.einsum("abcd,ca,db->", t, A[0] @ B[0], A[1] @ B[1])

    mean = np.array([expect(op).real for op in R])
    dim = len(R)
    cov = np.empty((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            sym = 0.5 * (expect(R[i], R[j]) + expect(R[j], R[i])).real
            cov[i, j] = cov[j, i] = sym - mean[i] * mean[j]
    return mean, cov


def oracle_work(n_bar, omega, temperature, r, alpha, cutoff):
    """Extracted work computed entirely in the number basis.

    ``temperature=None`` infers it from ``n_bar`` with the Boltzmann form.
    """
    if temperature is None:
        temperature = ThermalOccupation.from_n_bar(n_bar, omega).temperature
    s_eq = fock_entropy(thermal_fock(n_bar, cutoff))
    s_cond = fock_entropy(coherent_condition(tmst_fock(n_bar, r, cutoff), alpha))
    return K_B * temperature * (s_eq - s_cond)
