"""Environment-induced work extraction from entangled Gaussian modes."""

from .curvature import CurvatureInput, delta_ricci
from .errors import DegenerateOutcome, EiweError, InvalidArgument, NumericalFailure, TruncationError
from .gaussian_core import (
    CovarianceReport,
    GaussianState,
    apply_symplectic,
    build_symplectic,
    purity,
    symplectic_eigenvalues,
    symplectic_form,
    validate_covariance,
)
from .measurement import (
    GaussianMeasurement,
    MeasurementOutcome,
    conditional_covariance,
    eiwe_measurement,
    homodyne_limit,
    outcome_distribution,
    povm_covariance,
    sample_and_condition,
)
from .states import (
    ThermalOccupation,
    TwoModeBlocks,
    block_decompose,
    mean_occupation,
    partial_trace,
    thermal_state,
    two_mode_squeezed_thermal,
)
from .thermo import (
    WorkReport,
    discrete_comparison,
    eiwe_closed_form,
    eiwe_pipeline,
    extracted_work,
    r_from_xi,
    von_neumann_entropy,
    xi,
)

__version__ = "0.1.0"
