"""Ricci-scalar change of a perfect fluid whose entangled fraction becomes directed motion."""

from dataclasses import dataclass

import numpy as np

from .constants import C, G
from .errors import InvalidArgument


@dataclass(frozen=True)
class CurvatureInput:
    xi: float
    pressure: float

    def __post_init__(self):
        if not 0 <= self.xi <= 1:
            raise InvalidArgument(f"xi must lie in [0, 1], got {self.xi}")
        if not (np.isfinite(self.pressure) and self.pressure >= 0):
            raise InvalidArgument(f"pressure must be finite and non-negative, got {self.pressure}")


def delta_ricci(inp):
    """``xi * 32 G p0 / c^4`` in 1/m^2, for pressure ``p0`` in pascals."""
    return inp.xi * 32.0 * G * inp.pressure / C**4
