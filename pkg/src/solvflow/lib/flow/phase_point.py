from __future__ import annotations

from typing import NamedTuple

import numpy as np


class PhasePoint(NamedTuple):
    """A point (x, y, z, w) of the reduced phase space.

    x is the mean curvature divided by n, y the speed along the soliton
    derivation (h′), z the scalar curvature of the orbit and w = nx + f′.
    """

    x: float
    y: float
    z: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)

    @classmethod
    def from_array(cls, state) -> PhasePoint:
        x, y, z, w = (float(v) for v in state)
        return cls(x, y, z, w)


class EinsteinPoint(NamedTuple):
    x: float
    y: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)


class NoScalPoint(NamedTuple):
    y: float
    w: float

    def as_array(self) -> np.ndarray:
        return np.array(self, dtype=float)
