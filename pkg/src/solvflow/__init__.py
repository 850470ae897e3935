from solvflow.lib.construct import (
    ShotConfig,
    shoot_einstein,
    shoot_family,
    shoot_noscal,
)
from solvflow.lib.core import SolvsolitonParams, preset
from solvflow.lib.integrate import IntegratorOptions, Trajectory, integrate
from solvflow.metadata import __version__

__all__ = [
    "IntegratorOptions",
    "ShotConfig",
    "SolvsolitonParams",
    "Trajectory",
    "__version__",
    "integrate",
    "preset",
    "shoot_einstein",
    "shoot_family",
    "shoot_noscal",
]
