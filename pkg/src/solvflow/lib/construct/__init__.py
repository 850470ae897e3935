from solvflow.lib.construct.alignment import (
    RichardsonReport,
    crossing_time,
    richardson_check,
    shift_alignment,
)
from solvflow.lib.construct.exceptions import (
    CaptureFailed,
    LeftK,
    NonNegativeZ,
    OutsideAdmissibleRange,
    ShotError,
    ShotInvariantViolated,
)
from solvflow.lib.construct.profile import (
    MetricProfile,
    SolitonResidual,
    reconstruct,
    shape_spectrum,
    soliton_residual,
)
from solvflow.lib.construct.shooting import (
    EinsteinShot,
    FamilyShot,
    backward_options,
    emerge,
    is_admissible,
    shoot_einstein,
    shoot_family,
    shoot_noscal,
)
from solvflow.lib.construct.shot_config import ShotConfig
from solvflow.lib.construct.sweep import (
    SweepRow,
    alphas_distinct,
    sweep,
    sweep_row,
    theta_grid,
)

__all__ = [
    "CaptureFailed",
    "EinsteinShot",
    "FamilyShot",
    "LeftK",
    "MetricProfile",
    "NonNegativeZ",
    "OutsideAdmissibleRange",
    "RichardsonReport",
    "ShotConfig",
    "ShotError",
    "ShotInvariantViolated",
    "SolitonResidual",
    "SweepRow",
    "alphas_distinct",
    "backward_options",
    "crossing_time",
    "emerge",
    "is_admissible",
    "reconstruct",
    "richardson_check",
    "shape_spectrum",
    "shift_alignment",
    "shoot_einstein",
    "shoot_family",
    "shoot_noscal",
    "soliton_residual",
    "sweep",
    "sweep_row",
    "theta_grid",
]
