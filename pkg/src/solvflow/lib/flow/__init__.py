from solvflow.lib.flow.eigen import (
    EigenData,
    closed_form_eigenvalues,
    direction_from_angle,
    unstable_eigendata,
)
from solvflow.lib.flow.exceptions import (
    DegenerateEigenspace,
    FlowError,
    LambdaOutOfRange,
    NonNegativeLambda,
    ScalarFlat,
)
from solvflow.lib.flow.phase_point import EinsteinPoint, NoScalPoint, PhasePoint
from solvflow.lib.flow.subsystems import (
    einstein_conservation_defect,
    einstein_direction_closed_form,
    einstein_field,
    einstein_jacobian,
    einstein_stationary_points,
    einstein_unstable_direction,
    einstein_z,
    embed_einstein,
    embed_noscal,
    in_einstein_region,
    noscal_field,
    noscal_jacobian,
    noscal_stationary_points,
    noscal_unstable_direction,
    noscal_unstable_eigenvalue,
)
from solvflow.lib.flow.symmetries import reflect, rescale_lambda
from solvflow.lib.flow.systems import (
    EinsteinSystem,
    FullSystem,
    Monitor,
    NoScalSystem,
    PhaseSystem,
    make_system,
)
from solvflow.lib.flow.vector_field import (
    OMEGA_INEQUALITIES,
    StationaryPoints,
    hyperbolic_point,
    jacobian,
    omega_margins,
    stationary_points,
    vector_field,
)

__all__ = [
    "OMEGA_INEQUALITIES",
    "DegenerateEigenspace",
    "EigenData",
    "EinsteinPoint",
    "EinsteinSystem",
    "FlowError",
    "FullSystem",
    "LambdaOutOfRange",
    "Monitor",
    "NoScalPoint",
    "NoScalSystem",
    "NonNegativeLambda",
    "PhasePoint",
    "PhaseSystem",
    "ScalarFlat",
    "StationaryPoints",
    "closed_form_eigenvalues",
    "direction_from_angle",
    "einstein_conservation_defect",
    "einstein_direction_closed_form",
    "einstein_field",
    "einstein_jacobian",
    "einstein_stationary_points",
    "einstein_unstable_direction",
    "einstein_z",
    "embed_einstein",
    "embed_noscal",
    "hyperbolic_point",
    "in_einstein_region",
    "jacobian",
    "make_system",
    "noscal_field",
    "noscal_jacobian",
    "noscal_stationary_points",
    "noscal_unstable_direction",
    "noscal_unstable_eigenvalue",
    "omega_margins",
    "reflect",
    "rescale_lambda",
    "stationary_points",
    "vector_field",
]
