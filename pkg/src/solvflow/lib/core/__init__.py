from solvflow.lib.core.exceptions import (
    AlgebraError,
    JacobiViolation,
    NegativeDerivationSpectrum,
    NotAntisymmetric,
    NotASoliton,
    NotUnimodular,
    PositiveLambda0,
    PresetFormatError,
    UnknownPreset,
    ZeroTrace,
)
from solvflow.lib.core.lie_algebra import LieAlgebraData, ricci_operator
from solvflow.lib.core.presets import (
    available_presets,
    load_preset_file,
    params_from_algebra,
    preset,
)
from solvflow.lib.core.solvsoliton import (
    SolvsolitonParams,
    detect_flat_soliton,
    detect_solvsoliton,
    normalize,
)

__all__ = [
    "AlgebraError",
    "JacobiViolation",
    "LieAlgebraData",
    "NegativeDerivationSpectrum",
    "NotASoliton",
    "NotAntisymmetric",
    "NotUnimodular",
    "PositiveLambda0",
    "PresetFormatError",
    "SolvsolitonParams",
    "UnknownPreset",
    "ZeroTrace",
    "available_presets",
    "detect_flat_soliton",
    "detect_solvsoliton",
    "load_preset_file",
    "normalize",
    "params_from_algebra",
    "preset",
    "ricci_operator",
]
