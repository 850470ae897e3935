from __future__ import annotations

from pathlib import Path


class AlgebraError(ValueError):
    pass


class NotAntisymmetric(AlgebraError):
    def __init__(self, defect: float):
        msg = f"Structure constants are not antisymmetric (defect {defect:.3e})"
        super().__init__(msg)


class JacobiViolation(AlgebraError):
    def __init__(self, defect: float):
        msg = f"Jacobi identity fails (max defect {defect:.3e})"
        super().__init__(msg)


class NotUnimodular(AlgebraError):
    def __init__(self, traces):
        msg = f"Lie algebra is not unimodular: tr ad(e_i) = {list(traces)}"
        super().__init__(msg)


class NotASoliton(AlgebraError):
    def __init__(self, reason: str):
        msg = f"Metric Lie algebra is not a solvsoliton: {reason}"
        super().__init__(msg)


class PositiveLambda0(AlgebraError):
    def __init__(self, lambda0: float):
        msg = f"Fitted λ₀ = {lambda0!r} is not negative"
        super().__init__(msg)


class ZeroTrace(AlgebraError):
    def __init__(self):
        super().__init__("Soliton derivation has zero trace; use the noscal system")


class NegativeDerivationSpectrum(AlgebraError):
    def __init__(self, spectrum):
        msg = f"Soliton derivation has a negative eigenvalue: {list(spectrum)}"
        super().__init__(msg)


class UnknownPreset(AlgebraError):
    def __init__(self, name: str, known):
        msg = f"No preset named {name!r}. Known presets: {', '.join(known)}"
        super().__init__(msg)


class PresetFormatError(AlgebraError):
    def __init__(self, path: Path | str, problem: str):
        msg = f"Invalid preset file {path}: {problem}"
        super().__init__(msg)
