from __future__ import annotations

from pathlib import Path


class IntegrationError(RuntimeError):
    pass


class NotCaptured(IntegrationError):
    def __init__(self, what: str):
        msg = f"{what} needs a trajectory captured by γ^S at its start"
        super().__init__(msg)


class UnsupportedMethod(IntegrationError):
    def __init__(self, method: str, supported):
        msg = (
            f"Integration method {method!r} is not an explicit embedded pair. "
            f"Use one of: {', '.join(supported)}"
        )
        super().__init__(msg)


class TrajectoryFormatError(IntegrationError):
    def __init__(self, path: Path | str, problem: str):
        msg = f"Invalid trajectory file {path}: {problem}"
        super().__init__(msg)
