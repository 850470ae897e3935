from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from solvflow.lib.constants import DEFAULT_DELTA, DEFAULT_S_BACKWARD
from solvflow.lib.integrate import IntegratorOptions


@dataclass(frozen=True)
class ShotConfig:
    """Emergence angle, offset from the stationary point and integration spans.

    `s_forward` left as None selects the default of the shot type.
    """

    theta: float = 0.0
    delta: float = DEFAULT_DELTA
    s_forward: Optional[float] = None
    s_backward: float = DEFAULT_S_BACKWARD
    options: IntegratorOptions = field(default_factory=IntegratorOptions.from_config)

    def __post_init__(self) -> None:
        if self.delta < 0:
            raise ValueError(f"δ must be non-negative, got {self.delta!r}")
        if self.s_backward >= 0:
            raise ValueError(f"s_backward must be negative, got {self.s_backward!r}")

    def forward_span(self, default: float) -> float:
        return default if self.s_forward is None else self.s_forward

    def with_theta(self, theta: float) -> ShotConfig:
        return replace(self, theta=theta)

    def with_delta(self, delta: float) -> ShotConfig:
        return replace(self, delta=delta)
