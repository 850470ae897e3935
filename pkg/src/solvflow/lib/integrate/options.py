from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional

from solvflow.lib.config_file import get_config_section
from solvflow.lib.constants import (
    DEFAULT_ATOL,
    DEFAULT_CAPTURE_RADIUS,
    DEFAULT_METHOD,
    DEFAULT_NORM_CAP,
    DEFAULT_RTOL,
    EXPLICIT_METHODS,
)
from solvflow.lib.integrate.exceptions import UnsupportedMethod

LOG = logging.getLogger(__name__)

_FLOAT_KEYS = ("rtol", "atol", "norm_cap", "capture_radius")


@dataclass(frozen=True)
class IntegratorOptions:
    rtol: float = DEFAULT_RTOL
    atol: float = DEFAULT_ATOL
    norm_cap: float = DEFAULT_NORM_CAP
    capture_radius: float = DEFAULT_CAPTURE_RADIUS
    method: str = DEFAULT_METHOD
    monitor_events: bool = True

    def __post_init__(self) -> None:
        if self.method not in EXPLICIT_METHODS:
            raise UnsupportedMethod(self.method, EXPLICIT_METHODS)

    @classmethod
    def from_config(cls, **overrides: Optional[object]) -> IntegratorOptions:
        """Built-in defaults, then the [INTEGRATOR] section, then `overrides`.

        Overrides that are None are ignored, so CLI options can be passed through.
        """
        values: dict = {}
        section = get_config_section("INTEGRATOR")
        if section is not None:
            for key, value in section.items():
                if key in _FLOAT_KEYS:
                    values[key] = float(value)
                elif key == "method":
                    values[key] = value.strip()
                else:
                    LOG.warning(f"Ignoring unknown [INTEGRATOR] key {key!r}")
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def tightened(self, factor: float) -> IntegratorOptions:
        return replace(self, rtol=self.rtol / factor, atol=self.atol / factor)
