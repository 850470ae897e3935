from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, NamedTuple, Tuple

import numpy as np

from solvflow.lib.asymptotics.exceptions import WindowTooShort
from solvflow.lib.asymptotics.windows import (
    MIN_RAW_SAMPLES,
    forward_span,
    rate_windows,
    window_mean,
)
from solvflow.lib.constants import RATE_WINDOW_FRACTION
from solvflow.lib.core import SolvsolitonParams

if TYPE_CHECKING:
    from solvflow.lib.construct import MetricProfile

LOG = logging.getLogger(__name__)


class ConeReport(NamedTuple):
    target: float
    window_values: Tuple[float, float]
    relative_variation: float
    relative_error: float


class HyperbolicRate(NamedTuple):
    slope: float
    predicted: float
    relative_error: float


def cone_profile(
    profile: MetricProfile,
    alpha: float,
    params: SolvsolitonParams,
    origin: float = 0.0,
) -> ConeReport:
    """Compare c²/σ² on the tail with |s₀|/α, the constant of the asymptotic cone."""
    sigma = profile.s_grid - origin
    ratio = np.zeros_like(sigma)
    positive = sigma > 0
    ratio[positive] = profile.c[positive] ** 2 / sigma[positive] ** 2
    previous, last = (
        window_mean(profile.s_grid, ratio, window)
        for window in rate_windows(profile.s_grid)
    )
    target = abs(params.s0) / alpha
    report = ConeReport(
        target=target,
        window_values=(previous, last),
        relative_variation=abs(last - previous) / abs(last),
        relative_error=abs(last - target) / target,
    )
    LOG.debug(f"Cone profile: {report}")
    return report


def hyperbolic_rate(
    profile: MetricProfile,
    params: SolvsolitonParams,
    fraction: float = RATE_WINDOW_FRACTION,
) -> HyperbolicRate:
    """Slope of log c on the tail of the Einstein shot against α_H = √(−λ/n)."""
    lo, hi = forward_span(profile.s_grid)
    window = (hi - fraction * (hi - lo), hi)
    tail = profile.s_grid >= window[0]
    if np.sum(tail) < MIN_RAW_SAMPLES:
        raise WindowTooShort(window, int(np.sum(tail)))
    slope, _ = np.polyfit(profile.s_grid[tail], np.log(profile.c[tail]), 1)
    predicted = math.sqrt(-params.lam / params.n)
    return HyperbolicRate(
        float(slope), predicted, abs(float(slope) - predicted) / predicted
    )
