from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np

from solvflow.lib.asymptotics.exceptions import AmbiguousZLimit
from solvflow.lib.asymptotics.windows import (
    forward_span,
    min_samples_for,
    origin_window,
    window_grid,
)
from solvflow.lib.constants import Z_LIMIT_AMBIGUITY
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.integrate import Trajectory

LOG = logging.getLogger(__name__)

_Z = 2


class ZLimit(NamedTuple):
    z0: float
    gap: float
    converging: bool


def classify_z_limit(t: Trajectory, params: SolvsolitonParams) -> ZLimit:
    """Limit of z at the forward end: 0 or s₀, whichever is nearer the end."""
    z = t.states[:, _Z]
    z_end = float(z[-1])
    candidates = (0.0, params.s0)
    z0 = min(candidates, key=lambda c: abs(z_end - c))
    gap = abs(z_end - z0)
    if gap > Z_LIMIT_AMBIGUITY * abs(params.s0):
        raise AmbiguousZLimit(z_end, params.s0)
    lo, hi = forward_span(t.times)
    mid = int(np.argmin(np.abs(t.times - 0.5 * (lo + hi))))
    converging = gap <= abs(float(z[mid]) - z0)
    LOG.debug(f"z → {z0!r}, gap {gap:.3e}, converging {converging}")
    return ZLimit(z0, gap, converging)


def _inverse_sigma(t: Trajectory, lam: float, states: np.ndarray) -> np.ndarray:
    """x ∼ 1/σ on the full flow, −λy ∼ 1/σ on the no-scal flow."""
    if t.system is not None:
        labels = t.system.labels
    else:
        labels = ("y", "w") if t.dim == 2 else ("x", "y", "z", "w")
    if "x" in labels:
        return states[:, labels.index("x")]
    return -lam * states[:, labels.index("y")]


def origin_for(t: Trajectory, lam: float) -> float:
    """s_∞ = mean of s − σ on the origin window, σ from the decaying variable.

    w is not used, so the w/(−λσ) rate stays an independent check.
    """
    window = origin_window(t.times)
    grid = window_grid(t.times, window, min_samples_for(t))
    return float(np.mean(grid - 1.0 / _inverse_sigma(t, lam, t.sample(grid))))


def asymptotic_origin(t: Trajectory, params: SolvsolitonParams) -> float:
    """s_∞ with x ≈ 1/(s − s_∞) on the tail, ahead of the rate windows."""
    return origin_for(t, params.lam)
