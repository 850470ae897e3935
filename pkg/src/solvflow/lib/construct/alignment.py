from __future__ import annotations

import logging
import math
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import brentq

from solvflow.lib.construct.shooting import emerge
from solvflow.lib.construct.shot_config import ShotConfig
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow import unstable_eigendata
from solvflow.lib.integrate import Trajectory

LOG = logging.getLogger(__name__)

_Z = 2
_ALIGNMENT_SAMPLES = 2001


class RichardsonReport(NamedTuple):
    shift: float
    expected_shift: float
    shift_error: float
    max_distance: float


def crossing_time(t: Trajectory, level: float, component: int = _Z) -> float:
    """First s at which `component` crosses `level`, refined on the dense output."""
    values = t.states[:, component] - level
    signs = np.sign(values)
    changes = np.flatnonzero(signs[:-1] * signs[1:] <= 0)
    if not len(changes):
        raise ValueError(f"component {component} never crosses {level!r}")
    k = changes[0]
    lo, hi = float(t.times[k]), float(t.times[k + 1])
    if t.dense is None or values[k] == 0:
        return float(np.interp(0.0, [values[k], values[k + 1]], [lo, hi]))
    return brentq(lambda s: t.dense(s)[component] - level, lo, hi, xtol=1e-14)


def shift_alignment(a: Trajectory, b: Trajectory, level: float) -> float:
    """s-shift taking `a` onto `b`, measured where z crosses `level`.

    z is strictly increasing in Ω, so the crossing is unique.
    """
    return crossing_time(b, level) - crossing_time(a, level)


def richardson_check(
    theta: float, params: SolvsolitonParams, config: Optional[ShotConfig] = None
) -> RichardsonReport:
    """Compare the δ and δ/2 shots after aligning them in s.

    Halving δ delays the emergence by log 2/ε₊.
    """
    config = (config or ShotConfig()).with_theta(theta)
    eig = unstable_eigendata(params)
    a = emerge(params, config, eig)
    b = emerge(params, config.with_delta(config.delta / 2), eig)
    shift = shift_alignment(a, b, params.s0 / 2)
    expected = math.log(2.0) / eig.eps_plus
    hi = min(a.times[-1], b.times[-1] - shift)
    grid = np.linspace(0.0, hi, _ALIGNMENT_SAMPLES)
    distance = np.max(np.abs(a.sample(grid) - b.sample(grid + shift)))
    report = RichardsonReport(
        shift=shift,
        expected_shift=expected,
        shift_error=abs(shift - expected) / expected,
        max_distance=float(distance),
    )
    LOG.debug(f"Richardson check at θ = {theta!r}: {report}")
    return report
