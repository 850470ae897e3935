"""The reduced 4D flow, its Jacobian, stationary points and the region Ω."""

from __future__ import annotations

import math
from typing import NamedTuple, Tuple

import numpy as np

from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow.exceptions import ScalarFlat
from solvflow.lib.flow.phase_point import PhasePoint

OMEGA_INEQUALITIES: Tuple[str, ...] = ("0 < y", "y < nx", "s0 < z", "z < 0")


class StationaryPoints(NamedTuple):
    s_plus: PhasePoint
    s_minus: PhasePoint
    h_plus: PhasePoint
    h_minus: PhasePoint


def require_curved(params: SolvsolitonParams) -> None:
    if params.scalar_flat or params.s0 == 0:
        raise ScalarFlat()


def vector_field(p, params: SolvsolitonParams) -> np.ndarray:
    """x′ = z/n − λ − wx, y′ = z/s₀ − wy, z′ = 2z(tr D·y/n − x),
    w′ = −λ − nx² − y² tr D₀².
    """
    require_curved(params)
    x, y, z, w = (float(v) for v in p)
    n, lam = params.n, params.lam
    return np.array(
        [
            z / n - lam - w * x,
            z / params.s0 - w * y,
            2.0 * z * (params.tr_d * y / n - x),
            -lam - n * x * x - y * y * params.tr_d0_sq,
        ]
    )


def jacobian(p, params: SolvsolitonParams) -> np.ndarray:
    require_curved(params)
    x, y, z, w = (float(v) for v in p)
    n = params.n
    t = params.tr_d
    return np.array(
        [
            [-w, 0.0, 1.0 / n, -x],
            [0.0, -w, 1.0 / params.s0, -y],
            [-2.0 * z, 2.0 * z * t / n, 2.0 * (t * y / n - x), 0.0],
            [-2.0 * n * x, -2.0 * y * params.tr_d0_sq, 0.0, 0.0],
        ]
    )


def hyperbolic_point(lam: float, n: int) -> PhasePoint:
    return PhasePoint(math.sqrt(-lam / n), 0.0, 0.0, math.sqrt(-lam * n))


def stationary_points(params: SolvsolitonParams) -> StationaryPoints:
    require_curved(params)
    x_s = params.tr_d / params.n
    h = hyperbolic_point(params.lam, params.n)
    return StationaryPoints(
        s_plus=PhasePoint(x_s, 1.0, params.s0, 1.0),
        s_minus=PhasePoint(-x_s, -1.0, params.s0, -1.0),
        h_plus=h,
        h_minus=PhasePoint(-h.x, 0.0, 0.0, -h.w),
    )


def omega_margins(states, params: SolvsolitonParams) -> np.ndarray:
    """Margins of the inequalities 0 < y < nx, s₀ < z < 0 (positive inside Ω).

    Accepts a single state or an (m, 4) array; the last axis holds the margins.
    """
    states = np.asarray(states, dtype=float)
    x, y, z = states[..., 0], states[..., 1], states[..., 2]
    return np.stack([y, params.n * x - y, z - params.s0, -z], axis=-1)
