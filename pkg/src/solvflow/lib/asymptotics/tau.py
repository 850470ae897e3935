"""τ-time (dτ = w ds), v = 1/w and the centre-manifold coordinates."""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from solvflow.lib.asymptotics.exceptions import NonPositiveW
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.integrate import Trajectory, cumulative_integral


class CentreVars(NamedTuple):
    tau: np.ndarray
    v: np.ndarray
    xi1: np.ndarray
    xi2: np.ndarray
    eta1: np.ndarray
    eta2: np.ndarray
    a: float
    b: float
    z0: float


def w_column(t: Trajectory) -> int:
    if t.system is not None:
        return t.system.labels.index("w")
    return t.dim - 1


def _require_positive_w(t: Trajectory) -> np.ndarray:
    w = t.states[:, w_column(t)]
    bad = np.flatnonzero(w <= 0)
    if len(bad):
        raise NonPositiveW(float(t.times[bad[0]]), float(w[bad[0]]))
    return w


def tau_time(t: Trajectory, anchor: Optional[float] = None) -> np.ndarray:
    """τ(s) = ∫ w ds, zero at `anchor` (default: the first sample)."""
    _require_positive_w(t)
    k = w_column(t)
    return cumulative_integral(t, lambda states: states[:, k], anchor)


def centre_coords(
    t: Trajectory,
    z0: float,
    params: SolvsolitonParams,
    anchor: Optional[float] = None,
) -> CentreVars:
    """ξ₁ = z − z₀, ξ₂ = v, η₁ = x − a v, η₂ = y − b v along a full trajectory."""
    w = _require_positive_w(t)
    x, y, z = t.states[:, 0], t.states[:, 1], t.states[:, 2]
    a = z0 / params.n - params.lam
    b = z0 / params.s0
    v = 1.0 / w
    return CentreVars(
        tau=tau_time(t, anchor),
        v=v,
        xi1=z - z0,
        xi2=v,
        eta1=x - a * v,
        eta2=y - b * v,
        a=a,
        b=b,
        z0=z0,
    )


def tau_system_field(state, params: SolvsolitonParams) -> np.ndarray:
    """The flow in (x, y, z, v) with v = 1/w, reparametrized by τ."""
    x, y, z, v = (float(c) for c in state)
    n, lam = params.n, params.lam
    w_rate = -lam - n * x * x - y * y * params.tr_d0_sq
    return np.array(
        [
            z * v / n - lam * v - x,
            z * v / params.s0 - y,
            2.0 * v * z * (params.tr_d * y / n - x),
            -(v**3) * w_rate,
        ]
    )


def centre_manifold_slope(centre: CentreVars, fraction: float = 0.5) -> float:
    """Least-squares slope of log(max(|η₁|, |η₂|)/ξ₂) against τ over the tail."""
    tau = centre.tau
    start = tau[-1] - fraction * (tau[-1] - tau[0])
    tail = tau >= start
    ratio = np.maximum(np.abs(centre.eta1), np.abs(centre.eta2)) / centre.xi2
    slope, _ = np.polyfit(tau[tail], np.log(ratio[tail]), 1)
    return float(slope)
