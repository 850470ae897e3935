from __future__ import annotations

from typing import Callable, Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from solvflow.lib.integrate.trajectory import Trajectory

Integrand = Callable[[np.ndarray], np.ndarray]

_GAUSS_ORDER = 8


def cumulative_integral(
    t: Trajectory, integrand: Integrand, anchor: Optional[float] = None
) -> np.ndarray:
    """∫_anchor^s integrand(γ(u)) du at every sample time s of `t`.

    `integrand` maps an (m, dim) array of states to m values. With a dense
    interpolant the integral is exact to the order of a Gauss–Legendre rule on
    every integrator step; without one the samples are combined by the
    trapezoid rule. The anchor defaults to the first sample.
    """
    anchor = float(t.times[0]) if anchor is None else float(anchor)
    if len(t) == 1:
        return np.zeros(1)
    if t.dense is None:
        order = np.argsort(t.times)
        times = t.times[order]
        values = cumulative_trapezoid(integrand(t.states[order]), times, initial=0.0)
        values = values - np.interp(anchor, times, values)
        result = np.empty_like(values)
        result[order] = values
        return result

    lo, hi = float(np.min(t.times)), float(np.max(t.times))
    breaks = t.dense.breakpoints
    nodes = np.unique(
        np.concatenate([t.times, breaks[(breaks > lo) & (breaks < hi)], [anchor]])
    )
    x, weights = np.polynomial.legendre.leggauss(_GAUSS_ORDER)
    left, right = nodes[:-1], nodes[1:]
    half = 0.5 * (right - left)
    points = (0.5 * (left + right))[:, np.newaxis] + half[:, np.newaxis] * x
    samples = integrand(t.dense(points.ravel())).reshape(points.shape)
    pieces = half * (samples @ weights)
    cumulative = np.concatenate([[0.0], np.cumsum(pieces)])
    cumulative = cumulative - np.interp(anchor, nodes, cumulative)
    return np.interp(t.times, nodes, cumulative)
