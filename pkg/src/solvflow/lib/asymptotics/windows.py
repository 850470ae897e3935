"""Tail windows over which compensated quantities are averaged."""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from solvflow.lib.asymptotics.exceptions import WindowTooShort
from solvflow.lib.constants import RATE_WINDOW_FRACTION, RATE_WINDOW_SAMPLES
from solvflow.lib.integrate import Trajectory

Window = Tuple[float, float]

MIN_RAW_SAMPLES = 3


def forward_span(times: np.ndarray) -> Window:
    """Span from s = 0 (the shot's start) to the last sample."""
    lo, hi = float(np.min(times)), float(np.max(times))
    return (max(lo, 0.0) if hi > 0 else lo), hi


def rate_windows(
    times: np.ndarray, fraction: float = RATE_WINDOW_FRACTION
) -> List[Window]:
    """The last two disjoint spans of `fraction` of the forward span, oldest first."""
    lo, hi = forward_span(times)
    width = fraction * (hi - lo)
    return [(hi - 2 * width, hi - width), (hi - width, hi)]


def origin_window(
    times: np.ndarray, fraction: float = RATE_WINDOW_FRACTION
) -> Window:
    """The span of `fraction` just before the two rate windows."""
    lo, hi = forward_span(times)
    width = fraction * (hi - lo)
    return hi - 3 * width, hi - 2 * width


def window_grid(
    times: np.ndarray, window: Window, min_samples: int = MIN_RAW_SAMPLES
) -> np.ndarray:
    """Uniform grid over `window`.

    Without a dense interpolant the raw samples must resolve the window; pass
    `min_samples=0` when values on the grid come from dense output.
    """
    inside = int(np.sum((times >= window[0]) & (times <= window[1])))
    if window[1] <= window[0] or inside < min_samples:
        raise WindowTooShort(window, inside)
    return np.linspace(window[0], window[1], RATE_WINDOW_SAMPLES)


def window_mean(times: np.ndarray, values: np.ndarray, window: Window) -> float:
    grid = window_grid(times, window)
    order = np.argsort(times)
    return float(np.mean(np.interp(grid, times[order], values[order])))


def min_samples_for(t: Trajectory) -> int:
    return 0 if t.dense is not None else MIN_RAW_SAMPLES
