"""Compensated quantities on the forward tail and their window averages."""

from __future__ import annotations

import logging
import math
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from solvflow.lib.asymptotics.limits import asymptotic_origin, origin_for
from solvflow.lib.asymptotics.tau import tau_time
from solvflow.lib.asymptotics.windows import (
    Window,
    min_samples_for,
    rate_windows,
    window_grid,
)
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.integrate import Trajectory, cumulative_integral

LOG = logging.getLogger(__name__)

W_RATE = "w/(-lambda*sigma)"
X_RATE = "x*sigma"
Y_RATE = "y*sigma^2"
Z_RATE = "z*sigma^2"
V_TAU_RATE = "v*sqrt(-2*lambda*tau)"
X_TAU_RATE = "x*sqrt(2*tau/(-lambda))"
SIGMA_TAU_RATE = "sigma/sqrt(2*tau/(-lambda))"
Y_TAU_RATE = "y*tau"
NOSCAL_Y_RATE = "y*(-lambda*sigma)"
NOSCAL_H_SPREAD = "h-log(sigma)/(-lambda)"
COMPENSATED_COLUMNS = ("s", "sigma", X_RATE, Y_RATE, Z_RATE, W_RATE)

Quantity = Callable[[Dict[str, np.ndarray]], np.ndarray]


class RateFit(NamedTuple):
    """Window average of a compensated quantity.

    `relative_error` is |fitted − limit|/|limit| for a nonzero limit, the decay
    ratio |fitted/previous| for a zero limit, and the two-window variation
    |fitted − previous|/|fitted| when the limit is unknown (None).
    """

    quantity: str
    predicted_limit: Optional[float]
    window: Tuple[float, float]
    fitted_value: float
    relative_error: float
    previous_value: float


def _relative_error(limit: Optional[float], fitted: float, previous: float) -> float:
    if limit is None:
        return abs(fitted - previous) / abs(fitted) if fitted else math.inf
    if limit == 0:
        return abs(fitted / previous) if previous else math.inf
    return abs(fitted - limit) / abs(limit)


def _fit(
    quantities: List[Tuple[str, Optional[float], Quantity]],
    columns: Callable[[np.ndarray], Dict[str, np.ndarray]],
    t: Trajectory,
) -> List[RateFit]:
    windows = rate_windows(t.times)
    means: List[List[float]] = []
    for window in windows:
        grid = window_grid(t.times, window, min_samples_for(t))
        values = columns(grid)
        means.append([float(np.mean(q(values))) for _, _, q in quantities])
    fits = []
    for k, (name, limit, _) in enumerate(quantities):
        previous, fitted = means[0][k], means[1][k]
        fits.append(
            RateFit(
                quantity=name,
                predicted_limit=limit,
                window=windows[1],
                fitted_value=fitted,
                relative_error=_relative_error(limit, fitted, previous),
                previous_value=previous,
            )
        )
        LOG.debug(f"{name}: {fitted!r} (previous window {previous!r})")
    return fits


def fit_rates(
    t: Trajectory, params: SolvsolitonParams, origin: Optional[float] = None
) -> List[RateFit]:
    """Rates of the forward end of a full-system trajectory.

    Times are measured as σ = s − s_∞ from the asymptotic origin, and τ is
    anchored there, so the constants do not depend on where the shot put s = 0.
    """
    lam = params.lam
    origin = asymptotic_origin(t, params) if origin is None else origin
    anchor = float(np.clip(origin, np.min(t.times), np.max(t.times)))
    tau = tau_time(t, anchor)
    order = np.argsort(t.times)

    def columns(grid: np.ndarray) -> Dict[str, np.ndarray]:
        states = t.sample(grid)
        return {
            "sigma": grid - origin,
            "tau": np.interp(grid, t.times[order], tau[order]),
            "x": states[:, 0],
            "y": states[:, 1],
            "z": states[:, 2],
            "w": states[:, 3],
        }

    scale = 2.0 / -lam
    quantities: List[Tuple[str, Optional[float], Quantity]] = [
        (W_RATE, 1.0, lambda c: c["w"] / (-lam * c["sigma"])),
        (X_RATE, 1.0, lambda c: c["x"] * c["sigma"]),
        (Y_RATE, 0.0, lambda c: c["y"] * c["sigma"] ** 2),
        (Z_RATE, None, lambda c: c["z"] * c["sigma"] ** 2),
        (V_TAU_RATE, 1.0, lambda c: np.sqrt(-2.0 * lam * c["tau"]) / c["w"]),
        (X_TAU_RATE, 1.0, lambda c: c["x"] * np.sqrt(scale * c["tau"])),
        (SIGMA_TAU_RATE, 1.0, lambda c: c["sigma"] / np.sqrt(scale * c["tau"])),
        (Y_TAU_RATE, 0.0, lambda c: c["y"] * c["tau"]),
    ]
    return _fit(quantities, columns, t)


def compensated_table(
    t: Trajectory, params: SolvsolitonParams, origin: Optional[float] = None
) -> np.ndarray:
    """Rows of COMPENSATED_COLUMNS at every forward sample with σ > 0."""
    origin = asymptotic_origin(t, params) if origin is None else origin
    keep = (t.times >= 0) & (t.times > origin)
    s = t.times[keep]
    x, y, z, w = t.states[keep].T
    sigma = s - origin
    return np.column_stack(
        [s, sigma, x * sigma, y * sigma**2, z * sigma**2, w / (-params.lam * sigma)]
    )


def alpha_from_fits(fits: List[RateFit]) -> Tuple[float, float]:
    """α from z·σ² → −α, over the last and the penultimate window."""
    for fit in fits:
        if fit.quantity == Z_RATE:
            return -fit.fitted_value, -fit.previous_value
    raise ValueError(f"No {Z_RATE} fit among {[f.quantity for f in fits]}")


def noscal_rates(t: Trajectory, lam: float) -> List[RateFit]:
    """w ∼ −λσ, y ∼ 1/(−λσ) and h − log(σ)/(−λ) settling to a constant."""
    origin = origin_for(t, lam)
    anchor = float(t.times[np.argmin(np.abs(t.times))])
    h = cumulative_integral(t, lambda states: states[:, 0], anchor)
    order = np.argsort(t.times)

    def columns(grid: np.ndarray) -> Dict[str, np.ndarray]:
        states = t.sample(grid)
        return {
            "sigma": grid - origin,
            "h": np.interp(grid, t.times[order], h[order]),
            "y": states[:, 0],
            "w": states[:, 1],
        }

    quantities: List[Tuple[str, Optional[float], Quantity]] = [
        (W_RATE, 1.0, lambda c: c["w"] / (-lam * c["sigma"])),
        (NOSCAL_Y_RATE, 1.0, lambda c: c["y"] * (-lam * c["sigma"])),
        (NOSCAL_H_SPREAD, None, lambda c: c["h"] - np.log(c["sigma"]) / (-lam)),
    ]
    return _fit(quantities, columns, t)


def fits_by_name(fits: List[RateFit]) -> Dict[str, RateFit]:
    return {fit.quantity: fit for fit in fits}

