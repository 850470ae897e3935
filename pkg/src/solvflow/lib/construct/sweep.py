"""θ-sweeps across the one-parameter family of expanding solitons."""

from __future__ import annotations

import logging
import math
import multiprocessing as mp
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from solvflow.lib.asymptotics import alpha_from_fits, fit_rates
from solvflow.lib.constants import DEFAULT_SWEEP_COUNT, SWEEP_MARGIN_FRACTION
from solvflow.lib.construct.exceptions import CaptureFailed
from solvflow.lib.construct.shooting import emerge
from solvflow.lib.construct.shot_config import ShotConfig
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.env_config import get_thread_cap
from solvflow.lib.flow import EigenData, stationary_points, unstable_eigendata
from solvflow.lib.integrate import monitor_omega

LOG = logging.getLogger(__name__)

ALPHA_DISTINCT_TOL = 0.01


class SweepRow(NamedTuple):
    theta: float
    alpha: float
    alpha_previous: float
    sup_x: float
    s_capture: float
    capture_distance: float
    omega_clean: bool


def theta_grid(eig: EigenData, count: int = DEFAULT_SWEEP_COUNT) -> np.ndarray:
    """`count` angles spread uniformly inside (−π/2, θ₀), kept off both ends."""
    lo, hi = -math.pi / 2, eig.theta0
    margin = SWEEP_MARGIN_FRACTION * (hi - lo)
    return np.linspace(lo + margin, hi - margin, count)


def sweep_row(
    theta: float, params: SolvsolitonParams, config: Optional[ShotConfig] = None
) -> SweepRow:
    config = (config or ShotConfig()).with_theta(theta)
    t = emerge(params, config)
    if not t.captured_at_start:
        raise CaptureFailed("gamma_S+", f"θ = {theta!r}: no backward capture")
    forward = t.restricted(0.0, float(t.times[-1]))
    report = monitor_omega(forward, params)
    alpha, alpha_previous = alpha_from_fits(fit_rates(t, params))
    start = stationary_points(params).s_plus.as_array()
    row = SweepRow(
        theta=float(theta),
        alpha=alpha,
        alpha_previous=alpha_previous,
        sup_x=float(np.max(forward.states[:, 0])),
        s_capture=float(t.times[0]),
        capture_distance=float(np.linalg.norm(t.initial_state - start)),
        omega_clean=report.clean,
    )
    LOG.debug(f"Sweep row: {row}")
    return row


def _sweep_row(args: Tuple[float, SolvsolitonParams, ShotConfig]) -> SweepRow:
    return sweep_row(*args)


def sweep(
    params: SolvsolitonParams,
    count: int = DEFAULT_SWEEP_COUNT,
    config: Optional[ShotConfig] = None,
    workers: Optional[int] = None,
) -> List[SweepRow]:
    """One row per angle of `theta_grid`, in grid order.

    Shots are independent; with more than one worker they run in a process
    pool. The worker count is capped by SOLVFLOW_THREADS.
    """
    config = config or ShotConfig()
    thetas = theta_grid(unstable_eigendata(params), count)
    jobs = [(float(theta), params, config) for theta in thetas]
    workers = min(workers or get_thread_cap(), get_thread_cap(), len(jobs))
    LOG.info(f"Sweeping {len(jobs)} angles with {workers} worker(s)")
    if workers <= 1:
        return [_sweep_row(job) for job in jobs]
    with mp.Pool(workers) as pool:
        return pool.map(_sweep_row, jobs)


def alphas_distinct(rows: List[SweepRow], tol: float = ALPHA_DISTINCT_TOL) -> bool:
    """True when every pair of α values differs by at least `tol` relatively."""
    alphas = [row.alpha for row in rows]
    if not all(math.isfinite(a) for a in alphas):
        return False
    for i, a in enumerate(alphas):
        for b in alphas[i + 1 :]:
            if abs(a - b) < tol * max(abs(a), abs(b)):
                return False
    return True
