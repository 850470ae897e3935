from __future__ import annotations

import logging
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from solvflow.lib.constants import EventKind, SystemKind
from solvflow.lib.flow import OMEGA_INEQUALITIES, PhaseSystem, omega_margins
from solvflow.lib.integrate.options import IntegratorOptions
from solvflow.lib.integrate.trajectory import (
    DenseOutput,
    Event,
    IntegratorStats,
    Trajectory,
)

LOG = logging.getLogger(__name__)

EventFunction = Callable[[float, np.ndarray], float]


def _event(
    function: Callable[[np.ndarray], float], terminal: bool, direction: float
) -> EventFunction:
    def event(s: float, state: np.ndarray) -> float:
        return float(function(state))

    event.terminal = terminal  # type: ignore[attr-defined]
    event.direction = direction  # type: ignore[attr-defined]
    return event


def _capture_function(point: np.ndarray, radius: float):
    return lambda state: np.linalg.norm(state - point) - radius


def _build_events(
    system: PhaseSystem, opts: IntegratorOptions
) -> Tuple[List[EventFunction], List[Tuple[EventKind, str]]]:
    functions: List[EventFunction] = []
    labels: List[Tuple[EventKind, str]] = []
    if opts.monitor_events:
        for monitor in system.monitors():
            functions.append(_event(monitor.function, False, monitor.direction))
            labels.append((monitor.kind, monitor.detail))
    cap = opts.norm_cap
    functions.append(_event(lambda state: np.linalg.norm(state) - cap, True, 1.0))
    labels.append((EventKind.BLOWUP, f"|p| > {cap:g}"))
    for name, point in system.stationary_points().items():
        capture = _capture_function(point, opts.capture_radius)
        functions.append(_event(capture, True, -1.0))
        labels.append((EventKind.CAPTURED, name))
    return functions, labels


def _captured_by(
    system: PhaseSystem, state: np.ndarray, radius: float
) -> Optional[str]:
    for name, point in system.stationary_points().items():
        if np.linalg.norm(state - point) <= radius:
            return name
    return None


def _start_outside_omega(
    system: PhaseSystem, s0: float, p0: np.ndarray
) -> List[Event]:
    if system.kind != SystemKind.FULL:
        return []
    margins = omega_margins(p0, system.params)  # type: ignore[attr-defined]
    return [
        Event(s0, EventKind.OMEGA_EXIT, name, p0.copy())
        for name, margin in zip(OMEGA_INEQUALITIES, margins)
        if margin <= 0
    ]


def integrate(
    system: PhaseSystem,
    p0,
    s_span: Tuple[float, float],
    opts: Optional[IntegratorOptions] = None,
) -> Trajectory:
    """Integrate `system` from p0 over s_span (forward or backward).

    The Ω inequalities and w − nx are monitored without stopping; blow-up past
    the norm cap and entering the capture ball of a stationary point stop the
    integration.
    """
    opts = opts or IntegratorOptions.from_config()
    p0 = np.asarray(p0, dtype=float)
    s_start, s_end = (float(s) for s in s_span)

    captured = _captured_by(system, p0, opts.capture_radius)
    if captured is not None:
        LOG.debug(f"Start already within {opts.capture_radius:g} of {captured}")
        event = Event(s_start, EventKind.CAPTURED, captured, p0.copy())
        return Trajectory(system, np.array([s_start]), p0[np.newaxis], [event])

    events = _start_outside_omega(system, s_start, p0)
    for event in events:
        LOG.debug(f"Start violates {event.detail}")

    functions, labels = _build_events(system, opts)
    sol = solve_ivp(
        system,
        (s_start, s_end),
        p0,
        method=opts.method,
        rtol=opts.rtol,
        atol=opts.atol,
        dense_output=True,
        events=functions,
    )
    for (kind, detail), times, states in zip(labels, sol.t_events, sol.y_events):
        for time, state in zip(times, states):
            if time == s_start and kind != EventKind.CAPTURED:
                continue
            events.append(Event(float(time), kind, detail, np.array(state)))
            LOG.debug(f"Event {kind.value} ({detail}) at s = {time!r}")

    final_state = sol.y[:, -1]
    if sol.status == 0:
        events.append(Event(float(sol.t[-1]), EventKind.MAX_TIME, "", final_state))
    elif sol.status < 0:
        LOG.warning(f"Integration stopped at s = {sol.t[-1]!r}: {sol.message}")
        underflow = Event(
            float(sol.t[-1]), EventKind.STEP_SIZE_UNDERFLOW, sol.message, final_state
        )
        events.append(underflow)
    events.sort(key=lambda e: abs(e.time - s_start))

    stats = IntegratorStats(
        method=opts.method,
        rtol=opts.rtol,
        atol=opts.atol,
        nfev=int(sol.nfev),
        n_steps=len(sol.t) - 1,
        status=int(sol.status),
        message=sol.message,
    )
    LOG.debug(f"{system.kind.value} integration over {s_span}: {stats}")
    dense = DenseOutput([sol.sol]) if sol.sol is not None else None
    return Trajectory(system, sol.t, sol.y.T, events, [stats], dense)
