"""Shots from the Einstein solvmanifold point and the two degenerate families."""

from __future__ import annotations

import logging
import math
from dataclasses import replace
from typing import NamedTuple, Optional

import numpy as np

from solvflow.lib.constants import (
    BACKWARD_CAPTURE_FRACTION,
    DEFAULT_EINSTEIN_S_FORWARD,
    DEFAULT_NOSCAL_S_FORWARD,
    DEFAULT_S_FORWARD,
    REGION_TOL,
    EventKind,
)
from solvflow.lib.construct.exceptions import (
    CaptureFailed,
    LeftK,
    OutsideAdmissibleRange,
    ShotInvariantViolated,
)
from solvflow.lib.construct.profile import MetricProfile, reconstruct
from solvflow.lib.construct.shot_config import ShotConfig
from solvflow.lib.core import SolvsolitonParams
from solvflow.lib.flow import (
    EigenData,
    EinsteinSystem,
    FullSystem,
    NoScalSystem,
    direction_from_angle,
    einstein_stationary_points,
    einstein_unstable_direction,
    einstein_z,
    embed_einstein,
    in_einstein_region,
    noscal_unstable_direction,
    stationary_points,
    unstable_eigendata,
)
from solvflow.lib.integrate import (
    Event,
    IntegratorOptions,
    Trajectory,
    cumulative_integral,
    integrate,
)

LOG = logging.getLogger(__name__)

_EINSTEIN_CAPTURE_TOL = 1e-6
_FORWARD_VIOLATIONS = (EventKind.OMEGA_EXIT, EventKind.W_MINUS_NX_SIGN_CHANGE)


class FamilyShot(NamedTuple):
    trajectory: Trajectory
    profile: MetricProfile
    eig: EigenData


class EinsteinShot(NamedTuple):
    trajectory: Trajectory
    embedded: Trajectory
    z_drift: float
    capture_distance: float


def is_admissible(theta: float, eig: EigenData) -> bool:
    return -math.pi / 2 < theta < eig.theta0


def backward_options(config: ShotConfig) -> IntegratorOptions:
    """Options of a backward leg that starts δ away from γ^S.

    Going backward the offset along W shrinks like e^{ε₊s} while the O(δ²)
    distance to the true unstable manifold grows like e^{−ε₋s}, so the
    trajectory only comes within a fraction of δ of γ^S before it is pushed
    away again. The capture ball is widened to that fraction.
    """
    radius = BACKWARD_CAPTURE_FRACTION * config.delta
    radius = max(config.options.capture_radius, radius)
    return replace(config.options, capture_radius=radius)


def emerge(
    params: SolvsolitonParams,
    config: ShotConfig,
    eig: Optional[EigenData] = None,
) -> Trajectory:
    """Integrate both legs through γ^S + δ·v_θ without asserting anything.

    The backward leg runs to s_backward or capture, the forward leg to
    s_forward; the legs are joined at s = 0.
    """
    eig = eig or unstable_eigendata(params)
    v = direction_from_angle(config.theta, eig)
    p0 = stationary_points(params).s_plus.as_array() + config.delta * v
    system = FullSystem(params)
    s_forward = config.forward_span(DEFAULT_S_FORWARD)
    span = (0.0, config.s_backward)
    backward = integrate(system, p0, span, backward_options(config))
    forward = integrate(system, p0, (0.0, s_forward), config.options)
    LOG.debug(
        f"θ = {config.theta!r}: backward {len(backward)} samples, "
        f"forward {len(forward)} samples"
    )
    return Trajectory.join(backward, forward)


def shoot_family(
    theta: float, params: SolvsolitonParams, config: Optional[ShotConfig] = None
) -> FamilyShot:
    """Shoot the family member γ_θ and reconstruct its metric.

    For θ ∈ (−π/2, θ₀) the forward leg stays in Ω with w > nx; any event
    saying otherwise is raised as ShotInvariantViolated.
    """
    config = (config or ShotConfig()).with_theta(theta)
    eig = unstable_eigendata(params)
    if not is_admissible(theta, eig):
        raise OutsideAdmissibleRange(theta, eig.theta0)
    t = emerge(params, config, eig)
    if not t.captured_at_start:
        raise CaptureFailed("gamma_S+", f"backward leg ended at s = {t.times[0]!r}")
    for event in t.events:
        if event.time > 0 and event.kind in _FORWARD_VIOLATIONS:
            raise ShotInvariantViolated(event.kind.value, event.time, event.detail)
    return FamilyShot(t, reconstruct(t, params), eig)


def _check_einstein_region(t: Trajectory, params: SolvsolitonParams) -> None:
    for time, q in zip(t.times, t.states):
        if not in_einstein_region(q, params, REGION_TOL):
            raise LeftK(float(time), q)
    x_steps = np.diff(t.states[:, 0])
    y_steps = np.diff(t.states[:, 1])
    bad = np.flatnonzero((x_steps < -REGION_TOL) | (y_steps > REGION_TOL))
    if len(bad):
        k = bad[0] + 1
        raise LeftK(float(t.times[k]), t.states[k])


def _embed(t: Trajectory, params: SolvsolitonParams) -> Trajectory:
    states = np.array([embed_einstein(q, params) for q in t.states])
    events = [
        Event(e.time, e.kind, e.detail, np.array(embed_einstein(e.state, params)))
        for e in t.events
    ]
    return Trajectory(FullSystem(params), t.times, states, events, t.stats)


def _einstein_attempt(params: SolvsolitonParams, config: ShotConfig) -> EinsteinShot:
    system = EinsteinSystem(params)
    s_point, h_point = einstein_stationary_points(params)
    q0 = np.array(s_point) + config.delta * einstein_unstable_direction(params)
    s_forward = config.forward_span(DEFAULT_EINSTEIN_S_FORWARD)
    # the connection starts on the unstable direction of γ^S|_E; only the
    # forward leg towards the sink γ^H|_E is integrated
    t = integrate(system, q0, (0.0, s_forward), config.options)
    _check_einstein_region(t, params)

    capture = t.capture
    if capture is None or capture.detail != "gamma_H+|E":
        raise CaptureFailed("gamma_H+|E", f"shot ended at s = {t.times[-1]!r}")
    capture_distance = float(np.linalg.norm(t.final_state - np.array(h_point)))
    if capture_distance > _EINSTEIN_CAPTURE_TOL:
        raise CaptureFailed("gamma_H+|E", f"distance {capture_distance:.3e}")

    # z is transported by z′ = 2z(tr D·y/n − x) along the Einstein flow
    n, tr_d = params.n, params.tr_d
    exponent = cumulative_integral(
        t, lambda states: 2.0 * (tr_d * states[:, 1] / n - states[:, 0])
    )
    z = np.array([einstein_z(q, params) for q in t.states])
    z_drift = float(np.max(np.abs(z[0] * np.exp(exponent) - z)))
    LOG.debug(f"Einstein capture at {capture_distance:.3e}, z drift {z_drift:.3e}")
    return EinsteinShot(t, _embed(t, params), z_drift, capture_distance)


def shoot_einstein(
    params: SolvsolitonParams, config: Optional[ShotConfig] = None
) -> EinsteinShot:
    """Heteroclinic connection from γ^S|_E to γ^H|_E inside the Einstein set."""
    config = config or ShotConfig()
    try:
        return _einstein_attempt(params, config)
    except LeftK as e:
        LOG.warning(f"{e}; retrying with tolerances divided by 100")
    tighter = replace(config, options=config.options.tightened(100.0))
    return _einstein_attempt(params, tighter)


def shoot_noscal(lam: float, config: Optional[ShotConfig] = None) -> Trajectory:
    """Forward shot from (1, 1) + δ·u along the unstable direction with w increasing."""
    config = config or ShotConfig()
    system = NoScalSystem(lam)
    p0 = np.array([1.0, 1.0]) + config.delta * noscal_unstable_direction(lam)
    s_forward = config.forward_span(DEFAULT_NOSCAL_S_FORWARD)
    t = integrate(system, p0, (0.0, s_forward), config.options)
    for event in t.events_of(EventKind.BLOWUP):
        raise ShotInvariantViolated(event.kind.value, event.time, event.detail)
    return t
