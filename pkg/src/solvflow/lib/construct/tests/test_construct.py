import math

import numpy as np
import pytest

from solvflow.lib.constants import EventKind
from solvflow.lib.construct import (
    CaptureFailed,
    NonNegativeZ,
    OutsideAdmissibleRange,
    ShotConfig,
    SweepRow,
    alphas_distinct,
    backward_options,
    crossing_time,
    emerge,
    reconstruct,
    richardson_check,
    shift_alignment,
    shoot_einstein,
    shoot_family,
    shoot_noscal,
    soliton_residual,
    sweep,
    theta_grid,
)
from solvflow.lib.core import preset
from solvflow.lib.flow import (
    FullSystem,
    einstein_stationary_points,
    in_einstein_region,
    reflect,
    rescale_lambda,
    stationary_points,
    unstable_eigendata,
)
from solvflow.lib.integrate import IntegratorOptions, integrate, monitor_phi

DEFAULTS = IntegratorOptions()


@pytest.fixture(scope="module")
def h3():
    return preset("heisenberg3")[1]


@pytest.fixture(scope="module")
def eig(h3):
    return unstable_eigendata(h3)


@pytest.fixture(scope="module")
def shot(h3):
    return shoot_family(0.0, h3, ShotConfig(options=DEFAULTS))


@pytest.fixture(scope="module")
def einstein(h3):
    return shoot_einstein(h3, ShotConfig(options=DEFAULTS))


class MutatedSystem(FullSystem):
    """y′ with the sign of z/s₀ flipped."""

    def field(self, p):
        rate = super().field(p)
        rate[1] -= 2.0 * p[2] / self.params.s0
        return rate


################
# shoot_family #
################


@pytest.mark.parametrize("theta", [-1.4, -0.7, 0.0, None])
def test_theorem_shots_stay_in_omega(h3, eig, theta):
    theta = eig.theta0 / 2 if theta is None else theta
    family = shoot_family(theta, h3, ShotConfig(options=DEFAULTS))
    t = family.trajectory
    assert t.captured_at_start
    assert t.times[-1] == pytest.approx(100.0)
    forward = [e for e in t.events if e.time > 0]
    assert [e.kind for e in forward] == [EventKind.MAX_TIME]
    tail = t.states[t.times >= 0]
    assert np.max(np.abs(tail[:, 0])) <= 10.0
    assert np.max(np.abs(tail[:, 1])) <= 10.0
    assert family.profile.l_positive
    assert np.all(family.profile.phi > 0)
    potential = monitor_phi(t, h3)
    assert np.max(np.abs(potential.residual)) < 1e-6
    assert np.all(potential.phi_prime > 0)
    assert np.all(potential.phi_second > 0)


@pytest.mark.parametrize("theta", [-math.pi / 2, 1.0, 2.0])
def test_shoot_family_outside_range(h3, theta):
    with pytest.raises(OutsideAdmissibleRange) as exc_info:
        shoot_family(theta, h3)
    assert "admissible range" in str(exc_info.value)


def test_shoot_family_without_backward_capture(h3):
    config = ShotConfig(s_backward=-1.0, options=DEFAULTS)
    with pytest.raises(CaptureFailed) as exc_info:
        shoot_family(0.0, h3, config)
    assert "gamma_S+" in str(exc_info.value)


@pytest.mark.parametrize(
    ("delta", "radius"),
    [
        (1e-6, 2.5e-7),
        (1e-4, 2.5e-5),
        (1e-9, 1e-8),
    ],
)
def test_backward_capture_radius_follows_delta(delta, radius):
    opts = backward_options(ShotConfig(delta=delta, options=DEFAULTS))
    assert opts.capture_radius == pytest.approx(radius)
    assert opts.rtol == DEFAULTS.rtol


@pytest.mark.parametrize("name", ["heisenberg3", "heisenberg:5", "sol"])
def test_shipped_presets_are_captured_backward(name):
    _, params = preset(name)
    family = shoot_family(0.0, params, ShotConfig(s_forward=20.0, options=DEFAULTS))
    t = family.trajectory
    assert t.captured_at_start
    assert t.capture.detail == "gamma_S+"
    assert -30.0 < t.times[0] < 0.0


def test_emerge_outside_range_still_integrates(h3):
    t = emerge(h3, ShotConfig(theta=1.0, s_forward=30.0, options=DEFAULTS))
    assert t.captured_at_start
    assert t.times[-1] <= 30.0


def test_backward_leg_leaves_at_unstable_rate(shot, h3, eig):
    t = shot.trajectory
    start = stationary_points(h3).s_plus.as_array()
    backward = t.times <= 0
    distance = np.linalg.norm(t.states[backward] - start, axis=1)
    slope, _ = np.polyfit(t.times[backward], np.log(distance), 1)
    assert slope == pytest.approx(eig.eps_plus, abs=0.02)


def test_family_near_theta0_follows_einstein_shot(h3, eig, einstein):
    family = shoot_family(eig.theta0 - 1e-3, h3, ShotConfig(options=DEFAULTS))
    embedded = einstein.embedded
    level = h3.s0 / 2
    shift = shift_alignment(family.trajectory, embedded, level)
    end = crossing_time(embedded, level)
    window = (embedded.times >= end - 20.0) & (embedded.times <= end)
    times = embedded.times[window]
    aligned = family.trajectory.sample(times - shift)
    assert np.max(np.abs(aligned[:, :3] - embedded.states[window, :3])) < 1e-2


##################
# shoot_einstein #
##################


def test_einstein_shot_reaches_hyperbolic_point(einstein, h3):
    _, h_point = einstein_stationary_points(h3)
    assert h_point.x == pytest.approx(0.35355339, abs=1e-8)
    assert einstein.capture_distance <= 1e-6
    np.testing.assert_allclose(einstein.trajectory.final_state, h_point, atol=1e-6)
    assert einstein.z_drift <= 1e-9


def test_einstein_shot_starts_inside_k(einstein, h3):
    t = einstein.trajectory
    assert t.times[0] == 0.0
    assert not t.captured_at_start
    assert all(in_einstein_region(q, h3) for q in t.states)
    assert t.capture.detail == "gamma_H+|E"
    assert t.capture.time == t.times[-1]


def test_einstein_shot_is_monotone(einstein):
    states = einstein.trajectory.states
    assert np.all(np.diff(states[:, 0]) >= -1e-12)
    assert np.all(np.diff(states[:, 1]) <= 1e-12)


def test_einstein_embedding_solves_soliton_equations(einstein, h3):
    embedded = einstein.embedded
    assert embedded.dim == 4
    np.testing.assert_allclose(embedded.states[:, 3], h3.n * embedded.states[:, 0])
    profile = reconstruct(embedded, h3)
    assert soliton_residual(profile, embedded, h3).sup < 1e-9


################
# shoot_noscal #
################


def test_noscal_without_offset_stays_put(h3):
    t = shoot_noscal(h3.lam, ShotConfig(delta=0.0, options=DEFAULTS))
    np.testing.assert_allclose(t.final_state, [1.0, 1.0])
    assert t.captured_at_start


def test_noscal_shot_expands(h3):
    t = shoot_noscal(h3.lam, ShotConfig(options=DEFAULTS))
    assert t.times[-1] == pytest.approx(200.0)
    assert t.events_of(EventKind.BLOWUP) == []
    tail = t.states[t.times > 100.0]
    assert np.all(np.diff(tail[:, 1]) > 0)
    assert np.all(tail[:, 0] > 0)


###############
# reconstruct #
###############


def test_profile_metric_relations(shot, h3):
    profile = shot.profile
    t = shot.trajectory
    np.testing.assert_allclose(profile.c**2 * t.states[:, 2], h3.s0, rtol=1e-12)
    assert profile.h[np.argmin(np.abs(profile.s_grid))] == 0.0
    np.testing.assert_allclose(profile.f_prime, t.states[:, 3] - 3 * t.states[:, 0])
    forward = profile.s_grid >= 0
    assert np.all(np.diff(profile.c[forward]) > 0)


def test_profile_starts_at_solvmanifold(shot, h3):
    # c² = s₀/z = 1 and L = xI + yD₀ = diag(1/4, 1/4, 1/2) at γ^S
    profile = shot.profile
    assert profile.c[0] == pytest.approx(1.0, abs=1e-6)
    np.testing.assert_allclose(
        np.sort(profile.l_spectrum[0]), [0.25, 0.25, 0.5], atol=1e-6
    )


def test_reconstruct_rejects_positive_z(h3):
    t = integrate(FullSystem(h3), [0.2, 0.1, 0.05, 1.5], (0.0, 1.0), DEFAULTS)
    with pytest.raises(NonNegativeZ) as exc_info:
        reconstruct(t, h3)
    assert "≥ 0" in str(exc_info.value)


####################
# soliton_residual #
####################


def test_soliton_residual_vanishes_on_the_flow(shot, h3):
    residual = soliton_residual(shot.profile, shot.trajectory, h3)
    assert residual.sup < 1e-9


def test_soliton_residual_detects_a_wrong_flow(shot, h3):
    residual = soliton_residual(
        shot.profile, shot.trajectory, h3, MutatedSystem(h3)
    )
    assert residual.sup > 1e-2


####################
# richardson_check #
####################


def test_shift_covariance(h3, eig):
    report = richardson_check(0.0, h3, ShotConfig(options=DEFAULTS))
    assert report.expected_shift == pytest.approx(math.log(2.0) / eig.eps_plus)
    assert report.shift_error <= 0.01
    assert report.max_distance <= 1e-5


def test_crossing_time_without_crossing(shot):
    with pytest.raises(ValueError) as exc_info:
        crossing_time(shot.trajectory, 1.0)
    assert "never crosses" in str(exc_info.value)


##############
# symmetries #
##############


def test_reflected_shot_is_a_trajectory(shot, h3):
    t = shot.trajectory
    start = np.array(reflect(t.sample(24.0)))
    image = integrate(FullSystem(h3), start, (0.0, 4.0), DEFAULTS)
    grid = np.linspace(0.0, 4.0, 41)
    expected = np.array([reflect(p) for p in t.sample(24.0 - grid)])
    assert np.max(np.abs(image.sample(grid) - expected)) <= 1e-7


def test_rescaled_shot_is_a_trajectory(shot, h3):
    t = shot.trajectory
    lambda2 = -0.75
    start, s_start = rescale_lambda(t.sample(40.0), 40.0, h3.lam, lambda2)
    k = 40.0 / s_start
    image = integrate(
        FullSystem(h3.with_lambda(lambda2)),
        np.array(start),
        (s_start, 60.0 / k),
        DEFAULTS,
    )
    original = np.linspace(40.0, 60.0, 41)
    expected = np.array(
        [
            rescale_lambda(p, s, h3.lam, lambda2)[0]
            for s, p in zip(original, t.sample(original))
        ]
    )
    assert np.max(np.abs(image.sample(original / k) - expected)) <= 1e-7


#########
# sweep #
#########


def test_theta_grid(eig):
    grid = theta_grid(eig, 9)
    margin = 0.05 * (eig.theta0 + math.pi / 2)
    assert len(grid) == 9
    assert grid[0] == pytest.approx(-math.pi / 2 + margin)
    assert grid[-1] == pytest.approx(eig.theta0 - margin)
    assert np.all(np.diff(grid) > 0)


def _row(alpha):
    return SweepRow(0.0, alpha, alpha, 0.3, -9.0, 1e-8, True)


@pytest.mark.parametrize(
    "alphas, expected",
    [
        ([1.0, 1.5, 2.0], True),
        ([1.0, 1.005, 2.0], False),
        ([1.0, float("nan")], False),
        ([], True),
    ],
)
def test_alphas_distinct(alphas, expected):
    assert alphas_distinct([_row(a) for a in alphas]) is expected


def test_sweep_family_is_distinct(h3, monkeypatch):
    monkeypatch.setenv("SOLVFLOW_THREADS", "2")
    rows = sweep(h3, 9, ShotConfig(options=DEFAULTS))
    assert [row.theta for row in rows] == list(theta_grid(unstable_eigendata(h3), 9))
    assert all(row.omega_clean for row in rows)
    assert all(row.alpha > 0 for row in rows)
    assert all(row.s_capture < 0 for row in rows)
    assert alphas_distinct(rows)
