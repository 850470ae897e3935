import math

import numpy as np
import pytest

from solvflow.lib.asymptotics import (
    NOSCAL_H_SPREAD,
    NOSCAL_Y_RATE,
    SIGMA_TAU_RATE,
    V_TAU_RATE,
    W_RATE,
    X_RATE,
    X_TAU_RATE,
    Y_RATE,
    Y_TAU_RATE,
    Z_RATE,
    AmbiguousZLimit,
    NonPositiveW,
    WindowTooShort,
    alpha_from_fits,
    asymptotic_origin,
    centre_coords,
    centre_manifold_slope,
    classify_z_limit,
    cone_profile,
    fit_rates,
    fits_by_name,
    hyperbolic_rate,
    noscal_rates,
    origin_window,
    rate_windows,
    tau_system_field,
    tau_time,
)
from solvflow.lib.construct import (
    ShotConfig,
    reconstruct,
    shoot_einstein,
    shoot_family,
    shoot_noscal,
)
from solvflow.lib.core import preset
from solvflow.lib.flow import FullSystem, embed_noscal, vector_field
from solvflow.lib.integrate import IntegratorOptions, Trajectory

DEFAULTS = IntegratorOptions()


@pytest.fixture(scope="module")
def h3():
    return preset("heisenberg3")[1]


@pytest.fixture(scope="module")
def shot(h3):
    return shoot_family(0.0, h3, ShotConfig(options=DEFAULTS))


@pytest.fixture(scope="module")
def fits(shot, h3):
    return fits_by_name(fit_rates(shot.trajectory, h3))


@pytest.fixture(scope="module")
def origin(shot, h3):
    return asymptotic_origin(shot.trajectory, h3)


def _sparse(times, states):
    return Trajectory(None, np.asarray(times, float), np.asarray(states, float))


###########
# windows #
###########


def test_rate_windows_cover_the_forward_tail():
    times = np.linspace(-10.0, 100.0, 200)
    np.testing.assert_allclose(rate_windows(times), [(80.0, 90.0), (90.0, 100.0)])


def test_origin_window_precedes_the_rate_windows():
    times = np.linspace(-10.0, 100.0, 200)
    np.testing.assert_allclose(origin_window(times), (70.0, 80.0))


@pytest.mark.parametrize(
    ("slope", "w_error"),
    [
        (1.0, 0.0),
        (1.1, 0.1),
    ],
)
def test_w_rate_is_checked_against_an_origin_taken_from_x(h3, slope, w_error):
    times = np.linspace(0.0, 100.0, 1001)
    sigma = times + 5.0
    states = np.stack(
        [
            1.0 / sigma,
            0.1 / sigma**3,
            -0.2 / sigma**2,
            -h3.lam * slope * sigma,
        ],
        axis=1,
    )
    t = _sparse(times, states)
    assert asymptotic_origin(t, h3) == pytest.approx(-5.0)
    fits = fits_by_name(fit_rates(t, h3))
    assert fits[X_RATE].relative_error == pytest.approx(0.0, abs=1e-9)
    assert fits[W_RATE].relative_error == pytest.approx(w_error, abs=1e-9)


def test_window_too_short_without_dense_output(h3):
    times = np.linspace(0.0, 10.0, 5)
    states = np.tile([0.1, 0.05, -0.01, 1.0], (5, 1))
    with pytest.raises(WindowTooShort) as exc_info:
        fit_rates(_sparse(times, states), h3)
    assert "holds" in str(exc_info.value)


#############
# fit_rates #
#############


@pytest.mark.parametrize(
    "quantity", [W_RATE, X_RATE, V_TAU_RATE, X_TAU_RATE, SIGMA_TAU_RATE]
)
def test_forward_rates_reach_their_limits(fits, quantity):
    fit = fits[quantity]
    assert fit.predicted_limit == 1.0
    assert fit.relative_error <= 0.05


def test_z_rate_stabilizes_to_a_negative_constant(fits):
    fit = fits[Z_RATE]
    assert fit.predicted_limit is None
    assert fit.fitted_value < 0
    assert fit.relative_error <= 0.1


def test_y_rate_decays(shot, fits, origin):
    # y·σ² ∼ 1/σ at leading order
    y_early = shot.trajectory.sample(origin + 20.0)[1] * 20.0**2
    assert abs(y_early) >= 2.0 * abs(fits[Y_RATE].fitted_value)
    assert fits[Y_TAU_RATE].predicted_limit == 0.0


def test_alpha_from_fits(fits):
    alpha, alpha_previous = alpha_from_fits(list(fits.values()))
    assert alpha == -fits[Z_RATE].fitted_value
    assert alpha > 0
    assert abs(alpha - alpha_previous) <= 0.1 * alpha


def test_alpha_from_fits_without_z_rate(fits):
    with pytest.raises(ValueError) as exc_info:
        alpha_from_fits([fits[W_RATE]])
    assert Z_RATE in str(exc_info.value)


def test_asymptotic_origin_is_the_emergence_time(shot, origin, h3):
    assert 0.0 < origin < 60.0
    w_end = shot.trajectory.final_state[3]
    assert w_end / (-h3.lam * (shot.trajectory.times[-1] - origin)) == pytest.approx(
        1.0, abs=0.05
    )


####################
# classify_z_limit #
####################


def test_family_shot_z_limit_is_zero(shot, h3):
    limit = classify_z_limit(shot.trajectory, h3)
    assert limit.z0 == 0.0
    assert limit.converging
    assert limit.gap < 0.01


def test_noscal_embedding_z_limit_is_s0(h3):
    t = shoot_noscal(h3.lam, ShotConfig(s_forward=50.0, options=DEFAULTS))
    states = np.array([embed_noscal(q, h3) for q in t.states])
    embedded = Trajectory(FullSystem(h3), t.times, states)
    limit = classify_z_limit(embedded, h3)
    assert limit.z0 == h3.s0
    assert limit.gap == 0.0


def test_ambiguous_z_limit(h3):
    times = np.linspace(0.0, 10.0, 11)
    states = np.tile([0.1, 0.05, h3.s0 / 2, 1.0], (11, 1))
    with pytest.raises(AmbiguousZLimit) as exc_info:
        classify_z_limit(_sparse(times, states), h3)
    assert "near neither" in str(exc_info.value)


##########
# τ-time #
##########


def test_tau_grows_quadratically(shot, h3, origin):
    t = shot.trajectory
    anchor = float(np.clip(origin, t.times[0], t.times[-1]))
    tau = tau_time(t, anchor)
    assert np.all(tau[t.times < anchor] < 0)
    assert np.all(tau[t.times > anchor] > 0)
    sigma = t.times[-1] - origin
    assert tau[-1] / sigma**2 == pytest.approx(-h3.lam / 2, rel=0.05)


def test_tau_requires_positive_w():
    times = np.linspace(0.0, 1.0, 5)
    states = np.tile([0.1, 0.05, -0.01, 1.0], (5, 1))
    states[3, 3] = -0.5
    with pytest.raises(NonPositiveW) as exc_info:
        tau_time(_sparse(times, states))
    assert "s = 0.75" in str(exc_info.value)


def test_tau_system_field_is_the_reparametrized_flow(h3):
    rng = np.random.default_rng(7)
    for _ in range(10):
        x, y, z = rng.uniform(-1.0, 1.0, 3)
        w = rng.uniform(0.5, 3.0)
        rate = vector_field([x, y, z, w], h3)
        expected = np.concatenate([rate[:3] / w, [-rate[3] / w**3]])
        np.testing.assert_allclose(
            tau_system_field([x, y, z, 1.0 / w], h3),
            expected,
            rtol=1e-12,
            atol=1e-14,
        )


###################
# centre manifold #
###################


def test_centre_coordinates_approach_the_centre_manifold(shot, h3):
    centre = centre_coords(shot.trajectory, 0.0, h3)
    assert centre.a == -h3.lam
    assert centre.b == 0.0
    ratio = max(abs(centre.eta1[-1]), abs(centre.eta2[-1])) / centre.xi2[-1]
    assert ratio < 0.05
    assert centre_manifold_slope(centre) < 0


########
# cone #
########


def test_cone_profile(shot, h3, fits, origin):
    alpha, _ = alpha_from_fits(list(fits.values()))
    report = cone_profile(shot.profile, alpha, h3, origin)
    assert report.target == pytest.approx(abs(h3.s0) / alpha)
    assert report.relative_error <= 0.05
    assert report.relative_variation <= 0.1


def test_hyperbolic_rate_on_einstein_shot(h3):
    einstein = shoot_einstein(h3, ShotConfig(options=DEFAULTS))
    profile = reconstruct(einstein.embedded, h3)
    rate = hyperbolic_rate(profile, h3)
    assert rate.predicted == pytest.approx(math.sqrt(1 / 8))
    assert rate.relative_error <= 0.02


##########
# noscal #
##########


def test_noscal_rates(h3):
    t = shoot_noscal(h3.lam, ShotConfig(options=DEFAULTS))
    fits = fits_by_name(noscal_rates(t, h3.lam))
    assert fits[W_RATE].relative_error <= 0.05
    assert fits[NOSCAL_Y_RATE].relative_error <= 0.1
    spread = fits[NOSCAL_H_SPREAD]
    assert abs(spread.fitted_value - spread.previous_value) < 0.05
