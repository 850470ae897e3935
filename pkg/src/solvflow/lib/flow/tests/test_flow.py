import math

import numpy as np
import pytest

from solvflow.lib.constants import EventKind, SystemKind
from solvflow.lib.core import normalize, preset
from solvflow.lib.flow import (
    DegenerateEigenspace,
    EinsteinSystem,
    FullSystem,
    LambdaOutOfRange,
    NonNegativeLambda,
    NoScalSystem,
    PhasePoint,
    ScalarFlat,
    closed_form_eigenvalues,
    direction_from_angle,
    einstein_conservation_defect,
    einstein_direction_closed_form,
    einstein_field,
    einstein_jacobian,
    einstein_stationary_points,
    einstein_unstable_direction,
    einstein_z,
    embed_einstein,
    embed_noscal,
    in_einstein_region,
    jacobian,
    make_system,
    noscal_field,
    noscal_jacobian,
    noscal_unstable_direction,
    noscal_unstable_eigenvalue,
    omega_margins,
    reflect,
    rescale_lambda,
    stationary_points,
    unstable_eigendata,
    vector_field,
)
from solvflow.lib.flow.eigen import EigenData

CURVED_PRESETS = ["heisenberg3", "heisenberg:5", "sol"]


@pytest.fixture(scope="module")
def h3():
    return preset("heisenberg3")[1]


def _central_difference(f, p, step=1e-6):
    p = np.asarray(p, dtype=float)
    columns = []
    for k in range(len(p)):
        e = np.zeros_like(p)
        e[k] = step
        columns.append((f(p + e) - f(p - e)) / (2 * step))
    return np.array(columns).T


################
# vector_field #
################


def test_vector_field_at_origin(h3):
    np.testing.assert_allclose(vector_field((0, 0, 0, 0), h3), [3 / 8, 0, 0, 3 / 8])


@pytest.mark.parametrize("name", CURVED_PRESETS)
def test_stationary_points_are_zeros(name):
    _, params = preset(name)
    for point in stationary_points(params):
        assert np.max(np.abs(vector_field(point, params))) <= 1e-13


def test_stationary_points_heisenberg3(h3):
    points = stationary_points(h3)
    assert points.s_plus == pytest.approx((1 / 3, 1.0, -1 / 8, 1.0))
    assert points.h_plus == pytest.approx(
        (math.sqrt(1 / 8), 0.0, 0.0, math.sqrt(9 / 8))
    )
    assert points.h_minus == pytest.approx(
        (-math.sqrt(1 / 8), 0.0, 0.0, -math.sqrt(9 / 8))
    )


def test_scalar_flat_has_no_full_flow():
    _, params = preset("abelian:3")
    with pytest.raises(ScalarFlat):
        vector_field((0.1, 0.1, 0.0, 1.0), params)
    with pytest.raises(ScalarFlat):
        unstable_eigendata(params)


@pytest.mark.parametrize("name", CURVED_PRESETS)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_jacobian_matches_central_differences(name, seed):
    _, params = preset(name)
    p = np.random.default_rng(seed).uniform(-1.0, 1.0, size=4)
    numeric = _central_difference(lambda q: vector_field(q, params), p)
    exact = jacobian(p, params)
    scale = max(1.0, np.max(np.abs(exact)))
    np.testing.assert_allclose(exact, numeric, atol=1e-6 * scale)


def test_jacobian_spectrum_at_einstein_point(h3):
    eigenvalues = np.sort(np.linalg.eigvals(jacobian(stationary_points(h3).s_plus, h3)))
    np.testing.assert_allclose(eigenvalues.real, [-1.5, -1.5, 0.5, 0.5], atol=1e-7)


def test_jacobian_spectrum_at_hyperbolic_point(h3):
    eigenvalues = np.linalg.eigvals(jacobian(stationary_points(h3).h_plus, h3))
    assert np.all(np.abs(eigenvalues.real) > 1e-3)
    np.testing.assert_allclose(
        np.sort(eigenvalues.real), [-1.5455, -1.0607, -0.7071, 0.4848], atol=1e-3
    )


def test_omega_margins(h3):
    margins = omega_margins((0.3, 0.5, -0.05, 1.0), h3)
    np.testing.assert_allclose(margins, [0.5, 0.4, 0.075, 0.05])
    stacked = omega_margins(np.array([[0.3, 0.5, -0.05, 1.0]] * 3), h3)
    assert stacked.shape == (3, 4)


#############
# EigenData #
#############


def test_closed_form_eigenvalues(h3):
    assert closed_form_eigenvalues(h3) == pytest.approx((0.5, -1.5))


@pytest.mark.parametrize("name", CURVED_PRESETS)
def test_unstable_subspace_is_invariant(name):
    _, params = preset(name)
    eig = unstable_eigendata(params)
    j = jacobian(stationary_points(params).s_plus, params)
    for v in eig.w_basis:
        np.testing.assert_allclose(j @ v, eig.eps_plus * v, atol=1e-10)
    assert eig.xz_condition < 1e12


def test_eigendata_heisenberg3(h3):
    eig = unstable_eigendata(h3)
    assert eig.eps_plus == pytest.approx(0.5)
    assert eig.eps_minus == pytest.approx(-1.5)
    w0 = np.array([5.0, -210.0, 37.5, 15.0])
    w1 = np.array([-2 / 3, -2.0, 0.0, 3.0])
    np.testing.assert_allclose(eig.w0, w0 / np.linalg.norm(w0), atol=1e-10)
    np.testing.assert_allclose(eig.w1, w1 / np.linalg.norm(w1), atol=1e-10)
    assert eig.theta0 == pytest.approx(math.atan(2 / 15), abs=1e-10)
    assert eig.admissible_range == (pytest.approx(-math.pi / 2), eig.theta0)


def test_w1_has_x_to_y_ratio_one_to_n():
    for name in CURVED_PRESETS:
        _, params = preset(name)
        eig = unstable_eigendata(params)
        assert eig.w1[1] == pytest.approx(params.n * eig.w1[0], rel=1e-9)
        assert eig.w1[3] > 0


def test_direction_from_angle(h3):
    eig = unstable_eigendata(h3)
    at_theta0 = direction_from_angle(eig.theta0, eig)
    np.testing.assert_allclose(at_theta0, eig.w0, atol=1e-10)
    at_minus_half_pi = direction_from_angle(-math.pi / 2, eig)
    np.testing.assert_allclose(abs(at_minus_half_pi @ eig.w1), 1.0, atol=1e-10)
    assert at_minus_half_pi[0] < 0
    at_zero = direction_from_angle(0.0, eig)
    expected = np.array([0.0, -6.0, 1.0, 1.0])
    np.testing.assert_allclose(at_zero, expected / np.linalg.norm(expected), atol=1e-10)


@pytest.mark.parametrize("theta", np.linspace(-1.5, 0.1, 7))
def test_direction_from_angle_xz_projection(h3, theta):
    v = direction_from_angle(theta, unstable_eigendata(h3))
    assert np.linalg.norm(v) == pytest.approx(1.0)
    assert math.atan2(v[0], v[2]) == pytest.approx(theta, abs=1e-10)


def test_degenerate_projection_is_rejected(h3):
    eig = unstable_eigendata(h3)
    basis = np.array([eig.w0, eig.w0])
    degenerate = EigenData(eig.eps_plus, eig.eps_minus, basis, eig.theta0)
    with pytest.raises(DegenerateEigenspace) as exc_info:
        direction_from_angle(0.0, degenerate)
    assert "singular" in str(exc_info.value)


##############
# symmetries #
##############


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_reflection_conjugates_the_field(h3, seed):
    p = np.random.default_rng(seed).normal(size=4)
    r = np.diag([-1.0, -1.0, 1.0, -1.0])
    np.testing.assert_allclose(
        vector_field(reflect(p), h3), -r @ vector_field(p, h3), atol=1e-14
    )


def test_rescale_lambda_maps_the_field(h3):
    lambda2 = -0.75
    k = math.sqrt(lambda2 / h3.lam)
    p = np.array([0.2, 0.3, -0.05, 1.4])
    q, s = rescale_lambda(p, 2.0, h3.lam, lambda2)
    assert s == pytest.approx(2.0 / k)
    # d/ds₂ of the image equals k·(d/ds₁ of the scaled components)
    image_rate = vector_field(q, h3.with_lambda(lambda2))
    scaled_rate = np.array([k, k, k * k, k]) * vector_field(p, h3) * k
    np.testing.assert_allclose(image_rate, scaled_rate, atol=1e-13)


def test_rescale_lambda_rejects_positive():
    with pytest.raises(NonNegativeLambda):
        rescale_lambda((0, 0, 0, 0), 0.0, -0.5, 0.5)


############
# Einstein #
############


def test_einstein_unstable_direction_heisenberg3(h3):
    v = einstein_unstable_direction(h3)
    expected = np.array([5.0, -210.0])
    np.testing.assert_allclose(v, expected / np.linalg.norm(expected), atol=1e-12)
    np.testing.assert_allclose(einstein_direction_closed_form(h3), v, atol=1e-12)


@pytest.mark.parametrize("name", CURVED_PRESETS)
def test_einstein_direction_is_eigenvector(name):
    _, params = preset(name)
    v = einstein_unstable_direction(params)
    j = einstein_jacobian(einstein_stationary_points(params)[0], params)
    eps_plus, _ = closed_form_eigenvalues(params)
    assert np.max(np.abs(j @ v - eps_plus * v)) < 1e-10
    assert v[0] > 0
    assert v[1] < 0


@pytest.mark.parametrize("name", CURVED_PRESETS)
def test_einstein_stationary_points(name):
    _, params = preset(name)
    for q in einstein_stationary_points(params):
        assert np.max(np.abs(einstein_field(q, params))) <= 1e-13


@pytest.mark.parametrize("name", CURVED_PRESETS)
@pytest.mark.parametrize("seed", [0, 1])
def test_einstein_jacobian_matches_central_differences(name, seed):
    _, params = preset(name)
    q = np.random.default_rng(seed).uniform(0.0, 1.0, size=2)
    numeric = _central_difference(lambda r: einstein_field(r, params), q)
    np.testing.assert_allclose(einstein_jacobian(q, params), numeric, atol=1e-6)


@pytest.mark.parametrize("name", CURVED_PRESETS)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_einstein_conservation_defect_vanishes(name, seed):
    _, params = preset(name)
    q = np.random.default_rng(seed).uniform(-2.0, 2.0, size=2)
    assert abs(einstein_conservation_defect(q, params)) < 1e-12


def test_einstein_embedding_is_invariant(h3):
    for q in [(0.3, 0.5), (0.35, 0.1), (1 / 3, 1.0)]:
        p = embed_einstein(q, h3)
        rate = vector_field(p, h3)
        x_rate, y_rate = einstein_field(q, h3)
        assert rate[0] == pytest.approx(x_rate, abs=1e-12)
        assert rate[1] == pytest.approx(y_rate, abs=1e-12)
        # tangent to {w = nx} and to the graph of einstein_z
        assert rate[3] - h3.n * rate[0] == pytest.approx(0.0, abs=1e-12)
        grad = np.array([2 * q[0] * h3.n * (h3.n - 1), -2 * q[1] * h3.tr_d0_sq])
        assert rate[2] == pytest.approx(grad @ np.array([x_rate, y_rate]), abs=1e-12)


def test_einstein_z_at_stationary_point(h3):
    assert einstein_z((1 / 3, 1.0), h3) == pytest.approx(h3.s0, abs=1e-14)


def test_in_einstein_region(h3):
    start = np.array([1 / 3, 1.0]) + 1e-6 * einstein_unstable_direction(h3)
    assert in_einstein_region(start, h3)
    assert not in_einstein_region((-0.1, 0.5), h3)


##########
# noscal #
##########


def test_noscal_field_and_direction():
    lam = -0.375
    np.testing.assert_allclose(noscal_field((1.0, 1.0), lam), [0.0, 0.0])
    mu_plus = noscal_unstable_eigenvalue(lam)
    assert mu_plus == pytest.approx(0.5)
    u = noscal_unstable_direction(lam)
    j = noscal_jacobian((1.0, 1.0), lam)
    np.testing.assert_allclose(j @ u, mu_plus * u, atol=1e-14)


@pytest.mark.parametrize("lam", [0.0, -1.0, 0.3, -2.0])
def test_noscal_lambda_out_of_range(lam):
    with pytest.raises(LambdaOutOfRange) as exc_info:
        noscal_field((1.0, 1.0), lam)
    assert "λ" in str(exc_info.value)


@pytest.mark.parametrize("name", CURVED_PRESETS)
def test_noscal_embedding_is_invariant(name):
    _, params = preset(name)
    lam = params.lambda0
    for q in [(0.5, 1.3), (1.0, 1.0), (0.2, 2.0)]:
        rate = vector_field(embed_noscal(q, params), params)
        y_rate, w_rate = noscal_field(q, lam)
        assert rate[1] == pytest.approx(y_rate, abs=1e-12)
        assert rate[3] == pytest.approx(w_rate, abs=1e-12)
        assert rate[2] == pytest.approx(0.0, abs=1e-12)
        assert rate[0] * params.n == pytest.approx(rate[1] * params.tr_d, abs=1e-12)


###########
# systems #
###########


def test_make_system(h3):
    assert isinstance(make_system(SystemKind.FULL, h3), FullSystem)
    assert isinstance(make_system("einstein", h3), EinsteinSystem)
    assert isinstance(make_system(SystemKind.NOSCAL, lam=-0.3), NoScalSystem)
    rescaled = make_system(SystemKind.FULL, h3, lam=-0.75)
    assert rescaled.params.lam == -0.75


def test_full_system_stationary_points_depend_on_lambda(h3):
    assert set(FullSystem(h3).stationary_points()) == {
        "gamma_S+",
        "gamma_S-",
        "gamma_H+",
        "gamma_H-",
    }
    assert set(FullSystem(h3.with_lambda(-0.75)).stationary_points()) == {
        "gamma_H+",
        "gamma_H-",
    }


def test_full_system_monitors(h3):
    monitors = FullSystem(h3).monitors()
    kinds = [m.kind for m in monitors]
    assert kinds.count(EventKind.OMEGA_EXIT) == 4
    assert kinds.count(EventKind.W_MINUS_NX_SIGN_CHANGE) == 1
    inside = np.array([0.3, 0.5, -0.05, 1.0])
    for monitor in monitors[:4]:
        assert monitor.function(inside) > 0


def test_system_call_signature(h3):
    system = FullSystem(h3)
    p = PhasePoint(0.3, 0.5, -0.05, 1.0)
    np.testing.assert_array_equal(system(0.0, np.array(p)), vector_field(p, h3))


def test_flat_params_reject_curved_systems():
    params = normalize(-1.0, np.eye(3), 3)
    with pytest.raises(ScalarFlat):
        FullSystem(params)
    with pytest.raises(ScalarFlat):
        EinsteinSystem(params)
