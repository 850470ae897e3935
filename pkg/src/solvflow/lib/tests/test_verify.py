import math

import pytest

from solvflow.lib.core import preset
from solvflow.lib.verify import CheckResult, PropertySuite, run_suite


@pytest.fixture(scope="module")
def h3_suite():
    return PropertySuite(*preset("heisenberg3"))


class _CheapSuite(PropertySuite):
    def checks(self):
        return [self.check_stationarity, self.check_eigenvalues]


##################
# algebra checks #
##################


@pytest.mark.parametrize(
    "check",
    ["check_stationarity", "check_eigenvalues", "check_jacobian", "check_derivation"],
)
def test_algebraic_checks_pass(h3_suite, check):
    results = getattr(h3_suite, check)()
    assert results
    for result in results:
        assert isinstance(result, CheckResult)
        assert result.passed, result


def test_derivation_detail_names_lambda0(h3_suite):
    (result,) = h3_suite.check_derivation()
    lambda0 = float(result.detail.removeprefix("λ₀ = ").split()[0])
    assert lambda0 == pytest.approx(-1.5, abs=1e-12)


def test_thetas_lie_in_the_admissible_range(h3_suite):
    assert all(-math.pi / 2 < theta < h3_suite.eig.theta0 for theta in h3_suite.thetas)


#######
# run #
#######


def test_run_collects_results():
    results = _CheapSuite(*preset("heisenberg3")).run()
    assert [r.name for r in results] == ["stationary points", "eigenvalues at γ^S"]
    assert all(r.passed for r in results)


def test_run_turns_errors_into_failures(caplog):
    results = _CheapSuite(*preset("abelian:3")).run()
    assert len(results) == 2
    first = results[0]
    assert first.name == "stationarity"
    assert not first.passed
    assert math.isnan(first.value)
    assert "scalar-flat" in first.detail
    assert "Check stationarity raised" in caplog.text


def test_noscal_check_skipped_outside_its_range():
    alg, params = preset("heisenberg3")
    suite = PropertySuite(alg, params.with_lambda(-1.5))
    assert suite.check_noscal() == []


################
# full presets #
################


def test_suite_passes_on_heisenberg3():
    results = run_suite(*preset("heisenberg3"))
    failed = [r for r in results if not r.passed]
    assert not failed, failed
    names = [r.name for r in results]
    assert "Einstein capture distance" in names
    assert "δ-shift covariance" in names
    assert "residual detects a wrong flow" in names


def test_suite_on_abelian_preset_runs_flat_checks():
    results = run_suite(*preset("abelian:2"))
    assert all(r.passed for r in results), results
    assert [r.name for r in results] == [
        "flat Ricci operator",
        "flat derivation D = I",
        "no-scal stationary points",
        "no-scal eigenvalue μ₊",
        "no-scal y > 0 and w increasing",
        "no-scal w/(−λσ) → 1",
        "no-scal y·(−λσ) → 1",
    ]
