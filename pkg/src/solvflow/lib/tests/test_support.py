import logging

import pytest

from solvflow.lib import config_file, logger
from solvflow.lib.core import UnknownPreset
from solvflow.lib.env_config import get_thread_cap, is_verbose_env_vars
from solvflow.lib.utils import format_float, format_row, system_run


@pytest.fixture
def config_path(tmp_path, monkeypatch):
    path = tmp_path / "solvflow.ini"
    monkeypatch.setenv("SOLVFLOW_CONFIG", str(path))
    config_file.reload_config()
    yield path
    config_file.reload_config()


@pytest.fixture
def quiet(monkeypatch):
    monkeypatch.setattr(logger, "_IS_VERBOSE", False)


###############
# environment #
###############


@pytest.mark.parametrize(
    ("value", "expected"),
    [(None, 1), ("4", 4), ("0", 1), ("-3", 1), ("many", 1)],
)
def test_thread_cap(monkeypatch, value, expected):
    if value is None:
        monkeypatch.delenv("SOLVFLOW_THREADS", raising=False)
    else:
        monkeypatch.setenv("SOLVFLOW_THREADS", value)
    assert get_thread_cap() == expected


@pytest.mark.parametrize(
    ("value", "expected"), [("1", True), ("TRUE", True), ("yes", False)]
)
def test_verbose_env_var(monkeypatch, value, expected):
    monkeypatch.setenv("SOLVFLOW_VERBOSE", value)
    assert is_verbose_env_vars() is expected


###############
# config file #
###############


def test_config_override(config_path):
    config_path.write_text("[INTEGRATOR]\nrtol = 1e-8\n", encoding="utf-8")
    assert config_file.get_config_file() == config_path
    assert config_file.get_config_section("INTEGRATOR") == {"rtol": "1e-8"}
    assert config_file.get_config_section("PRESETS") is None


def test_missing_override_warns(config_path, caplog):
    assert config_file.get_config_section("INTEGRATOR") is None
    assert "missing file" in caplog.text


###########
# logging #
###########


def test_configure_logging_is_idempotent():
    logger.configure_logging()
    logger.configure_logging()
    owned = [h for h in logger.LOG.handlers if getattr(h, "_solvflow", False)]
    assert len(owned) == 1


def test_print_exception_for_domain_errors(quiet, caplog):
    logger.print_exception(UnknownPreset("h4", ["heisenberg3"]))
    assert "UnknownPreset: No preset named 'h4'" in caplog.text
    assert logger.VERBOSE_NOTICE in caplog.text


def test_print_exception_for_other_errors(quiet, caplog):
    logger.print_exception(ZeroDivisionError("division by zero"))
    assert "ZeroDivisionError('division by zero')" in caplog.text


def test_system_run_exits_with_status_1(quiet, caplog):
    with pytest.raises(SystemExit) as exc_info, system_run():
        raise UnknownPreset("h4", [])
    assert exc_info.value.code == 1
    assert caplog.records[0].levelno == logging.ERROR


##############
# formatting #
##############


@pytest.mark.parametrize(
    ("value", "expected"),
    [(0.1, "0.10000000000000001"), (1.0, "1"), (-0.375, "-0.375")],
)
def test_format_float(value, expected):
    assert format_float(value) == expected
    assert float(format_float(value)) == value


def test_format_row():
    assert format_row([1.0, 0.5]) == "1,0.5"
