import contextlib
import logging
import sys
from typing import Generator, Iterable

from solvflow.lib.constants import SIGNIFICANT_DIGITS
from solvflow.lib.logger import print_exception

LOG = logging.getLogger(__name__)


def format_float(value: float) -> str:
    """Format a float so that it round-trips through text exactly."""
    return f"{float(value):.{SIGNIFICANT_DIGITS}g}"


def format_row(values: Iterable[float]) -> str:
    return ",".join(format_float(v) for v in values)


@contextlib.contextmanager
def system_run() -> Generator[None, None, None]:
    try:
        yield
    except Exception as e:  # noqa: BLE001
        print_exception(e)
        sys.exit(1)
