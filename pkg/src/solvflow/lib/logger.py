import logging
import sys

_IS_VERBOSE = True
LOG = logging.getLogger("solvflow")
# numpy and scipy report overflow and step-size trouble through `warnings`
WARNINGS_LOG = logging.getLogger("py.warnings")
VERBOSE_NOTICE = "Run with --verbose for more information"
_FORMAT = "[%(levelname)s] %(message)s"


def _update_log_level() -> None:
    LOG.setLevel(logging.DEBUG if _IS_VERBOSE else logging.INFO)


def set_not_verbose() -> None:
    global _IS_VERBOSE
    _IS_VERBOSE = False
    _update_log_level()


def is_verbose() -> bool:
    return _IS_VERBOSE


def _has_stderr_handler(logger: logging.Logger) -> bool:
    return any(getattr(h, "_solvflow", False) for h in logger.handlers)


def configure_logging() -> None:
    """Attach one stderr handler to the package and `py.warnings` loggers.

    Calling it again does not add handlers.
    """
    _update_log_level()
    logging.captureWarnings(True)
    for logger in (LOG, WARNINGS_LOG):
        if _has_stderr_handler(logger):
            continue
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        handler._solvflow = True  # type: ignore[attr-defined]
        logger.addHandler(handler)


def is_domain_error(e: BaseException) -> bool:
    return type(e).__module__.startswith("solvflow.")


def print_exception(e: Exception) -> None:
    if _IS_VERBOSE:
        LOG.exception(e)
        return
    if is_domain_error(e):
        LOG.error(f"{type(e).__name__}: {e}")
    else:
        LOG.error(f"{e!r}")
    LOG.error(VERBOSE_NOTICE)
