import os
from typing import Optional


def is_env_var_true(env_var: str) -> bool:
    val = os.getenv(env_var)
    return val is not None and val.lower() in ("1", "true")


def is_verbose_env_vars() -> bool:
    return is_env_var_true("SOLVFLOW_VERBOSE")


def get_thread_cap() -> int:
    """Upper bound on sweep workers, from SOLVFLOW_THREADS (default 1)."""
    val = os.getenv("SOLVFLOW_THREADS")
    if val is None:
        return 1
    try:
        return max(1, int(val))
    except ValueError:
        return 1


def get_config_override() -> Optional[str]:
    return os.getenv("SOLVFLOW_CONFIG") or None
