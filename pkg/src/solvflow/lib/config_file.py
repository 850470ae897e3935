import logging
from configparser import ConfigParser
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

from platformdirs import user_config_dir

from solvflow.lib.env_config import get_config_override

logger = logging.getLogger(__name__)


def get_config_file() -> Path:
    """SOLVFLOW_CONFIG if set, else solvflow.ini in the user config folder."""
    override = get_config_override()
    if override is not None:
        return Path(override).expanduser()
    return Path(user_config_dir()) / "solvflow.ini"


@lru_cache
def get_config() -> ConfigParser:
    config_parser = ConfigParser()
    file_to_read = get_config_file()
    if config_parser.read(file_to_read, encoding="utf-8"):
        logger.debug(f"Read config file: {file_to_read}")
    elif get_config_override() is not None:
        logger.warning(f"SOLVFLOW_CONFIG points to a missing file: {file_to_read}")
    else:
        logger.debug(f"Config file not found: {file_to_read}")
    return config_parser


def reload_config() -> None:
    get_config.cache_clear()


def get_config_section(section_name: str) -> Optional[Dict[str, Any]]:
    config = get_config()
    if section_name not in config:
        return None
    return dict(config[section_name])
