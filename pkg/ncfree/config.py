"""
Runtime configuration.

Settings come from environment variables only; there is no config file.

    NCFREE_MAX_N       ground-set cap for exhaustive enumeration (1..12, default 12)
    NCFREE_LOG_LEVEL   logging level name for the CLI (default WARNING)
"""

import logging
import os
from dataclasses import dataclass
from typing import Mapping, Optional

from ncfree.errors import DomainError

logger = logging.getLogger(__name__)

HARD_GROUND_SET_CAP = 12
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Settings:
    """Process-wide settings.

    Attributes:
        max_ground_set: Largest n accepted by enumerate_nc and friends
        log_level: Logging level name used by the CLI
    """

    max_ground_set: int = HARD_GROUND_SET_CAP
    log_level: str = "WARNING"


def load_settings(environ: Optional[Mapping[str, str]] = None) -> Settings:
    """
    Build Settings from the environment.

    Args:
        environ: Mapping to read from (defaults to os.environ)

    Returns:
        Settings instance

    Raises:
        DomainError: If NCFREE_MAX_N is not an integer in 1..12
    """
    env = os.environ if environ is None else environ

    raw_cap = env.get("NCFREE_MAX_N")
    cap = HARD_GROUND_SET_CAP
    if raw_cap is not None and raw_cap.strip():
        try:
            cap = int(raw_cap)
        except ValueError:
            raise DomainError(f"NCFREE_MAX_N must be an integer, got '{raw_cap}'")
        if not 1 <= cap <= HARD_GROUND_SET_CAP:
            raise DomainError(
                f"NCFREE_MAX_N must lie in 1..{HARD_GROUND_SET_CAP}, got {cap}"
            )

    level = env.get("NCFREE_LOG_LEVEL", "WARNING").strip().upper() or "WARNING"
    return Settings(max_ground_set=cap, log_level=level)


def ground_set_cap() -> int:
    """Current ground-set cap (re-read from the environment on every call)."""
    return load_settings().max_ground_set


def configure_logging(level: str = "WARNING") -> None:
    """
    Install one stderr handler on the root logger.

    Only the CLI calls this; library modules just create their loggers.
    """
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        raise DomainError(f"Unknown log level '{level}'")
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(numeric)
    logger.debug("logging configured at %s", level.upper())
