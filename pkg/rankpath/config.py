"""
Runtime configuration read from the environment (and an optional .env file)
"""

import os
from dataclasses import dataclass, replace

from dotenv import load_dotenv

DEFAULT_CAP = 10_000_000

load_dotenv()


@dataclass(frozen=True)
class Settings:
    """Resolved runtime settings"""

    cap: int = DEFAULT_CAP
    jobs: int = 1
    log_level: str = "INFO"
    output_format: str = "text"

    def override(self, **changes):
        """Return a copy with the non-None values in changes applied"""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


def _int_env(name, default):
    """Read a positive integer from the environment"""
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw.replace("_", ""))
    except ValueError as e:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def load_settings():
    """Build Settings from RANKPATH_* environment variables"""
    return Settings(
        cap=_int_env("RANKPATH_CAP", DEFAULT_CAP),
        jobs=_int_env("RANKPATH_JOBS", 1),
        log_level=os.environ.get("RANKPATH_LOG_LEVEL", "INFO").upper(),
        output_format=os.environ.get("RANKPATH_FORMAT", "text").lower(),
    )
