import os
from typing import Mapping, Optional

from pydantic import BaseModel, Field

import logging
logger = logging.getLogger(__name__)

THREADS_ENV = "SIGNED_ENGEL_THREADS"
CHUNK_ELEMENTS_ENV = "SIGNED_ENGEL_CHUNK_ELEMENTS"

DEFAULT_CHUNK_ELEMENTS = 1 << 20


class Settings(BaseModel):
    """Runtime knobs. None of them may change a computed result."""
    threads: int = Field(default=1, ge=1)
    chunk_elements: int = Field(default=DEFAULT_CHUNK_ELEMENTS, ge=1)


def _int_from_env(env: Mapping[str, str], name: str) -> Optional[int]:
    raw = env.get(name)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def load_settings(env: Optional[Mapping[str, str]] = None, threads: Optional[int] = None) -> Settings:
    """
    Build settings from the environment.

    Args:
        env: Mapping to read from, defaults to os.environ
        threads: Explicit worker bound that wins over the environment

    Returns:
        Validated Settings
    """
    env = os.environ if env is None else env
    env_threads = _int_from_env(env, THREADS_ENV)
    chunk_elements = _int_from_env(env, CHUNK_ELEMENTS_ENV)

    resolved_threads = threads or env_threads or os.cpu_count() or 1
    settings = Settings(
        threads=max(1, resolved_threads),
        chunk_elements=chunk_elements or DEFAULT_CHUNK_ELEMENTS,
    )
    logger.debug(f"Settings resolved: {settings}")
    return settings
