"""Size caps, overridable through the environment."""

from __future__ import annotations

import os

DEFAULT_MAX_ORDER = 512
DEFAULT_CENSUS_CAP = 96


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {raw!r}")
    return value


def max_order() -> int:
    return _env_int("RESIDUA_MAX_ORDER", DEFAULT_MAX_ORDER)


def census_cap() -> int:
    return _env_int("RESIDUA_CENSUS_CAP", DEFAULT_CENSUS_CAP)
