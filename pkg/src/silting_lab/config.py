"""Runtime defaults, overridable through the environment."""

from __future__ import annotations

import os

DEFAULT_TRUNCATION = 8
DEFAULT_DELTA = 2


def truncation_default() -> int:
    return int(os.environ.get("SILTING_TRUNC", DEFAULT_TRUNCATION))


def delta_default() -> int:
    return int(os.environ.get("SILTING_DELTA", DEFAULT_DELTA))
