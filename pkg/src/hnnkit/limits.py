"""Shared resource-limit defaults."""

import os

MEM_CAP_ENV = "HNNKIT_MEM_CAP"
DEFAULT_MEM_CAP = 20_000_000  # elements held by a ball index or cache


def default_mem_cap() -> int:
    raw = os.environ.get(MEM_CAP_ENV)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise ValueError(f"{MEM_CAP_ENV} must be an integer, got {raw!r}") from None
    return DEFAULT_MEM_CAP
