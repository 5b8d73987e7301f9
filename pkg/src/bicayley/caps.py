"""Desk-scale search limits.

All exhaustive searches are guarded by a cap and raise :class:`CapExceeded`
past it.  ``BCI_MAX_ELEMENTS`` in the environment overrides every cap at once.
"""

from __future__ import annotations

import os

GROUP_ORDER = 1024
SUBGROUP_SEARCH = 256
PERM_ELEMENTS = 4_000_000
CANONICAL_VERTICES = 1024


class CapExceeded(RuntimeError):
    """A search would exceed its configured size limit."""

    def __init__(self, what: str, limit: int, reached: int | None = None):
        self.what = what
        self.limit = limit
        self.reached = reached
        msg = f"{what}: cap {limit} exceeded"
        if reached is not None:
            msg += f" (reached {reached})"
        super().__init__(msg)


def cap(default: int) -> int:
    env = os.environ.get("BCI_MAX_ELEMENTS")
    if env:
        return int(env)
    return default
