"""Backend selection for the hot loops.

The compiled ``_speedups`` extension is used when it is importable; set
``BICAYLEY_PURE=1`` to force the pure-Python implementations.
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("BICAYLEY_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:  # extension not built
        _impl = _pure

BACKEND: str = _impl.BACKEND
refine = _impl.refine
leaf_key = _impl.leaf_key
closure = _impl.closure
count_s_arcs = _impl.count_s_arcs

__all__ = ["BACKEND", "refine", "leaf_key", "closure", "count_s_arcs"]
