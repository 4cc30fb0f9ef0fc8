"""Selects the compiled alignment kernel when available, else pure Python.

Set PEGKIT_NO_EXT=1 to force the Python backend (used by the benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("PEGKIT_NO_EXT"):
    from . import _match_py as _impl
else:
    try:
        from . import _match_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _match_py as _impl

BACKEND = _impl.BACKEND
count_matches = _impl.count_matches
climb = _impl.climb
exhaustive = _impl.exhaustive
