"""Backend selection for the numeric kernels.

Set ``FLOWRANK_NUMBA=0`` to force the pure-numpy kernels even when numba is
importable. Any other value (or unset) uses numba when available.
"""

from __future__ import annotations

import os

_DISABLED_VALUES = {"0", "false", "no", "off"}

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    numba = None
    HAVE_NUMBA = False


def numba_requested() -> bool:
    return os.environ.get("FLOWRANK_NUMBA", "1").strip().lower() not in _DISABLED_VALUES


USE_NUMBA = HAVE_NUMBA and numba_requested()
BACKEND = "numba" if USE_NUMBA else "numpy"


def njit(func):
    """Compile ``func`` with numba if it is installed, else return it unchanged."""
    if not HAVE_NUMBA:
        return func
    return numba.njit(cache=True)(func)
