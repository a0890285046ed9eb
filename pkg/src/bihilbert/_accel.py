"""Numba switch.

Set ``BIHILBERT_DISABLE_NUMBA=1`` to run every kernel through its pure-numpy
path. Numba missing from the environment has the same effect.
"""

import os

_flag = os.environ.get("BIHILBERT_DISABLE_NUMBA", "").strip().lower()
NUMBA_REQUESTED = _flag in ("", "0", "false", "no")

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def wrapper(f):
            return f

        return wrapper


USE_NUMBA = NUMBA_REQUESTED and NUMBA_AVAILABLE

__all__ = ["njit", "USE_NUMBA", "NUMBA_AVAILABLE", "NUMBA_REQUESTED"]
