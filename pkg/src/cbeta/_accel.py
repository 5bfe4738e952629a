"""Optional numba acceleration.

Set ``CBETA_DISABLE_NUMBA=1`` to force the pure-numpy kernels.  numba is imported
lazily so importing the package stays cheap.
"""

from __future__ import annotations

import os
from functools import lru_cache


def numba_disabled() -> bool:
    return os.environ.get("CBETA_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


@lru_cache(maxsize=1)
def _numba_module():
    try:
        import numba
    except ImportError:
        return None
    return numba


def numba_available() -> bool:
    return _numba_module() is not None


def use_numba() -> bool:
    return not numba_disabled() and numba_available()


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator."""
    nb = _numba_module()
    if nb is None:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return nb.njit(*args, **kwargs)
