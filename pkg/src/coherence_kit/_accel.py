"""Numba acceleration shim.

The hot kernels in :mod:`coherence_kit.kernels` are compiled with ``@njit``
when numba is importable.  Setting the environment variable
``COHERENCE_KIT_NO_NUMBA=1`` (before import) forces the pure-numpy fallback
path instead; the same happens automatically when numba is missing.
"""

import os


def _numba_enabled() -> bool:
    if os.environ.get("COHERENCE_KIT_NO_NUMBA", "0") not in ("", "0"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


NUMBA_ENABLED = _numba_enabled()

if NUMBA_ENABLED:
    from numba import njit
else:
    def njit(*args, **kwargs):
        """Identity decorator standing in for numba.njit."""
        if args and callable(args[0]) and not kwargs:
            return args[0]

        def wrap(fn):
            return fn

        return wrap
