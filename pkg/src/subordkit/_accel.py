"""Backend selection for the hot kernels.

Set ``SUBORDKIT_DISABLE_NUMBA=1`` to force the pure-numpy path, e.g. for
debugging or on platforms without a working LLVM.  ``SUBORDKIT_THREADS``
caps the worker count used by parallel sweeps.
"""
import os

_FALSY = ("", "0", "false", "no", "off")

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

USE_NUMBA = numba is not None and os.environ.get("SUBORDKIT_DISABLE_NUMBA", "").lower() in _FALSY


def njit(func):
    """``numba.njit(cache=True)`` when numba is importable, identity otherwise."""
    if numba is None:
        return func
    return numba.njit(cache=True)(func)


def thread_cap() -> int:
    raw = os.environ.get("SUBORDKIT_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)
