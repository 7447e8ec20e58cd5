"""Kernel backend selection.

The neighbor-search kernels exist twice: a numba ``@njit`` version and a
pure-numpy version. Both produce bit-identical neighbor lists; the numba
path is used by default and the numpy path is selected by setting the
environment variable ``ADHOCSIM_DISABLE_NUMBA=1`` (or when numba is not
importable). See ``benchmarks/compare_backends.py`` for a timing comparison.
"""

import os
import warnings

_flag = os.environ.get("ADHOCSIM_DISABLE_NUMBA", "").strip().lower()
NUMBA_DISABLED = _flag in ("1", "true", "yes", "on")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled via ADHOCSIM_DISABLE_NUMBA")
    import numba  # noqa: F401

    NUMBA_ENABLED = True
except ImportError:
    if not NUMBA_DISABLED:
        warnings.warn("numba not importable; using pure-numpy kernels", stacklevel=2)
    NUMBA_ENABLED = False


def active_backend() -> str:
    """Name of the kernel backend in use: 'numba' or 'numpy'."""
    return "numba" if NUMBA_ENABLED else "numpy"
