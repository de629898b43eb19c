"""Numba switch.

Hot kernels are written once as plain Python over numpy arrays and compiled
with numba unless ``DBFLAB_JIT=0`` is set in the environment, in which case
the vectorized numpy fallbacks in :mod:`dbflab.kernels` are used instead.
"""
import os

_FLAG = os.environ.get("DBFLAB_JIT", "1").strip().lower()
USE_NUMBA = _FLAG not in ("0", "false", "no", "off")

if USE_NUMBA:
    try:
        import numba
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

if USE_NUMBA:
    njit = numba.njit(cache=True, nogil=True)
else:
    def njit(func):
        return func
