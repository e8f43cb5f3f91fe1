"""Kernel backend selection.

The compiled Cython kernels are used when available; setting the
environment variable POLYTORUS_PURE_PYTHON=1 forces the NumPy fallback
(useful for debugging and for the backend benchmark).
"""

import os

from . import fallback

if os.environ.get("POLYTORUS_PURE_PYTHON", "") not in ("", "0"):
    _impl = fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = fallback

BACKEND = _impl.BACKEND
grid_evaluate = _impl.grid_evaluate
# elementwise and reduction kernels are libm/memory bound; vectorized NumPy
# is already optimal there, so they are not backend-switched
abs_power_mean = fallback.abs_power_mean
lift_weight = fallback.lift_weight

__all__ = ["BACKEND", "grid_evaluate", "abs_power_mean", "lift_weight", "fallback"]
