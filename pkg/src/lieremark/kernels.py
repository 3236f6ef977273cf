"""Kernel backend selection.

The compiled extension is preferred when importable; setting the environment
variable LIEREMARK_PURE_PYTHON=1 forces the pure-Python twin (useful for
debugging and for the backend benchmark).
"""

import os

if os.environ.get("LIEREMARK_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND_NAME

mono_mul = _impl.mono_mul
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_neg = _impl.poly_neg
poly_scale = _impl.poly_scale
poly_mul = _impl.poly_mul
poly_mul_term = _impl.poly_mul_term
poly_diff = _impl.poly_diff
poly_eval = _impl.poly_eval
bareiss_rank = _impl.bareiss_rank
