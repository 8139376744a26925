"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``SPECTRAL_TURAN_PURE_PYTHON`` is set to a non-empty
value other than ``0``, the numpy fallback is used.
"""

import os

from . import _kernels_py

_force_python = os.environ.get("SPECTRAL_TURAN_PURE_PYTHON", "") not in ("", "0")

if _force_python:
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND
enumerate_injective = _impl.enumerate_injective
poly_eval_grad = _impl.poly_eval_grad
poly_hessian = _impl.poly_hessian
edge_key = _kernels_py.edge_key

__all__ = [
    "BACKEND",
    "edge_key",
    "enumerate_injective",
    "poly_eval_grad",
    "poly_hessian",
]
