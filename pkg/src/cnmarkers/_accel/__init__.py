"""Kernel backend selection.

The compiled extension is built at install time when Cython and a C
compiler are available; otherwise the pure numpy fallback serves. Set
CNMARKERS_PURE_PYTHON=1 to force the fallback regardless.
"""
import os

from . import _py_kernels

PY_BACKEND = _py_kernels

if os.environ.get("CNMARKERS_PURE_PYTHON") == "1":
    _impl = _py_kernels
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _py_kernels

BACKEND = "cython" if _impl.IS_COMPILED else "python"

gc_fit = _impl.gc_fit
te_binned = _impl.te_binned
gc_matrix = _impl.gc_matrix

RIDGE_COND = _py_kernels.RIDGE_COND
RIDGE_SCALE = _py_kernels.RIDGE_SCALE
RSS_FLOOR = _py_kernels.RSS_FLOOR
