"""Select the eigensolver kernel at import time.

The compiled Cython kernel is used when it has been built; otherwise, or
when ``PSLAB_PURE_PYTHON`` is set to a non-empty value, the numpy fallback.
"""
import os

if os.environ.get("PSLAB_PURE_PYTHON"):
    from pslab._jacobi_py import jacobi_eigh
    BACKEND = "python"
else:
    try:
        from pslab._jacobi_ext import jacobi_eigh
        BACKEND = "cython"
    except ImportError:
        from pslab._jacobi_py import jacobi_eigh
        BACKEND = "python"

__all__ = ["jacobi_eigh", "BACKEND"]
