"""Backend selection for the recurrence kernels.

Prefers the compiled extension when it was built; otherwise (or when the
environment variable ``RADIALEIT_PURE_PYTHON`` is set to anything non-empty
and non-zero) falls back to the NumPy implementation.  ``BACKEND`` records
which one is active.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("RADIALEIT_PURE_PYTHON", "0") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

jacobi_table = _impl.jacobi_table
legendre_table = _impl.legendre_table

__all__ = ["BACKEND", "jacobi_table", "legendre_table"]
