"""Selects the exact-arithmetic kernels at import.

The compiled extension is used when it was built; ``SYMCHECK_PURE_PYTHON=1``
forces the fallback.  ``BACKEND`` names the active one.
"""

import os

from . import _exact_py

try:
    from . import _exact_ext
except ImportError:  # extension not built
    _exact_ext = None

if _exact_ext is not None and os.environ.get("SYMCHECK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    rref_int = _exact_ext.rref_int
    matmul_int = _exact_ext.matmul_int
    BACKEND = "cython"
else:
    rref_int = _exact_py.rref_int
    matmul_int = _exact_py.matmul_int
    BACKEND = "python"


def backends() -> dict:
    """Every available implementation, keyed by name."""
    found = {"python": _exact_py}
    if _exact_ext is not None:
        found["cython"] = _exact_ext
    return found
