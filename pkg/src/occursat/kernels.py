"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``OCCURSAT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
if os.environ.get("OCCURSAT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
else:
    _impl = _kernels_py

dpll = _impl.dpll
tau_root = _impl.tau
