"""Selects the compiled kernels when available, else the pure-Python ones.

Set ``CDMATURBO_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("CDMATURBO_PURE_PYTHON", "") not in ("", "0"):
    from . import _pykernels as impl
else:
    try:
        from . import _ckernels as impl
    except ImportError:
        from . import _pykernels as impl

BACKEND_NAME = "cython" if impl.__name__.endswith("_ckernels") else "python"
