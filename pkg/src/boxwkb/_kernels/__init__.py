"""Hot numerical kernels.

The Cython build is used when importable; otherwise the pure-Python twin is
loaded. Set ``BOXWKB_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("BOXWKB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from ._ckernels import airy_local, bisect_eigenvalue, sturm_count

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import airy_local, bisect_eigenvalue, sturm_count

from . import _pykernels as python_kernels

__all__ = ["BACKEND", "airy_local", "bisect_eigenvalue", "sturm_count", "python_kernels"]
