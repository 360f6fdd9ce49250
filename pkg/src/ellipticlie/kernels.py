"""Kernel selection.

The compiled extension is used when it imports; set
``ELLIPTICLIE_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

import os

BACKEND = "python"

if not os.environ.get("ELLIPTICLIE_PURE_PYTHON"):
    try:
        from ._ckernels import (  # noqa: F401
            add_scaled,
            bracket,
            derive,
            mul,
            scale,
            substitute,
            triangular_reduce,
        )

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._kernels_py import (  # noqa: F401
        add_scaled,
        bracket,
        derive,
        mul,
        scale,
        substitute,
        triangular_reduce,
    )

__all__ = [
    "BACKEND",
    "add_scaled",
    "bracket",
    "derive",
    "mul",
    "scale",
    "substitute",
    "triangular_reduce",
]
