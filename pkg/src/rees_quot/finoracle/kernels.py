"""Picks the compiled kernels when available.

Set ``REES_QUOT_PURE=1`` to force the numpy fallback.
"""

import os

if os.environ.get("REES_QUOT_PURE") == "1":
    from ._pykernels import *  # noqa: F401,F403

    BACKEND = "python"
else:
    try:
        from ._kernels import *  # noqa: F401,F403

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import *  # noqa: F401,F403

        BACKEND = "python"

__all__ = [
    "BACKEND",
    "assoc_violation",
    "comm_violation",
    "distrib_violation",
    "prime_violation",
    "ideal_violation",
    "zero_divisor_mask",
    "hom_search",
]
