"""Kernel backend selection.

The compiled extension is preferred when it imports cleanly; otherwise the
pure-Python kernels are used.  Set the environment variable ``CTRLTOPO_PURE``
to any non-empty value to force the fallback (useful for benchmarking and for
cross-checking the two implementations).
"""

import os

from . import _pure

_speedups = None
if not os.environ.get("CTRLTOPO_PURE"):
    try:
        from . import _speedups  # type: ignore[no-redef]
    except ImportError:
        _speedups = None

active = _speedups if _speedups is not None else _pure
name = "compiled" if _speedups is not None else "pure"


def backend_name() -> str:
    """Name of the kernel backend in use: ``"compiled"`` or ``"pure"``."""
    return name
