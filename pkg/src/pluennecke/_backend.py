"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels take over. ``PLUENNECKE_PURE=1`` forces the fallback.
"""

import os

from . import _pure

if os.environ.get("PLUENNECKE_PURE"):
    _impl = _pure
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        _impl = _pure
        BACKEND = "python"

min_ratio_subset = _impl.min_ratio_subset
max_matching = _impl.max_matching


def compiled_kernels():
    """The compiled module, or None when it is not built."""
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _kernels
