"""Hot-kernel backend selection.

The compiled Cython kernel is preferred; the numpy implementation is the
fallback.  Set ``RABISPEC_PURE_PYTHON=1`` to force the fallback (used by
the benchmark and the backend-equivalence tests).
"""

import os

from . import _overlap_py

if os.environ.get("RABISPEC_PURE_PYTHON") == "1":
    _impl = _overlap_py
else:
    try:
        from . import _overlap_cy as _impl
    except ImportError:
        _impl = _overlap_py

fill_table = _impl.fill_table
BACKEND = _impl.BACKEND


def backend_name() -> str:
    """Name of the active kernel backend ('cython' or 'python')."""
    return BACKEND
