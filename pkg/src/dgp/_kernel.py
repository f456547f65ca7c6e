"""Select the compiled search kernel when available, else the Python one.

Set ``DGP_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _search

try:
    if os.environ.get("DGP_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python requested")
    from . import _search_ext
except ImportError:
    _search_ext = None

BACKEND = "cython" if _search_ext is not None else "python"
COMPILED_MAX_N = _search_ext.MAX_N if _search_ext is not None else 0


def best_partition(n, masks, scale, ucap, gcap, prune_connected, prune_bound,
                   init_value, init_labels, backend=None):
    """Dispatch to a kernel; ``backend`` may force ``"python"`` or ``"cython"``."""
    backend = backend or BACKEND
    if backend == "cython":
        if _search_ext is None:
            raise RuntimeError("compiled kernel not built")
        if n <= COMPILED_MAX_N:
            return _search_ext.best_partition(n, masks, scale, ucap, gcap, prune_connected,
                                              prune_bound, init_value, init_labels)
    return _search.best_partition(n, masks, scale, ucap, gcap, prune_connected,
                                  prune_bound, init_value, init_labels)


def utility_maxima(n, masks, cap_num, cap_den, backend=None):
    backend = backend or BACKEND
    if backend == "cython":
        if _search_ext is None:
            raise RuntimeError("compiled kernel not built")
        if n <= COMPILED_MAX_N:
            return _search_ext.utility_maxima(n, masks, cap_num, cap_den)
    return _search.utility_maxima(n, masks, cap_num, cap_den)
