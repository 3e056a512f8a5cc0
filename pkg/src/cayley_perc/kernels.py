"""Kernel selection: the compiled extension when importable, else the numpy fallback.

Set ``CAYLEY_PERC_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _fallback

try:
    if os.environ.get("CAYLEY_PERC_PURE"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _impl
    BACKEND = "compiled"
except ImportError:
    _impl = _fallback
    BACKEND = "python"

mix64 = _fallback.mix64
selection_mask = _impl.selection_mask
neighbor_ranks = _impl.neighbor_ranks
percolate = _impl.percolate
bfs_distances = _impl.bfs_distances
unrank_array = _fallback.unrank_array
rank_array = _fallback.rank_array


def available_backends() -> dict:
    out = {"python": _fallback}
    try:
        from . import _kernels
        out["compiled"] = _kernels
    except ImportError:
        pass
    return out
