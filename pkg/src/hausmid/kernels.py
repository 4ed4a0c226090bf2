"""Hot distance and parity kernels.

The compiled extension is used when it was built; otherwise the numpy
implementation is used.  Set ``HAUSMID_PURE=1`` to force the numpy path.
"""
from __future__ import annotations

import os

from . import _pykernels

NCOL = 10
PCOL = 9
POINT, SEGMENT, ARC = 0, 1, 2

_impl = _pykernels
USING_COMPILED = False
if os.environ.get("HAUSMID_PURE", "") != "1":
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        USING_COMPILED = True
    except ImportError:
        pass

min_dist = _impl.min_dist
min_dist_many = _impl.min_dist_many
inside = _impl.inside
inside_many = _impl.inside_many
segment_ub = _impl.segment_ub
arc_ub = _impl.arc_ub
cell_bounds = _impl.cell_bounds
feature_dists = _impl.feature_dists

__all__ = [
    "NCOL", "PCOL", "POINT", "SEGMENT", "ARC", "USING_COMPILED",
    "min_dist", "min_dist_many", "inside", "inside_many",
    "segment_ub", "arc_ub", "cell_bounds", "feature_dists", "backend",
]


def backend(compiled: bool):
    """Return the kernel module for the requested backend (for comparisons)."""
    if compiled:
        from . import _ckernels

        return _ckernels
    return _pykernels
