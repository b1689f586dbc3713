"""Integer kernels with a compiled fast lane and a pure-Python fallback.

The compiled lane (_speedups, Cython) is used when importable; set
BURNSIDE_PURE=1 to force the pure lane.  Both lanes implement the same
contract and are differential-tested against each other.
"""

import os

from . import _pure

if os.environ.get("BURNSIDE_PURE"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = _impl.BACKEND

perm_closure = _impl.perm_closure
mul_table_from_perms = _impl.mul_table_from_perms
subset_closure = _impl.subset_closure
conjugacy_classes = _impl.conjugacy_classes
mark_count = _impl.mark_count
census_scan = _impl.census_scan


def available_lanes():
    """Importable kernel lanes, for benchmarks and equivalence tests."""
    lanes = {"pure": _pure}
    try:
        from . import _speedups

        lanes["c"] = _speedups
    except ImportError:
        pass
    return lanes
