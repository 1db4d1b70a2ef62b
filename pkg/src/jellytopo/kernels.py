"""Kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
fallback. Set ``JELLYTOPO_PURE_PYTHON=1`` before import to force the
fallback (used by the benchmark and the equivalence tests).
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("JELLYTOPO_PURE_PYTHON") == "1":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

bfs_distances = _impl.bfs_distances
distance_histogram = _impl.distance_histogram
component_labels = _impl.component_labels
triangle_counts = _impl.triangle_counts
pa_event_degrees = _impl.pa_event_degrees


def available_backends() -> dict[str, object]:
    """Importable backends by name, for benchmarks and tests."""
    out: dict[str, object] = {"python": _kernels_py}
    try:
        from . import _speedups

        out["compiled"] = _speedups
    except ImportError:
        pass
    return out
