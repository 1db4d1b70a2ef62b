"""jellytopo: decompose, profile, and regenerate AS-level Internet topologies.

The toolkit splits an annotated AS graph into its jellyfish structure
(core clique, shells, hangers), reduces that structure to a compact
statistical profile, regenerates synthetic graphs from the profile at
full or reduced scale, and measures how faithfully a graph matches a
reference.
"""

from .decompose import (
    JellyfishDecomposition,
    assign_rings,
    decompose,
    find_core,
    layer_distance_bound_check,
)
from .generate import GenerationReport, Generator, GeneratorConfig, build_core, generate
from .graph import AsGraph, Edge, RelType, connected_components
from .kernels import BACKEND
from .metrics import MetricsReport, compare, compute_report
from .profile import (
    BridgeStats,
    HangerStats,
    JellyfishProfile,
    RingStats,
    extract_profile,
    fit_powerlaw_exponent,
    fit_rgr_coefficient,
    reference_profile,
)

__version__ = "0.1.0"

__all__ = [
    "AsGraph",
    "BACKEND",
    "BridgeStats",
    "Edge",
    "GenerationReport",
    "Generator",
    "GeneratorConfig",
    "HangerStats",
    "JellyfishDecomposition",
    "JellyfishProfile",
    "MetricsReport",
    "RelType",
    "RingStats",
    "assign_rings",
    "build_core",
    "compare",
    "compute_report",
    "connected_components",
    "decompose",
    "extract_profile",
    "find_core",
    "fit_powerlaw_exponent",
    "fit_rgr_coefficient",
    "generate",
    "layer_distance_bound_check",
    "reference_profile",
    "__version__",
]
