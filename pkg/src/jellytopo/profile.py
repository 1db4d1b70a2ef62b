"""Statistical profile of a decomposed graph.

The profile is the generator's sole input: per-ring node fractions and
edge counts, per-bridge edge counts, hanger fractions, fitted intra-ring
power-law exponents, fitted rich-gets-richer coefficients, per-ring
degree bounds, and the provider-count histogram.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import kernels
from .decompose import BRIDGE, HANGER, RING, JellyfishDecomposition
from .errors import DegenerateInput, InvalidDecomposition
from .graph import AsGraph, RelType

PROFILE_SCHEMA_VERSION = 1

# Fixed internal seed for the simulation-matching coefficient fit.
_FIT_SEED = 0x5EED

_REFERENCE_RESOURCE = "reference_profile.json"


@dataclass
class RingStats:
    """Per-ring statistics. Bounds are observed per-node min/max edge counts."""

    ring: int
    node_fraction: float
    p2p_intra: int
    cp_intra: int
    p2p_powerlaw_exponent: float | None = None
    rgr_coefficient: float | None = None
    p2p_min: int = 0
    p2p_max: int = 0
    cp_min: int = 0
    cp_max: int = 0

    @property
    def bounds(self) -> dict[str, int]:
        return {
            "p2p_min": self.p2p_min,
            "p2p_max": self.p2p_max,
            "cp_min": self.cp_min,
            "cp_max": self.cp_max,
        }


@dataclass
class BridgeStats:
    """Edge counts between two distinct rings (low < high)."""

    low: int
    high: int
    p2p_count: int
    cp_count: int


@dataclass
class HangerStats:
    origin_ring: int
    node_fraction: float


@dataclass
class JellyfishProfile:
    total_nodes: int
    total_edges: int
    core_size: int
    rings: list[RingStats] = field(default_factory=list)
    bridges: list[BridgeStats] = field(default_factory=list)
    hangers: list[HangerStats] = field(default_factory=list)
    provider_count_histogram: dict[int, float] = field(default_factory=dict)

    @property
    def ring_count(self) -> int:
        return len(self.rings)

    def bridge(self, low: int, high: int) -> BridgeStats | None:
        for b in self.bridges:
            if (b.low, b.high) == (low, high):
                return b
        return None

    def hanger_fraction(self, origin: int) -> float:
        for h in self.hangers:
            if h.origin_ring == origin:
                return h.node_fraction
        return 0.0

    def validate(self) -> None:
        """Raise InvalidDecomposition when structural invariants are broken."""
        frac = sum(r.node_fraction for r in self.rings) + sum(
            h.node_fraction for h in self.hangers
        )
        if abs(frac - 1.0) > 0.005:
            raise InvalidDecomposition(
                f"ring + hanger node fractions sum to {frac:.4f}, expected 1 +- 0.005"
            )
        clique = self.core_size * (self.core_size - 1) // 2
        if self.rings and (self.rings[0].p2p_intra != clique or self.rings[0].cp_intra != 0):
            raise InvalidDecomposition("ring 0 must be exactly the core P2P clique")
        for r in self.rings:
            if r.p2p_min > r.p2p_max or r.cp_min > r.cp_max:
                raise InvalidDecomposition(f"ring {r.ring} bounds are inverted")
            if min(r.node_fraction, r.p2p_intra, r.cp_intra) < 0:
                raise InvalidDecomposition(f"ring {r.ring} has negative statistics")
        for b in self.bridges:
            if not (0 <= b.low < b.high < self.ring_count):
                raise InvalidDecomposition(f"bridge ({b.low},{b.high}) names a bad ring pair")
            if b.p2p_count < 0 or b.cp_count < 0:
                raise InvalidDecomposition(f"bridge ({b.low},{b.high}) has negative counts")

    # -- serialization helpers (used by fileio) ------------------------------

    def to_dict(self) -> dict:
        return {
            "schema_version": PROFILE_SCHEMA_VERSION,
            "total_nodes": self.total_nodes,
            "total_edges": self.total_edges,
            "core_size": self.core_size,
            "rings": [vars(r).copy() for r in self.rings],
            "bridges": [vars(b).copy() for b in self.bridges],
            "hangers": [vars(h).copy() for h in self.hangers],
            "provider_count_histogram": {
                str(k): v for k, v in sorted(self.provider_count_histogram.items())
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "JellyfishProfile":
        return cls(
            total_nodes=data["total_nodes"],
            total_edges=data["total_edges"],
            core_size=data["core_size"],
            rings=[RingStats(**r) for r in data["rings"]],
            bridges=[BridgeStats(**b) for b in data["bridges"]],
            hangers=[HangerStats(**h) for h in data["hangers"]],
            provider_count_histogram={
                int(k): float(v)
                for k, v in data.get("provider_count_histogram", {}).items()
            },
        )


def reference_profile() -> JellyfishProfile:
    """Bundled profile of the full-scale AS snapshot (about 19.9k nodes)."""
    text = resources.files("jellytopo.data").joinpath(_REFERENCE_RESOURCE).read_text()
    return JellyfishProfile.from_dict(json.loads(text))


def fit_powerlaw_exponent(degrees) -> float:
    """Least-squares slope magnitude of log(count) against log(degree).

    Bins with zero count never appear (only observed degrees form bins).
    Requires at least two distinct positive degree values.
    """
    arr = np.asarray(list(degrees), dtype=np.int64)
    if arr.size == 0 or arr.min() < 1:
        raise DegenerateInput("degrees must be positive")
    ks, counts = np.unique(arr, return_counts=True)
    if ks.size < 2:
        raise DegenerateInput("need at least two distinct degree values")
    slope = np.polyfit(np.log(ks), np.log(counts), 1)[0]
    return float(abs(slope))


def _ks_distance(x: np.ndarray, y: np.ndarray) -> float:
    """Two-sample Kolmogorov-Smirnov statistic."""
    xs = np.sort(x)
    ys = np.sort(y)
    grid = np.union1d(xs, ys)
    cx = np.searchsorted(xs, grid, side="right") / xs.size
    cy = np.searchsorted(ys, grid, side="right") / ys.size
    return float(np.abs(cx - cy).max())


def fit_rgr_coefficient(
    d: JellyfishDecomposition, g: AsGraph, ring: int
) -> float:
    """Estimate the rich-gets-richer pace for CP attachment in one ring.

    Grid search over alpha in {0.0, 0.1, ..., 2.0}: simulate the ring's
    total CP endpoint count as attachment events with selection weight
    (1 + degree)^alpha, then keep the alpha whose simulated degree
    distribution is closest (Kolmogorov-Smirnov) to the observed one.
    """
    members = d.ring_members(ring)
    observed = np.asarray([g.cp_degree(v) for v in members], dtype=np.int64)
    if (observed > 0).sum() < 2:
        raise DegenerateInput(f"ring {ring} has fewer than 2 nodes with CP edges")
    events = int(observed.sum())
    n = len(members)
    best_alpha = 0.0
    best_ks = np.inf
    for step in range(21):
        alpha = step / 10.0
        sim = kernels.pa_event_degrees(n, events, alpha, _FIT_SEED + step)
        ks = _ks_distance(sim, observed)
        if ks < best_ks:
            best_ks = ks
            best_alpha = alpha
    return best_alpha


def extract_profile(g: AsGraph, d: JellyfishDecomposition) -> JellyfishProfile:
    """Reduce a decomposition to the generator's parameter set.

    Counts reproduce the decomposition's tallies exactly; fractions are
    over the graph's full node count, hangers included. Fit failures on
    degenerate rings (uniform or absent degrees) leave the coefficient
    unset rather than aborting.
    """
    n = g.node_count
    if n == 0:
        raise InvalidDecomposition("cannot profile an empty graph")
    for v in d.ring_of:
        if v >= n:
            raise InvalidDecomposition("decomposition references unknown nodes")

    ring_nodes: dict[int, list[int]] = {r: [] for r in range(d.ring_count)}
    for v, r in d.ring_of.items():
        ring_nodes[r].append(v)

    ring_p2p = {r: 0 for r in range(d.ring_count)}
    ring_cp = {r: 0 for r in range(d.ring_count)}
    bridge_p2p: dict[tuple[int, int], int] = {}
    bridge_cp: dict[tuple[int, int], int] = {}
    intra_p2p_deg: dict[int, dict[int, int]] = {r: {} for r in range(d.ring_count)}

    for e in g.edges():
        cls = d.edge_class[e.key()]
        if cls.kind == RING:
            if e.rel is RelType.P2P:
                ring_p2p[cls.low] += 1
                row = intra_p2p_deg[cls.low]
                row[e.a] = row.get(e.a, 0) + 1
                row[e.b] = row.get(e.b, 0) + 1
            else:
                ring_cp[cls.low] += 1
        elif cls.kind == BRIDGE:
            key = (cls.low, cls.high)
            if e.rel is RelType.P2P:
                bridge_p2p[key] = bridge_p2p.get(key, 0) + 1
            else:
                bridge_cp[key] = bridge_cp.get(key, 0) + 1
        # HANGER and EXCLUDED edges are accounted by node tallies below.

    rings: list[RingStats] = []
    for r in range(d.ring_count):
        members = ring_nodes[r]
        stats = RingStats(
            ring=r,
            node_fraction=len(members) / n,
            p2p_intra=ring_p2p[r],
            cp_intra=ring_cp[r],
        )
        if members:
            p2p_degs = [g.p2p_degree(v) for v in members]
            cp_degs = [g.cp_degree(v) for v in members]
            stats.p2p_min, stats.p2p_max = min(p2p_degs), max(p2p_degs)
            stats.cp_min, stats.cp_max = min(cp_degs), max(cp_degs)
        intra_degs = [c for c in intra_p2p_deg[r].values() if c > 0]
        try:
            stats.p2p_powerlaw_exponent = fit_powerlaw_exponent(intra_degs)
        except DegenerateInput:
            stats.p2p_powerlaw_exponent = None
        try:
            stats.rgr_coefficient = fit_rgr_coefficient(d, g, r)
        except DegenerateInput:
            stats.rgr_coefficient = None
        rings.append(stats)

    bridges = [
        BridgeStats(low, high, bridge_p2p.get((low, high), 0), bridge_cp.get((low, high), 0))
        for (low, high) in sorted(set(bridge_p2p) | set(bridge_cp))
    ]

    hanger_tally: dict[int, int] = {}
    for origin in d.hanger_origin.values():
        hanger_tally[origin] = hanger_tally.get(origin, 0) + 1
    hangers = [
        HangerStats(origin, count / n) for origin, count in sorted(hanger_tally.items())
    ]

    prov_tally: dict[int, int] = {}
    for v in range(n):
        c = g.provider_count(v)
        prov_tally[c] = prov_tally.get(c, 0) + 1
    histogram = {c: cnt / n for c, cnt in sorted(prov_tally.items())}

    return JellyfishProfile(
        total_nodes=n,
        total_edges=g.edge_count,
        core_size=len(d.core),
        rings=rings,
        bridges=bridges,
        hangers=hangers,
        provider_count_histogram=histogram,
    )
