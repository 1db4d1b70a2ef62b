"""Jellyfish decomposition: core clique, rings, hangers, edge classes.

The core is a greedy maximal P2P clique over high-degree nodes. Ring r
then collects every node (degree-1 nodes aside) at shortest-path
distance r from the core, over all edge types treated as undirected.
Degree-1 nodes become hangers of the ring their single neighbor sits
in. Every edge lands in exactly one class: intra-ring, bridge between
two rings, hanger edge, or excluded (incident to debris nodes that
cannot be placed, e.g. components not reachable from the core).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import EmptyGraph, InvalidDecomposition
from .graph import AsGraph, RelType

log = logging.getLogger(__name__)

RING = "ring"
BRIDGE = "bridge"
HANGER = "hanger"
EXCLUDED = "excluded"


class EdgeClass(NamedTuple):
    """Classification of one edge by the rings of its endpoints."""

    kind: str  # RING | BRIDGE | HANGER | EXCLUDED
    low: int   # ring for RING, lower ring for BRIDGE, origin ring for HANGER
    high: int  # equal to low except for BRIDGE


@dataclass(frozen=True)
class JellyfishDecomposition:
    """Assignment of every node and edge to the jellyfish structure."""

    core: frozenset[int]
    ring_of: dict[int, int]          # non-hanger node -> ring index (core = 0)
    hanger_origin: dict[int, int]    # degree-1 node -> ring of its neighbor
    ring_count: int
    edge_class: dict[tuple[int, int, int], EdgeClass]  # Edge.key() -> class
    excluded: frozenset[int] = frozenset()
    warnings: tuple[str, ...] = ()

    def ring_members(self, r: int) -> list[int]:
        return sorted(v for v, rv in self.ring_of.items() if rv == r)

    def hangers_of(self, r: int) -> list[int]:
        return sorted(v for v, rv in self.hanger_origin.items() if rv == r)


def find_core(g: AsGraph) -> frozenset[int]:
    """Greedy maximal P2P clique seeded at the highest-degree node.

    Candidates are scanned once in descending total-degree order (ties
    to the lower id); a node joins when it has a P2P edge to every
    current member. Deterministic for a given graph.
    """
    if g.node_count == 0:
        raise EmptyGraph("cannot locate a core in an empty graph")
    order = sorted(range(g.node_count), key=lambda v: (-g.degree(v), v))
    p2p = g.p2p_sets()
    core = [order[0]]
    for v in order[1:]:
        for c in core:
            if v not in p2p[c]:
                break
        else:
            core.append(v)
    return frozenset(core)


def assign_rings(g: AsGraph, core: frozenset[int]) -> JellyfishDecomposition:
    """Build the full decomposition given a core clique.

    Non-hanger rings are breadth-first layers from the core over all
    edge types. Degree-1 nodes are kept out of the layering and become
    hangers. Nodes unreachable from the core (including isolated
    degree-1 pairs) are excluded with a warning, not assigned.
    """
    if not core:
        raise InvalidDecomposition("core must be nonempty")
    p2p = g.p2p_sets()
    core_sorted = sorted(core)
    for i, u in enumerate(core_sorted):
        for w in core_sorted[i + 1 :]:
            if w not in p2p[u]:
                raise InvalidDecomposition(f"core nodes {u} and {w} lack a P2P edge")

    hangers = {v for v in range(g.node_count) if g.degree(v) == 1 and v not in core}

    indptr, indices = g.undirected_csr()
    sources = np.asarray(core_sorted, dtype=np.int32)
    dist = kernels.bfs_distances(indptr, indices, sources)

    ring_of: dict[int, int] = {}
    excluded: set[int] = set()
    warnings: list[str] = []
    for v in range(g.node_count):
        if v in hangers:
            continue
        d = int(dist[v])
        if d < 0:
            excluded.add(v)
        else:
            ring_of[v] = d

    hanger_origin: dict[int, int] = {}
    isolated_pairs = 0
    for h in sorted(hangers):
        nb = g.neighbors(h)[0]
        if nb in hangers:
            excluded.add(h)
            isolated_pairs += 1
        elif nb in ring_of:
            hanger_origin[h] = ring_of[nb]
        else:
            excluded.add(h)

    if isolated_pairs:
        warnings.append(f"{isolated_pairs} degree-1 nodes form isolated pairs; excluded")
    unreachable = len(excluded) - isolated_pairs
    if unreachable > 0:
        warnings.append(f"DisconnectedFromCore: {unreachable} nodes unreachable; excluded")
    for w in warnings:
        log.warning("%s", w)

    edge_class: dict[tuple[int, int, int], EdgeClass] = {}
    for e in g.edges():
        key = e.key()
        a, b = e.a, e.b
        if a in excluded or b in excluded:
            edge_class[key] = EdgeClass(EXCLUDED, -1, -1)
        elif a in hanger_origin:
            edge_class[key] = EdgeClass(HANGER, hanger_origin[a], hanger_origin[a])
        elif b in hanger_origin:
            edge_class[key] = EdgeClass(HANGER, hanger_origin[b], hanger_origin[b])
        else:
            ra, rb = ring_of[a], ring_of[b]
            if ra == rb:
                edge_class[key] = EdgeClass(RING, ra, ra)
            else:
                lo, hi = (ra, rb) if ra < rb else (rb, ra)
                edge_class[key] = EdgeClass(BRIDGE, lo, hi)

    ring_count = max(ring_of.values(), default=0) + 1
    return JellyfishDecomposition(
        core=frozenset(core),
        ring_of=ring_of,
        hanger_origin=hanger_origin,
        ring_count=ring_count,
        edge_class=edge_class,
        excluded=frozenset(excluded),
        warnings=tuple(warnings),
    )


def decompose(g: AsGraph) -> JellyfishDecomposition:
    """Convenience wrapper: find the core, then assign rings."""
    return assign_rings(g, find_core(g))


def layer_distance_bound_check(
    g: AsGraph,
    d: JellyfishDecomposition,
    max_sources: int = 1000,
    seed: int = 1813,
    max_reported: int = 50,
) -> tuple[bool, list[tuple[int, int, int, int]]]:
    """Verify dist(u, w) <= ring(u) + ring(w) + 1 for non-hanger pairs.

    Checks all pairs when the graph has at most 2000 nodes, otherwise
    BFS from ``max_sources`` ring nodes sampled with a fixed seed.
    Returns (ok, violations) where each violation is
    (u, w, distance, bound); the list is capped at ``max_reported``.
    """
    members = sorted(d.ring_of)
    if not members:
        return True, []
    if g.node_count <= 2000 or len(members) <= max_sources:
        sources = members
    else:
        rng = np.random.default_rng(seed)
        sources = sorted(rng.choice(members, size=max_sources, replace=False).tolist())

    indptr, indices = g.undirected_csr()
    member_arr = np.asarray(members, dtype=np.int64)
    ring_arr = np.asarray([d.ring_of[v] for v in members], dtype=np.int64)

    violations: list[tuple[int, int, int, int]] = []
    for u in sources:
        dist = kernels.bfs_distances(indptr, indices, np.asarray([u], dtype=np.int32))
        dist_m = dist[member_arr].astype(np.int64)
        bound = d.ring_of[u] + ring_arr + 1
        bad = np.nonzero((dist_m >= 0) & (dist_m > bound))[0]
        for i in bad:
            if len(violations) < max_reported:
                violations.append(
                    (u, int(member_arr[i]), int(dist_m[i]), int(bound[i]))
                )
        if bad.size and len(violations) >= max_reported:
            return False, violations
    return not violations, violations
