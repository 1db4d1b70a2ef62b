"""Typed AS-relationship graph.

Nodes are dense integer ids 0..N-1. Every edge carries exactly one
relationship: P2P (undirected peering) or CP (directed customer ->
provider). A pair of nodes can hold at most one edge, regardless of
type. The graph is built once through ``add_edge`` and is then treated
as immutable; query methods cache derived CSR arrays on first use.
"""

from __future__ import annotations

import enum
from typing import Iterator, NamedTuple

import numpy as np

from . import kernels
from .errors import DuplicateEdge, NodeOutOfRange, SelfLoop


class RelType(enum.Enum):
    """Edge relationship. Values double as the on-disk record codes."""

    P2P = 0
    CP = -1


class Edge(NamedTuple):
    """One annotated edge. For CP edges ``a`` is the customer, ``b`` the provider."""

    a: int
    b: int
    rel: RelType

    def key(self) -> tuple[int, int, int]:
        """Canonical hashable form: P2P as (min, max, 0), CP as (provider, customer, -1)."""
        if self.rel is RelType.P2P:
            lo, hi = (self.a, self.b) if self.a < self.b else (self.b, self.a)
            return (lo, hi, 0)
        return (self.b, self.a, -1)


class AsGraph:
    """Adjacency-list graph with per-type, per-role neighbor partitions."""

    __slots__ = ("_n", "_p2p", "_prov", "_cust", "_pair_rel", "_edges", "_cache")

    def __init__(self, node_count: int):
        if node_count < 0:
            raise ValueError("node_count must be >= 0")
        self._n = node_count
        self._p2p: list[list[int]] = [[] for _ in range(node_count)]
        self._prov: list[list[int]] = [[] for _ in range(node_count)]
        self._cust: list[list[int]] = [[] for _ in range(node_count)]
        self._pair_rel: dict[tuple[int, int], RelType] = {}
        self._edges: list[Edge] = []
        self._cache: dict[str, object] = {}

    # -- construction ------------------------------------------------------

    def add_nodes(self, count: int) -> int:
        """Append ``count`` isolated nodes, returning the first new id."""
        first = self._n
        self._n += count
        for _ in range(count):
            self._p2p.append([])
            self._prov.append([])
            self._cust.append([])
        self._cache.clear()
        return first

    def add_edge(self, edge: Edge) -> None:
        a, b = edge.a, edge.b
        self._check_node(a)
        self._check_node(b)
        if a == b:
            raise SelfLoop(f"self-loop on node {a}")
        pair = (a, b) if a < b else (b, a)
        if pair in self._pair_rel:
            raise DuplicateEdge(f"pair {pair} already has a relationship")
        self._pair_rel[pair] = edge.rel
        if edge.rel is RelType.P2P:
            self._p2p[a].append(b)
            self._p2p[b].append(a)
        else:
            self._prov[a].append(b)  # a buys transit from b
            self._cust[b].append(a)
        self._edges.append(edge)
        self._cache.clear()

    def add(self, a: int, b: int, rel: RelType) -> None:
        self.add_edge(Edge(a, b, rel))

    # -- basic queries -------------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def degree(self, v: int) -> int:
        self._check_node(v)
        return len(self._p2p[v]) + len(self._prov[v]) + len(self._cust[v])

    def p2p_degree(self, v: int) -> int:
        self._check_node(v)
        return len(self._p2p[v])

    def cp_degree(self, v: int) -> int:
        """Incident CP edges in either role."""
        self._check_node(v)
        return len(self._prov[v]) + len(self._cust[v])

    def provider_count(self, v: int) -> int:
        self._check_node(v)
        return len(self._prov[v])

    def customer_count(self, v: int) -> int:
        self._check_node(v)
        return len(self._cust[v])

    def p2p_neighbors(self, v: int) -> list[int]:
        self._check_node(v)
        return self._p2p[v]

    def providers(self, v: int) -> list[int]:
        self._check_node(v)
        return self._prov[v]

    def customers(self, v: int) -> list[int]:
        self._check_node(v)
        return self._cust[v]

    def neighbors(self, v: int) -> list[int]:
        """All neighbors regardless of type or role."""
        self._check_node(v)
        return self._p2p[v] + self._prov[v] + self._cust[v]

    def rel_between(self, a: int, b: int) -> RelType | None:
        pair = (a, b) if a < b else (b, a)
        return self._pair_rel.get(pair)

    def has_pair(self, a: int, b: int) -> bool:
        pair = (a, b) if a < b else (b, a)
        return pair in self._pair_rel

    def edges(self) -> Iterator[Edge]:
        return iter(self._edges)

    def canonical_edges(self) -> list[tuple[int, int, int]]:
        """Edge list in canonical record form, sorted. Stable across runs."""
        return sorted(e.key() for e in self._edges)

    # -- derived structures ---------------------------------------------------

    def p2p_sets(self) -> list[set[int]]:
        out = self._cache.get("p2p_sets")
        if out is None:
            out = [set(nb) for nb in self._p2p]
            self._cache["p2p_sets"] = out
        return out

    def undirected_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency over all edges, both directions, insertion order."""
        out = self._cache.get("csr")
        if out is None:
            deg = np.zeros(self._n + 1, dtype=np.int64)
            for e in self._edges:
                deg[e.a + 1] += 1
                deg[e.b + 1] += 1
            indptr = np.cumsum(deg)
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            fill = indptr[:-1].copy()
            for e in self._edges:
                indices[fill[e.a]] = e.b
                fill[e.a] += 1
                indices[fill[e.b]] = e.a
                fill[e.b] += 1
            out = (indptr, indices)
            self._cache["csr"] = out
        return out

    def sorted_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Like ``undirected_csr`` but with each neighbor row sorted ascending."""
        out = self._cache.get("csr_sorted")
        if out is None:
            indptr, indices = self.undirected_csr()
            indices = indices.copy()
            for v in range(self._n):
                lo, hi = indptr[v], indptr[v + 1]
                indices[lo:hi] = np.sort(indices[lo:hi])
            out = (indptr, indices)
            self._cache["csr_sorted"] = out
        return out

    def _check_node(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise NodeOutOfRange(f"node {v} not in 0..{self._n - 1}")

    def __repr__(self) -> str:
        return f"AsGraph(nodes={self._n}, edges={len(self._edges)})"


def connected_components(g: AsGraph) -> list[list[int]]:
    """Partition of the node set under undirected reachability over all edges.

    Components are each sorted ascending and listed by their smallest member.
    """
    if g.node_count == 0:
        return []
    indptr, indices = g.undirected_csr()
    labels = kernels.component_labels(indptr, indices)
    buckets: dict[int, list[int]] = {}
    for v, lbl in enumerate(labels):
        buckets.setdefault(int(lbl), []).append(v)
    return sorted(buckets.values(), key=lambda block: block[0])
