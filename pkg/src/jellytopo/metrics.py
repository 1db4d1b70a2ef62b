"""Structural metrics and graph-to-graph comparison.

All metrics treat the graph as undirected; edge direction only encodes
the relationship type. Distance-based metrics are exact up to 2000
nodes and switch to fixed-seed sampled BFS above that, with the
sampling recorded in the report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import EmptyGraph, NoEdges
from .graph import AsGraph

EXACT_NODE_LIMIT = 2000
SAMPLE_SOURCES = 1000
_SAMPLE_SEED = 4117
REPORT_SCHEMA_VERSION = 1


@dataclass
class MetricsReport:
    node_count: int
    edge_count: int
    avg_degree: float
    max_degree: int
    min_degree: int
    degree_distribution: list[tuple[int, float]]
    degree_ccdf: list[tuple[int, float]]
    diameter: int
    effective_diameter: float
    clustering_coefficient: float
    max_local_clustering: float
    mutual_information_ratio: float
    distances_sampled: bool = False
    sample_sources: int = 0

    def to_dict(self) -> dict:
        out = {"schema_version": REPORT_SCHEMA_VERSION}
        out.update(
            {
                k: v
                for k, v in vars(self).items()
                if k not in ("degree_distribution", "degree_ccdf")
            }
        )
        out["degree_distribution"] = [[int(k), float(p)] for k, p in self.degree_distribution]
        out["degree_ccdf"] = [[int(k), float(p)] for k, p in self.degree_ccdf]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        kwargs = {k: v for k, v in data.items() if k != "schema_version"}
        kwargs["degree_distribution"] = [
            (int(k), float(p)) for k, p in kwargs.get("degree_distribution", [])
        ]
        kwargs["degree_ccdf"] = [(int(k), float(p)) for k, p in kwargs.get("degree_ccdf", [])]
        return cls(**kwargs)

    def render(self) -> str:
        flag = " (sampled)" if self.distances_sampled else ""
        lines = [
            f"nodes                    {self.node_count}",
            f"edges                    {self.edge_count}",
            f"average degree           {self.avg_degree:.4g}",
            f"max degree               {self.max_degree}",
            f"min degree               {self.min_degree}",
            f"diameter{flag:<17}{self.diameter}",
            f"effective diameter{flag:<7}{self.effective_diameter:.3f}",
            f"clustering coefficient   {self.clustering_coefficient:.4f}",
            f"max local clustering     {self.max_local_clustering:.4g}",
            f"mutual information ratio {self.mutual_information_ratio:.4f}",
        ]
        return "\n".join(lines)


def _degrees(g: AsGraph) -> np.ndarray:
    return np.asarray([g.degree(v) for v in range(g.node_count)], dtype=np.int64)


def degree_distribution(g: AsGraph) -> list[tuple[int, float]]:
    """P(k) = n_k / |V| for every degree k that occurs."""
    if g.node_count == 0:
        raise EmptyGraph("degree distribution of an empty graph")
    ks, counts = np.unique(_degrees(g), return_counts=True)
    n = g.node_count
    return [(int(k), int(c) / n) for k, c in zip(ks, counts)]


def degree_ccdf(g: AsGraph) -> list[tuple[int, float]]:
    """P(deg > k) at every occurring degree k; non-increasing, ends at 0."""
    dist = degree_distribution(g)
    out = []
    tail = 1.0
    for k, p in dist:
        tail -= p
        out.append((k, max(tail, 0.0)))
    return out


def _distance_data(g: AsGraph) -> tuple[np.ndarray, int, bool, int]:
    """(histogram over pair distances, connected ordered pairs, sampled?, sources)."""
    indptr, indices = g.undirected_csr()
    n = g.node_count
    if n <= EXACT_NODE_LIMIT:
        sources = np.arange(n, dtype=np.int32)
        sampled = False
    else:
        rng = np.random.default_rng(_SAMPLE_SEED)
        sources = np.sort(rng.choice(n, size=SAMPLE_SOURCES, replace=False)).astype(np.int32)
        sampled = True
    hist, pairs = kernels.distance_histogram(indptr, indices, sources)
    return hist, pairs, sampled, len(sources)


def _effective_from_hist(hist: np.ndarray, pairs: int) -> tuple[float, int]:
    """(effective diameter, diameter) from a pair-distance histogram.

    Effective diameter: the 90% point of the cumulative distance
    distribution, linearly interpolated between the bracketing hop
    counts and never below 1 (any pair is at least one hop apart).
    """
    if pairs == 0:
        return 0.0, 0
    cum = np.cumsum(hist) / pairs
    diameter = int(len(hist) - 1)
    if cum[1] >= 0.9:
        return 1.0, diameter
    d_lo = int(np.nonzero(cum < 0.9)[0].max())
    f_lo = float(cum[d_lo])
    f_hi = float(cum[d_lo + 1])
    eff = d_lo + (0.9 - f_lo) / (f_hi - f_lo)
    return float(eff), diameter


def effective_diameter(g: AsGraph) -> float:
    """Distance within which 90% of connected ordered pairs reach each other."""
    if g.node_count == 0:
        raise EmptyGraph("effective diameter of an empty graph")
    hist, pairs, _, _ = _distance_data(g)
    return _effective_from_hist(hist, pairs)[0]


def diameter(g: AsGraph) -> int:
    """Longest shortest path over connected pairs (sampled above the exact limit)."""
    if g.node_count == 0:
        raise EmptyGraph("diameter of an empty graph")
    hist, pairs, _, _ = _distance_data(g)
    return _effective_from_hist(hist, pairs)[1]


def clustering(g: AsGraph) -> tuple[float, float]:
    """(average local clustering over all nodes, maximum local clustering).

    Local clustering of v: triangles through v divided by deg(v) choose 2;
    nodes of degree < 2 contribute 0.
    """
    if g.node_count == 0:
        raise EmptyGraph("clustering of an empty graph")
    indptr, indices = g.sorted_csr()
    tri = kernels.triangle_counts(indptr, indices)
    deg = np.diff(indptr)
    with np.errstate(divide="ignore", invalid="ignore"):
        local = np.where(deg >= 2, tri / (deg * (deg - 1) / 2.0), 0.0)
    return float(local.mean()), float(local.max(initial=0.0))


def mutual_information_ratio(g: AsGraph) -> float:
    """Degree-correlation score over edges, in [0, 1].

    Endpoint degrees are bucketed into base-2 logarithmic bins; the
    joint distribution of endpoint-bin pairs over both orientations of
    every edge gives MIR = I(X;Y) / H(X). Degenerate single-bin graphs
    score 1 (the joint is trivially fully determined).
    """
    if g.edge_count == 0:
        raise NoEdges("mutual information ratio needs at least one edge")
    deg = _degrees(g)
    bins = np.zeros(g.node_count, dtype=np.int64)
    pos = deg > 0
    bins[pos] = np.floor(np.log2(deg[pos])).astype(np.int64)
    joint: dict[tuple[int, int], int] = {}
    for e in g.edges():
        ba, bb = int(bins[e.a]), int(bins[e.b])
        joint[(ba, bb)] = joint.get((ba, bb), 0) + 1
        joint[(bb, ba)] = joint.get((bb, ba), 0) + 1
    total = 2 * g.edge_count
    px: dict[int, float] = {}
    for (ba, _), c in joint.items():
        px[ba] = px.get(ba, 0.0) + c / total
    h_x = -sum(p * math.log2(p) for p in px.values() if p > 0)
    if h_x == 0.0:
        return 1.0
    mi = 0.0
    for (ba, bb), c in joint.items():
        pxy = c / total
        mi += pxy * math.log2(pxy / (px[ba] * px[bb]))
    return max(0.0, min(1.0, mi / h_x))


def compute_report(g: AsGraph) -> MetricsReport:
    """Full metric suite for one graph."""
    if g.node_count == 0:
        raise EmptyGraph("metrics of an empty graph")
    deg = _degrees(g)
    hist, pairs, sampled, n_sources = _distance_data(g)
    eff, diam = _effective_from_hist(hist, pairs)
    avg_c, max_c = clustering(g)
    mir = mutual_information_ratio(g) if g.edge_count else 0.0
    return MetricsReport(
        node_count=g.node_count,
        edge_count=g.edge_count,
        avg_degree=2 * g.edge_count / g.node_count,
        max_degree=int(deg.max()),
        min_degree=int(deg.min()),
        degree_distribution=degree_distribution(g),
        degree_ccdf=degree_ccdf(g),
        diameter=diam,
        effective_diameter=eff,
        clustering_coefficient=avg_c,
        max_local_clustering=max_c,
        mutual_information_ratio=mir,
        distances_sampled=sampled,
        sample_sources=n_sources,
    )


# -- comparison ---------------------------------------------------------------


@dataclass
class ToleranceRule:
    """One acceptance rule: kind is 'rel', 'abs', 'factor', or 'exact'."""

    kind: str
    value: float = 0.0

    def check(self, a: float, b: float) -> bool:
        if self.kind == "rel":
            if b == 0:
                return a == 0
            return abs(a - b) / abs(b) <= self.value
        if self.kind == "abs":
            return abs(a - b) <= self.value
        if self.kind == "factor":
            if a == 0 or b == 0:
                return a == b
            ratio = a / b if a > b else b / a
            return ratio <= self.value
        if self.kind == "exact":
            return a == b
        raise ValueError(f"unknown tolerance kind {self.kind!r}")


DEFAULT_TOLERANCES: dict[str, ToleranceRule] = {
    "node_count": ToleranceRule("rel", 0.03),
    "edge_count": ToleranceRule("rel", 0.03),
    "avg_degree": ToleranceRule("rel", 0.10),
    "max_degree": ToleranceRule("factor", 1.5),
    "min_degree": ToleranceRule("abs", 1.0),
    "effective_diameter": ToleranceRule("abs", 0.5),
    "clustering_coefficient": ToleranceRule("rel", 0.5),
    "max_local_clustering": ToleranceRule("abs", 1e-9),
    "mutual_information_ratio": ToleranceRule("abs", 0.05),
}


@dataclass
class ComparisonRow:
    metric: str
    value_a: float
    value_b: float
    abs_delta: float
    rel_delta: float | None
    passed: bool
    rule: str


@dataclass
class Comparison:
    rows: list[ComparisonRow] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def render(self) -> str:
        header = f"{'metric':<26}{'A':>12}{'B':>12}{'delta':>12}{'rel':>9}  {'rule':<14}result"
        lines = [header, "-" * len(header)]
        for r in self.rows:
            rel = f"{r.rel_delta:.2%}" if r.rel_delta is not None else "-"
            lines.append(
                f"{r.metric:<26}{r.value_a:>12.4g}{r.value_b:>12.4g}"
                f"{r.abs_delta:>12.4g}{rel:>9}  {r.rule:<14}"
                + ("pass" if r.passed else "FAIL")
            )
        lines.append("overall: " + ("pass" if self.all_passed else "FAIL"))
        return "\n".join(lines)


def compare(
    a: MetricsReport,
    b: MetricsReport,
    tolerances: dict[str, ToleranceRule] | None = None,
) -> Comparison:
    """Side-by-side metric comparison of report ``a`` against reference ``b``."""
    tol = dict(DEFAULT_TOLERANCES)
    if tolerances:
        tol.update(tolerances)
    out = Comparison()
    for metric, rule in tol.items():
        va = float(getattr(a, metric))
        vb = float(getattr(b, metric))
        rel = abs(va - vb) / abs(vb) if vb else None
        out.rows.append(
            ComparisonRow(
                metric=metric,
                value_a=va,
                value_b=vb,
                abs_delta=abs(va - vb),
                rel_delta=rel,
                passed=rule.check(va, vb),
                rule=f"{rule.kind}:{rule.value:g}",
            )
        )
    return out


def plot_series(g: AsGraph, metric: str) -> list[tuple[float, float]]:
    """Two-column series for external plotting tools."""
    if metric == "degree-dist":
        return [(float(k), p) for k, p in degree_distribution(g)]
    if metric == "degree-ccdf":
        return [(float(k), p) for k, p in degree_ccdf(g)]
    raise ValueError(f"unknown plot metric {metric!r}")


def write_plot_data(path: str, series: list[tuple[float, float]], metric: str, name: str) -> None:
    """Whitespace-separated points with a '#' header naming metric and graph."""
    with open(path, "w") as fh:
        fh.write(f"# {metric} {name}\n")
        for x, y in series:
            fh.write(f"{x:g} {y:.10g}\n")
