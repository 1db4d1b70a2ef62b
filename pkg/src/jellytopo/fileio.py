"""Persistence: AS-relationship graph files, profile and report JSON.

Graph files follow the pipe-separated AS-relationship convention so
published datasets load directly:

    provider|customer|-1
    peer|peer|0

Lines starting with '#' are comments. Extra pipe-separated fields after
the third are ignored (some published files carry a source column).
"""

from __future__ import annotations

import json
import logging

from .errors import ConflictingRelationship, ParseError, SchemaVersionMismatch
from .graph import AsGraph, Edge, RelType
from .metrics import REPORT_SCHEMA_VERSION, MetricsReport
from .profile import PROFILE_SCHEMA_VERSION, JellyfishProfile

log = logging.getLogger(__name__)


def load_graph(path: str) -> tuple[AsGraph, list[int]]:
    """Read an AS-relationship file.

    Returns the graph plus the AS-number side table: node id i held AS
    number table[i]. Exact duplicate records are collapsed with a
    warning; the same pair under two different relationships (or a CP
    relationship in both directions) is an error.
    """
    seen: dict[tuple[int, int], tuple[int, int, int]] = {}
    duplicates = 0
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("|")
            if len(parts) < 3:
                raise ParseError(line_no, f"expected a|b|code, got {line!r}")
            try:
                as_a, as_b, code = int(parts[0]), int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(line_no, f"non-integer field in {line!r}") from None
            if code not in (0, -1):
                raise ParseError(line_no, f"unknown relationship code {code}")
            if as_a == as_b:
                raise ParseError(line_no, f"self-loop on AS {as_a}")
            pair = (min(as_a, as_b), max(as_a, as_b))
            rec = (pair[0], pair[1], 0) if code == 0 else (as_a, as_b, -1)
            prior = seen.get(pair)
            if prior is not None:
                if prior == rec:
                    duplicates += 1
                    continue
                raise ConflictingRelationship(
                    f"AS pair {pair} carries conflicting relationships"
                )
            seen[pair] = rec
    if duplicates:
        log.warning("collapsed %d duplicate records", duplicates)
    as_numbers = sorted({a for pair in seen for a in pair})
    index = {asn: i for i, asn in enumerate(as_numbers)}
    g = AsGraph(len(as_numbers))
    for a, b, code in sorted(seen.values()):
        if code == 0:
            g.add_edge(Edge(index[a], index[b], RelType.P2P))
        else:
            # record is provider|customer; Edge stores the customer first
            g.add_edge(Edge(index[b], index[a], RelType.CP))
    return g, as_numbers


def save_graph(
    g: AsGraph, path: str, as_numbers: list[int] | None = None, comment: str = ""
) -> None:
    """Write the canonical record list. Round-trips through load_graph."""
    if as_numbers is None:
        as_numbers = list(range(g.node_count))
    with open(path, "w") as fh:
        fh.write("# AS-relationship graph: provider|customer|-1, peer|peer|0\n")
        if comment:
            fh.write(f"# {comment}\n")
        for a, b, code in g.canonical_edges():
            fh.write(f"{as_numbers[a]}|{as_numbers[b]}|{code}\n")


def save_profile(profile: JellyfishProfile, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(profile.to_dict(), fh, indent=1)
        fh.write("\n")


def load_profile(path: str) -> JellyfishProfile:
    with open(path) as fh:
        data = json.load(fh)
    version = data.get("schema_version")
    if version != PROFILE_SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"profile schema {version!r}, expected {PROFILE_SCHEMA_VERSION}"
        )
    return JellyfishProfile.from_dict(data)


def save_report(report: MetricsReport, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=1)
        fh.write("\n")


def load_report(path: str) -> MetricsReport:
    with open(path) as fh:
        data = json.load(fh)
    version = data.get("schema_version")
    if version != REPORT_SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"report schema {version!r}, expected {REPORT_SCHEMA_VERSION}"
        )
    return MetricsReport.from_dict(data)
