"""Shared fixtures. Full-scale graphs are expensive, so they are built
once per session and reused by the generator, metrics, and acceptance
tests."""

from __future__ import annotations

import time

import numpy as np
import pytest

from jellytopo import (
    GeneratorConfig,
    decompose,
    extract_profile,
    generate,
    reference_profile,
)
from jellytopo.graph import AsGraph, Edge, RelType

SEED_A = 7
SEED_B = 1313


@pytest.fixture(scope="session")
def ref_profile():
    return reference_profile()


@pytest.fixture(scope="session")
def full_run_a(ref_profile):
    """Full-scale generation A plus timings for the acceptance budget."""
    t0 = time.perf_counter()
    g, built, report = generate(ref_profile, GeneratorConfig(seed=SEED_A))
    t1 = time.perf_counter()
    d = decompose(g)
    t2 = time.perf_counter()
    prof = extract_profile(g, d)
    t3 = time.perf_counter()
    return {
        "graph": g,
        "built": built,
        "report": report,
        "decomp": d,
        "profile": prof,
        "seconds": {"generate": t1 - t0, "decompose": t2 - t1, "profile": t3 - t2},
    }


@pytest.fixture(scope="session")
def full_run_b(ref_profile):
    g, built, report = generate(ref_profile, GeneratorConfig(seed=SEED_B))
    return {"graph": g, "built": built, "report": report}


@pytest.fixture(scope="session")
def shrink_run(ref_profile):
    t0 = time.perf_counter()
    g, built, report = generate(
        ref_profile, GeneratorConfig(target_nodes=2000, seed=SEED_A)
    )
    elapsed = time.perf_counter() - t0
    return {"graph": g, "built": built, "report": report, "seconds": elapsed}


def make_graph(n, edges):
    """Small-graph helper: edges as (a, b, 'p2p'|'cp') triples."""
    g = AsGraph(n)
    for a, b, kind in edges:
        g.add_edge(Edge(a, b, RelType.P2P if kind == "p2p" else RelType.CP))
    return g


def random_graph(n, n_edges, seed, cp_share=0.5):
    """Random simple graph with mixed edge types (may be disconnected)."""
    rng = np.random.default_rng(seed)
    g = AsGraph(n)
    placed = 0
    attempts = 0
    while placed < n_edges and attempts < 50 * n_edges:
        attempts += 1
        a = int(rng.integers(n))
        b = int(rng.integers(n))
        if a == b or g.has_pair(a, b):
            continue
        rel = RelType.CP if rng.random() < cp_share else RelType.P2P
        g.add_edge(Edge(a, b, rel))
        placed += 1
    return g
