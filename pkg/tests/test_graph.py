import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jellytopo.errors import DuplicateEdge, NodeOutOfRange, SelfLoop
from jellytopo.graph import AsGraph, Edge, RelType, connected_components

from .conftest import make_graph


def clique(n):
    return make_graph(n, [(a, b, "p2p") for a in range(n) for b in range(a + 1, n)])


def test_single_p2p_edge_degrees():
    g = make_graph(2, [(0, 1, "p2p")])
    assert g.degree(0) == 1
    assert g.degree(1) == 1


def test_duplicate_cp_edge_rejected():
    g = make_graph(2, [(0, 1, "cp")])
    with pytest.raises(DuplicateEdge):
        g.add_edge(Edge(0, 1, RelType.CP))


def test_conflicting_reltype_rejected():
    # one relationship per AS pair, regardless of type
    g = make_graph(2, [(0, 1, "p2p")])
    with pytest.raises(DuplicateEdge):
        g.add_edge(Edge(1, 0, RelType.CP))


def test_nine_clique_degrees():
    g = clique(9)
    assert g.edge_count == 36
    assert all(g.degree(v) == 8 for v in range(9))


def test_self_loop_and_range_errors():
    g = AsGraph(3)
    with pytest.raises(SelfLoop):
        g.add_edge(Edge(1, 1, RelType.P2P))
    with pytest.raises(NodeOutOfRange):
        g.add_edge(Edge(0, 9, RelType.P2P))
    with pytest.raises(NodeOutOfRange):
        g.degree(5)


def test_degree_cases():
    assert AsGraph(1).degree(0) == 0
    star = make_graph(6, [(0, leaf, "p2p") for leaf in range(1, 6)])
    assert star.degree(0) == 5
    # degree counts both CP roles plus P2P
    g = make_graph(4, [(0, 1, "p2p"), (0, 2, "cp"), (3, 0, "cp")])
    assert g.degree(0) == 3
    assert g.p2p_degree(0) == 1
    assert g.provider_count(0) == 1
    assert g.customer_count(0) == 1


def test_cp_role_orientation():
    g = make_graph(2, [(0, 1, "cp")])  # 0 buys transit from 1
    assert g.providers(0) == [1]
    assert g.customers(1) == [0]
    assert g.providers(1) == []


def test_components_empty_graph():
    assert connected_components(AsGraph(0)) == []


def test_components_two_disjoint_edges():
    g = make_graph(4, [(0, 1, "p2p"), (2, 3, "cp")])
    assert connected_components(g) == [[0, 1], [2, 3]]


def _bfs_components_oracle(g):
    seen = set()
    out = []
    for s in range(g.node_count):
        if s in seen:
            continue
        block = []
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            block.append(u)
            for w in g.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(sorted(block))
    return sorted(out, key=lambda b: b[0])


def test_components_clique_plus_isolated():
    g = clique(9)
    g.add_nodes(1)
    comps = connected_components(g)
    assert sorted(len(c) for c in comps) == [1, 9]
    assert comps == _bfs_components_oracle(g)


edge_lists = st.lists(
    st.tuples(st.integers(0, 14), st.integers(0, 14), st.booleans()),
    max_size=60,
)


@given(edge_lists)
@settings(max_examples=60, deadline=None)
def test_handshake_symmetry_duality_properties(raw):
    g = AsGraph(15)
    for a, b, is_cp in raw:
        if a == b or g.has_pair(a, b):
            continue
        g.add_edge(Edge(a, b, RelType.CP if is_cp else RelType.P2P))
    # handshake
    assert sum(g.degree(v) for v in range(15)) == 2 * g.edge_count
    # P2P symmetry and CP role duality
    for v in range(15):
        for u in g.p2p_neighbors(v):
            assert v in g.p2p_neighbors(u)
        for p in g.providers(v):
            assert v in g.customers(p)
    # components partition the node set
    comps = connected_components(g)
    flat = [v for c in comps for v in c]
    assert sorted(flat) == list(range(15))
    assert comps == _bfs_components_oracle(g)


def test_canonical_edges_stable():
    g1 = make_graph(4, [(2, 3, "p2p"), (0, 1, "cp"), (1, 3, "p2p")])
    g2 = make_graph(4, [(1, 3, "p2p"), (3, 2, "p2p"), (0, 1, "cp")])
    assert g1.canonical_edges() == g2.canonical_edges()
    # CP canonical form is (provider, customer, -1)
    assert (1, 0, -1) in g1.canonical_edges()
