import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prgeom.graph import (
    ColoredGraph,
    Graph,
    VertexSet,
    cartesian_product,
    edges_between,
    induced_subgraph,
    is_bipartite,
    tensor_product,
)

OUTER = range(5)
INNER = range(5, 10)


def test_vertex_set_forms_agree():
    a = VertexSet(6, [4, 1, 1])
    b = VertexSet(6, np.array([False, True, False, False, True, False]))
    assert a == b
    assert list(a) == [1, 4]
    assert 4 in a and 0 not in a
    assert list(VertexSet.full(3) - a.__class__(3, [1])) == [0, 2]
    with pytest.raises(ValueError):
        VertexSet(3, [3])


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]], dtype=bool))
    with pytest.raises(ValueError):
        Graph(np.eye(2, dtype=bool))
    g = Graph(np.eye(2, dtype=bool), loops=True)
    assert g.has_edge(0, 0)


def test_adjacency_is_read_only():
    g = Graph.cycle(4)
    with pytest.raises(ValueError):
        g.adj[0, 2] = True


def test_basic_families():
    assert Graph.complete(5).edge_count == 10
    assert Graph.cycle(7).degree == 2
    p = Graph.petersen()
    assert p.n == 10 and p.edge_count == 15 and p.degree == 3
    assert list(Graph.path(3).degrees) == [1, 2, 1]


def test_petersen_has_girth_five():
    a = Graph.petersen().matrix()
    a2 = a @ a
    assert np.trace(a @ a2) == 0
    off = a2 - np.diag(np.diag(a2))
    assert off.max() == 1


def test_cartesian_examples():
    c3 = cartesian_product(Graph.cycle(3), Graph.cycle(3))
    assert c3.n == 9 and c3.degree == 4
    sq = cartesian_product(Graph.complete(2), Graph.complete(2))
    # 0-1-3-2-0 is the 4-cycle; the diagonals stay non-adjacent
    assert [sq.has_edge(*e) for e in [(0, 1), (1, 3), (3, 2), (2, 0), (0, 3), (1, 2)]] == [True] * 4 + [False] * 2
    pk = cartesian_product(Graph.petersen(), Graph.complete(2))
    assert (pk.n, pk.degree, pk.edge_count) == (20, 4, 40)


def test_cartesian_row_major_indexing():
    g1, g2 = Graph.path(3), Graph.cycle(4)
    g = cartesian_product(g1, g2)
    for u1 in range(3):
        for v1 in range(4):
            for u2 in range(3):
                for v2 in range(4):
                    want = (u1 == u2 and g2.has_edge(v1, v2)) or (v1 == v2 and g1.has_edge(u1, u2))
                    assert g.has_edge(u1 * 4 + v1, u2 * 4 + v2) == want


def test_tensor_examples():
    p = Graph.petersen()
    assert tensor_product(p, Graph.complete(4)).degree == 9
    c = tensor_product(Graph.cycle(5), Graph.cycle(5))
    assert (c.n, c.degree, c.edge_count) == (25, 4, 50)
    cover = tensor_product(p, Graph.complete(2))
    assert is_bipartite(cover) and not is_bipartite(p)
    assert cover.edge_count == 2 * p.edge_count


def test_product_overflow():
    big = Graph.complete(200)
    with pytest.raises(OverflowError):
        tensor_product(big, big)


def test_induced_subgraph_examples():
    p = Graph.petersen()
    empty, idx = induced_subgraph(p, [])
    assert empty.n == 0 and idx.size == 0
    whole, _ = induced_subgraph(p, VertexSet.full(10))
    assert whole == p
    outer, idx = induced_subgraph(p, OUTER)
    assert outer.edge_count == 5 and list(idx) == list(OUTER)


def test_edges_between_examples():
    p = Graph.petersen()
    assert edges_between(Graph.complete(3), None, None) == 6
    assert edges_between(p, OUTER, INNER) == 5
    assert edges_between(Graph.path(4), [0], [3]) == 0


def test_colored_graph_checks():
    a = Graph.from_edges(4, [(0, 1), (2, 3)])
    b = Graph.from_edges(4, [(1, 2), (3, 0)])
    cg = ColoredGraph([a, b], ["x", "y"], regular=True)
    assert cg.layer("y") == b
    assert cg.union() == Graph.cycle(4)
    with pytest.raises(KeyError):
        cg.layer("z")
    with pytest.raises(ValueError):
        ColoredGraph([a, a])
    with pytest.raises(ValueError):
        ColoredGraph([a, Graph.from_edges(4, [(1, 2)])], regular=True)


@st.composite
def random_graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    a = np.array(bits, dtype=bool).reshape(n, n)
    a = np.triu(a, 1)
    return Graph(a | a.T)


@settings(max_examples=60, deadline=None)
@given(random_graphs(), random_graphs())
def test_product_invariants(g1, g2):
    cart = cartesian_product(g1, g2)
    assert cart.edge_count == g1.edge_count * g2.n + g2.edge_count * g1.n
    ten = tensor_product(g1, g2)
    want = np.outer(g1.degrees, g2.degrees).ravel()
    assert np.array_equal(ten.degrees, want)


@settings(max_examples=60, deadline=None)
@given(random_graphs())
def test_edges_between_full_is_twice_edge_count(g):
    assert edges_between(g, None, None) == 2 * g.edge_count
