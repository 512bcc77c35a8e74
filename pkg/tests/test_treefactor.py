import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prgeom.bounds import PASS, stringiness
from prgeom.constructions import distance_colored_graph, paley_graph
from prgeom.graph import ColoredGraph, Graph, VertexSet
from prgeom.treefactor import (
    ColoredTree,
    Packing,
    color_threshold,
    find_colored_edge,
    greedy_colored_matching,
    greedy_star_packing,
    leftover_is_maximal,
    low_degree_count,
    tree_factor_linear,
    tree_factor_stringiness,
    validate_packing,
)


@pytest.fixture(scope="module")
def paley101c():
    return ColoredGraph.single(paley_graph(101))


def test_tree_parsing():
    t = ColoredTree.parse("0-1:1, 1-2:b")
    assert t.m == 3 and t.edges == ((0, 1, 1), (1, 2, "b"))
    assert ColoredTree.parse("") == ColoredTree.single_vertex()
    assert ColoredTree.star([1, 2]).is_star() and not ColoredTree.path([1, 2, 3]).is_star()
    with pytest.raises(ValueError):
        ColoredTree.parse("0-1:1,1-2:1,2-0:1")


def test_find_colored_edge(colored13, rng):
    assert find_colored_edge(colored13, None, None, 1) is not None
    a, b = 0, 1
    c = next(c for c in colored13.colors if not colored13.layer(c).has_edge(a, b))
    assert find_colored_edge(colored13, [a], [b], c) is None
    with pytest.raises(KeyError):
        find_colored_edge(colored13, None, None, 13)
    thr = color_threshold(colored13, colored13.colors)
    assert 110 > thr
    for _ in range(5):
        A = VertexSet.random(169, 110, rng)
        B = VertexSet.random(169, 110, rng)
        for t in colored13.colors:
            u, v = find_colored_edge(colored13, A, B, t)
            assert u in A and v in B and colored13.layer(t).has_edge(u, v)


def test_low_degree_count(paley101c, rng):
    k5 = ColoredGraph.single(Graph.complete(5))
    assert low_degree_count(k5, [0, 1, 2], 0, 1)[0] == 0
    assert low_degree_count(paley101c, [], 0, 2)[0] == 0
    count, rep = low_degree_count(paley101c, VertexSet.random(101, 60, rng), 0, 3)
    assert rep.status == PASS and rep.rhs == pytest.approx(3 * 5.525 * 101 / 50, rel=1e-3)
    with pytest.raises(ValueError):
        low_degree_count(paley101c, None, 0, 0)


def test_star_packing_examples(colored13):
    k9 = ColoredGraph.single(Graph.complete(9))
    p = greedy_star_packing(k9, None, ColoredTree.star([0]))
    assert len(p) == 4 and p.bound == pytest.approx((9 - 9 / 8) / 2)
    empty = greedy_star_packing(k9, [], ColoredTree.star([0]))
    assert len(empty) == 0 and empty.bound <= 0
    star = ColoredTree.star([1, 1, 2])
    p = greedy_star_packing(colored13, None, star)
    assert p.meets_bound and validate_packing(colored13, None, p) == []
    assert p.bound == pytest.approx((169 - 3 * color_threshold(colored13, [1, 2])) / 4)
    with pytest.raises(ValueError):
        greedy_star_packing(colored13, None, ColoredTree.path([1, 2, 3]))


def test_greedy_matching(paley101c, rng):
    k6 = ColoredGraph.single(Graph.complete(6))
    assert len(greedy_colored_matching(k6, [0, 1, 2], [3, 4, 5], 0)) == 3
    empty = ColoredGraph.single(Graph(np.zeros((6, 6), dtype=bool)))
    assert greedy_colored_matching(empty, [0, 1, 2], [3, 4, 5], 0) == []
    with pytest.raises(ValueError):
        greedy_colored_matching(k6, [0, 1], [1, 2], 0)
    thr = color_threshold(paley101c, [0])
    perm = rng.permutation(101)
    A, B = perm[:30], perm[30:60]
    matching = greedy_colored_matching(paley101c, A, B, 0)
    assert len(matching) >= 30 - thr
    assert leftover_is_maximal(paley101c, A, B, 0, matching)
    assert len({a for a, _ in matching} | {b for _, b in matching}) == 2 * len(matching)


def test_stringiness_examples(colored13):
    single = tree_factor_stringiness(colored13, None, ColoredTree.single_vertex())
    assert len(single) == 169
    cherry = ColoredTree.star([1, 1])
    p = tree_factor_stringiness(colored13, None, cherry)
    assert p.bound == pytest.approx(169 / 3 - color_threshold(colored13, [1]))
    assert p.meets_bound and validate_packing(colored13, None, p) == []
    spider = ColoredTree(5, ((0, 1, 1), (1, 2, 2), (0, 3, 3), (3, 4, 4)))
    p = tree_factor_stringiness(colored13, None, spider)
    assert p.extra["sigma"] == stringiness(spider) == 12
    assert p.meets_bound and validate_packing(colored13, None, p) == []


def test_linear_examples(colored13):
    edge = ColoredTree.path([5])
    p = tree_factor_linear(colored13, None, edge)
    assert p.meets_bound and validate_packing(colored13, None, p) == []
    small = tree_factor_linear(colored13, range(20), ColoredTree.path([1, 2, 3]))
    assert small.vacuous
    with pytest.raises(KeyError):
        tree_factor_linear(colored13, None, ColoredTree.path([0]))


@pytest.mark.slow
def test_linear_path_on_f17():
    cg = distance_colored_graph(17, 2)
    p = tree_factor_linear(cg, None, ColoredTree.path([1, 2, 3]))
    assert p.bound == pytest.approx(289 / 4 - color_threshold(cg, [1, 2, 3]))
    assert p.meets_bound and validate_packing(cg, None, p) == []


def test_validator_catches_corruption(colored13):
    p = tree_factor_linear(colored13, None, ColoredTree.path([1, 2]))
    good = p.embeddings
    overlap = Packing(p.tree, [good[0], (good[0][0],) + good[1][1:]], p.bound, p.threshold)
    assert any("shared" in s for s in validate_packing(colored13, None, overlap))
    wrong = Packing(ColoredTree.path([3, 2]), good[:1], p.bound, p.threshold)
    assert any("not a color-3 edge" in s for s in validate_packing(colored13, None, wrong))
    outside = validate_packing(colored13, [v for v in range(169) if v != good[0][0]], p)
    assert any("outside U" in s for s in outside)


def test_packing_determinism_and_certificate(colored13):
    t = ColoredTree.path([1, 2, 3])
    a = tree_factor_linear(colored13, None, t)
    b = tree_factor_linear(colored13, None, t)
    assert a.embeddings == b.embeddings
    cert = a.certificate()
    assert cert.relation == ">=" and cert.lhs == len(a)
    d = a.to_dict()
    assert d["count"] == len(a) and d["certificate"]["status"] == cert.status


# ---------------------------------------------------------------- properties

@st.composite
def colored_trees(draw, colors, max_m=6):
    m = draw(st.integers(1, max_m))
    edges = []
    for v in range(1, m):
        u = draw(st.integers(0, v - 1))
        edges.append((u, v, draw(st.sampled_from(colors))))
    return ColoredTree(m, tuple(edges))


HOST = distance_colored_graph(7, 2)


@settings(max_examples=40, deadline=None)
@given(colored_trees(HOST.colors), st.integers(0, 2**32 - 1), st.sampled_from(["linear", "stringiness"]))
def test_packings_always_valid(tree, seed, method):
    r = np.random.default_rng(seed)
    U = VertexSet.random(49, int(r.integers(0, 50)), r)
    build = tree_factor_linear if method == "linear" else tree_factor_stringiness
    p = build(HOST, U, tree)
    assert validate_packing(HOST, U, p) == []
    if method == "stringiness" or not p.vacuous:
        assert p.meets_bound


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(HOST.colors))
def test_matching_leftovers_maximal(seed, c):
    r = np.random.default_rng(seed)
    perm = r.permutation(49)
    cut = int(r.integers(0, 50))
    cut2 = int(r.integers(cut, 50))
    A, B = perm[:cut], perm[cut:cut2]
    matching = greedy_colored_matching(HOST, A, B, c)
    assert leftover_is_maximal(HOST, A, B, c, matching)
    thr = color_threshold(HOST, [c])
    unmatched_a = len(A) - len(matching)
    unmatched_b = len(B) - len(matching)
    assert min(unmatched_a, unmatched_b) <= thr + 1e-9
