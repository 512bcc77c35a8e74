import itertools
import math

import numpy as np
import pytest

from prgeom.constructions import (
    FamilySpec,
    distance_colored_graph,
    distance_graph,
    dot_product_graph,
    dot_product_info,
    paley_graph,
    random_regular_graph,
    subgroup_difference_graph,
)
from prgeom.ffgeom import PrimeField, quadratic_distance
from prgeom.graph import Graph
from prgeom.spectral import spectrum


def _sphere_size(q, t):
    return sum((x * x + y * y) % q == t for x in range(q) for y in range(q))


def test_distance_graph_q5():
    g = distance_graph(5, 2, 1)
    assert g.n == 25 and g.is_regular() and g.degree == 4 == _sphere_size(5, 1)


def test_distance_graph_matches_pointwise_definition():
    F = PrimeField(7)
    g = distance_graph(7, 2, 3)
    pts = list(F.points(2))
    for x, y in itertools.combinations(pts, 2):
        assert g.has_edge(x.index(), y.index()) == (quadratic_distance(x, y) == 3)


@pytest.mark.parametrize("q, dim, t", [(5, 2, 2), (7, 2, 1), (7, 3, 5), (13, 2, 6), (3, 4, 1)])
def test_distance_graph_regular(q, dim, t):
    assert distance_graph(q, dim, t).is_regular()


def test_distance_zero_rejected():
    with pytest.raises(ValueError):
        distance_graph(5, 2, 5)


def test_distance_colored_q5():
    cg = distance_colored_graph(5, 2)
    assert cg.colors == [1, 2, 3, 4]
    # q = 1 mod 4: every nonzero sphere in F_5^2 has q - 1 = 4 points
    assert [layer.degree for layer in cg.layers] == [4, 4, 4, 4]
    zero_pairs = _sphere_size(5, 0) - 1
    assert sum(layer.degree for layer in cg.layers) + zero_pairs == 24


def test_distance_colored_partitions_nonzero_pairs():
    q = 7
    cg = distance_colored_graph(q, 2)
    pts = list(PrimeField(q).points(2))
    for x, y in itertools.combinations(pts, 2):
        owners = [c for c in cg.colors if cg.layer(c).has_edge(x.index(), y.index())]
        dist = quadratic_distance(x, y)
        assert owners == ([dist] if dist else [])


def test_distance_colored_q13_layers(colored13):
    assert len(colored13.colors) == 12
    for layer in colored13.layers:
        assert spectrum(layer).lam <= 2 * math.sqrt(13) + 1e-6


def test_dot_product_q5():
    info = dot_product_info(5, 2, 1)
    g = info.graph
    assert g.degrees[0] == 0
    loops = set(info.looped_vertices)
    for u in range(1, 25):
        assert g.degrees[u] == 5 - (u in loops)
    assert info.degree_deviation == 5  # the isolated zero vector against degree-5 vertices
    looped = dot_product_graph(5, 2, 1, include_loops=True)
    assert looped.loops and all(looped.degrees[1:] == 5)


def test_subgroup_graph():
    g = subgroup_difference_graph(13, 4)
    assert g.n == 13 and g.degree == 4
    assert g.neighbors(0).tolist() == [1, 5, 8, 12]
    assert subgroup_difference_graph(13, 12) == Graph.complete(13)
    assert spectrum(g).lam <= math.sqrt(13)


@pytest.mark.parametrize("h", [3, 5])
def test_subgroup_graph_rejects_bad_orders(h):
    with pytest.raises(ValueError):
        subgroup_difference_graph(13, h)


def test_paley_graphs():
    assert paley_graph(5) == Graph.cycle(5)
    g = paley_graph(101)
    assert g.degree == 50
    assert spectrum(g).lam == pytest.approx((1 + math.sqrt(101)) / 2, abs=1e-9)
    with pytest.raises(ValueError):
        paley_graph(7)


def test_random_regular_deterministic():
    a = random_regular_graph(10, 3, seed=1)
    b = random_regular_graph(10, 3, seed=1)
    assert a.is_regular() and a.degree == 3 and not a.loops
    assert a.edges() == b.edges()
    assert random_regular_graph(10, 3, seed=2).edges() != a.edges()


@pytest.mark.parametrize("n, d", [(7, 3), (5, 5), (4, -1)])
def test_random_regular_rejects(n, d):
    with pytest.raises(ValueError):
        random_regular_graph(n, d, 0)


@pytest.mark.parametrize("n, d", [(12, 11), (30, 1), (9, 0), (200, 12)])
def test_random_regular_extremes(n, d):
    g = random_regular_graph(n, d, 5)
    assert np.all(g.degrees == d)


def test_random_regular_lambda_recorded():
    lams = [spectrum(random_regular_graph(500, 10, s)).lam for s in range(2)]
    assert all(0 < lam < 10 for lam in lams)


def test_family_spec():
    spec = FamilySpec("distance", {"q": 13, "dim": 2, "t": 1})
    assert spec.build() == distance_graph(13, 2, 1)
    assert FamilySpec(**spec.to_dict()) == spec
    with pytest.raises(ValueError):
        FamilySpec("hypercube", {})
    with pytest.raises(ValueError):
        FamilySpec("paley", {"q": 21})
