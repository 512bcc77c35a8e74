"""Graph families over prime fields, plus a seeded random regular null model.

Vertices of F_q^dim are indexed lexicographically (see `ffgeom.point_array`).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from prgeom.ffgeom import PrimeField, is_prime, multiplicative_subgroup, point_array
from prgeom.graph import ColoredGraph, Graph


def _field(q: int) -> int:
    return PrimeField(q).p


def _quadratic_distances(q: int, dim: int) -> np.ndarray:
    pts = point_array(q, dim)
    dist = np.zeros((len(pts), len(pts)), dtype=np.int64)
    for i in range(dim):
        diff = pts[:, None, i] - pts[None, :, i]
        dist += diff * diff
    return dist % q


def distance_graph(q: int, dim: int, t: int) -> Graph:
    """x ~ y iff ||x - y|| = t, on F_q^dim."""
    q = _field(q)
    t %= q
    if t == 0:
        raise ValueError("distance t must be nonzero in F_q")
    adj = _quadratic_distances(q, dim) == t
    return Graph(adj, name=f"dist(q={q},dim={dim},t={t})")


def distance_colored_graph(q: int, dim: int) -> ColoredGraph:
    """One color per nonzero distance t; pairs at distance zero carry no color."""
    q = _field(q)
    dist = _quadratic_distances(q, dim)
    layers = [Graph(dist == t, name=f"dist(q={q},dim={dim},t={t})") for t in range(1, q)]
    return ColoredGraph(layers, list(range(1, q)), regular=True, name=f"distcol(q={q},dim={dim})")


@dataclass(frozen=True)
class DotProductGraph:
    """Dot-product graph with its loop bookkeeping."""

    graph: Graph
    looped_vertices: tuple[int, ...]

    @property
    def degree_deviation(self) -> int:
        deg = self.graph.degrees
        return int(deg.max() - deg.min())


def dot_product_graph(q: int, dim: int, t: int, include_loops: bool = False) -> Graph:
    """u ~ v iff u . v = t.

    Without loops, each vertex with u . u = t loses one from its degree, so the
    graph is only near-regular; `dot_product_info` reports which vertices.
    """
    return dot_product_info(q, dim, t, include_loops).graph


def dot_product_info(q: int, dim: int, t: int, include_loops: bool = False) -> DotProductGraph:
    q = _field(q)
    t %= q
    pts = point_array(q, dim)
    adj = (pts @ pts.T) % q == t
    looped = tuple(int(i) for i in np.flatnonzero(adj.diagonal()))
    if not include_loops:
        np.fill_diagonal(adj, False)
    name = f"dot(q={q},dim={dim},t={t}{',loops' if include_loops else ''})"
    return DotProductGraph(Graph(adj, loops=include_loops, name=name), looped)


def subgroup_difference_graph(q: int, h: int) -> Graph:
    """Cayley graph on F_q with connection set the order-h subgroup A of F_q^*."""
    q = _field(q)
    sub = multiplicative_subgroup(q, h)
    if not sub.symmetric:
        raise ValueError(
            f"-1 is not in the order-{h} subgroup of F_{q}^*, so x - y in A is not symmetric; "
            f"pick h with (q-1)/h dividing (q-1)/2 (an even h)"
        )
    return _cayley(q, sub.elements, name=f"subgroup(q={q},h={h})")


def _cayley(q: int, connection, name: str) -> Graph:
    conn = np.zeros(q, dtype=bool)
    conn[list(connection)] = True
    x = np.arange(q)
    return Graph(conn[(x[:, None] - x[None, :]) % q], name=name)


def paley_graph(q: int) -> Graph:
    q = _field(q)
    if q % 4 != 1:
        raise ValueError(f"Paley graph needs q = 1 mod 4, got q = {q}")
    squares = {x * x % q for x in range(1, q)}
    return _cayley(q, squares, name=f"paley({q})")


def random_regular_graph(n: int, d: int, seed: int) -> Graph:
    """Simple d-regular graph from the pairing model, resampling colliding pairs.

    Stubs are shuffled and paired; pairs that would form a loop or a repeated
    edge go back into the pool and are reshuffled. A stuck pool restarts the
    attempt. The output depends only on ``(n, d, seed)``.
    """
    if d < 0 or d >= n or (n * d) % 2:
        raise ValueError(f"no simple {d}-regular graph on {n} vertices")
    rng = np.random.default_rng(seed)
    while True:
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return Graph.from_edges(n, edges, name=f"rr(n={n},d={d},seed={seed})")


def _try_pairing(n: int, d: int, rng: np.random.Generator):
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), d)
    while stubs.size:
        rng.shuffle(stubs)
        leftover = []
        for u, v in stubs.reshape(-1, 2).tolist():
            e = (u, v) if u < v else (v, u)
            if u != v and e not in edges:
                edges.add(e)
            else:
                leftover += [u, v]
        if len(leftover) == stubs.size:
            # nothing pairable in this shuffle; give up if no pair could ever work
            pool = sorted(set(leftover))
            if not any((a, b) not in edges for i, a in enumerate(pool) for b in pool[i + 1:]):
                return None
        stubs = np.array(leftover, dtype=np.int64)
    return sorted(edges)


@dataclass(frozen=True)
class FamilySpec:
    """Serializable description of one graph family instance."""

    kind: str
    params: dict = field(default_factory=dict)

    KINDS = ("distance", "distance_colored", "dot_product", "subgroup_difference", "paley", "random_regular")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {', '.join(self.KINDS)}")
        p = self.params
        if "q" in p and not is_prime(int(p["q"])):
            raise ValueError(f"q = {p['q']} is not prime")

    def build(self):
        p = self.params
        if self.kind == "distance":
            return distance_graph(p["q"], p.get("dim", 2), p.get("t", 1))
        if self.kind == "distance_colored":
            return distance_colored_graph(p["q"], p.get("dim", 2))
        if self.kind == "dot_product":
            return dot_product_graph(p["q"], p.get("dim", 2), p.get("t", 1), p.get("include_loops", False))
        if self.kind == "subgroup_difference":
            return subgroup_difference_graph(p["q"], p["h"])
        if self.kind == "paley":
            return paley_graph(p["q"])
        return random_regular_graph(p["n"], p["d"], p.get("seed", 0))

    def to_dict(self) -> dict:
        return asdict(self)
