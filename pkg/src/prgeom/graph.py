"""Simple undirected graphs, edge-colored graphs, vertex sets and graph products.

Adjacency is held as a dense read-only boolean matrix; rows double as bit rows for
intersection counts. Product graphs index the pair (v1, v2) as ``v1 * n2 + v2``.
"""
from __future__ import annotations

import hashlib
from collections.abc import Iterable, Sequence

import numpy as np

# dense adjacency: n*n bytes
MAX_VERTICES = 30_000


class VertexSet:
    """A subset of ``range(n)``, kept as a sorted index array plus a boolean mask."""

    __slots__ = ("n", "indices", "mask")

    def __init__(self, n: int, members: Iterable[int] | np.ndarray = ()):
        n = int(n)
        mask = np.zeros(n, dtype=bool)
        members = np.asarray(list(members) if not isinstance(members, np.ndarray) else members)
        if members.dtype == bool:
            if members.shape != (n,):
                raise ValueError("boolean mask has the wrong length")
            mask = members.copy()
        elif members.size:
            members = members.astype(np.int64)
            if members.min() < 0 or members.max() >= n:
                raise ValueError(f"vertex index out of range [0, {n})")
            mask[members] = True
        mask.setflags(write=False)
        idx = np.flatnonzero(mask)
        idx.setflags(write=False)
        self.n = n
        self.mask = mask
        self.indices = idx

    @classmethod
    def full(cls, n: int) -> VertexSet:
        return cls(n, np.ones(n, dtype=bool))

    @classmethod
    def empty(cls, n: int) -> VertexSet:
        return cls(n)

    @classmethod
    def random(cls, n: int, size: int, rng: np.random.Generator) -> VertexSet:
        if not 0 <= size <= n:
            raise ValueError(f"cannot draw {size} vertices out of {n}")
        return cls(n, rng.choice(n, size=size, replace=False))

    def __len__(self) -> int:
        return int(self.indices.size)

    def __iter__(self):
        return (int(i) for i in self.indices)

    def __contains__(self, v) -> bool:
        return 0 <= int(v) < self.n and bool(self.mask[int(v)])

    def __eq__(self, other) -> bool:
        return isinstance(other, VertexSet) and self.n == other.n and np.array_equal(self.mask, other.mask)

    def __hash__(self):
        return hash((self.n, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"VertexSet(n={self.n}, size={len(self)})"

    def __sub__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.n, self.mask & ~other.mask)

    def __and__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.n, self.mask & other.mask)

    def __or__(self, other: VertexSet) -> VertexSet:
        return VertexSet(self.n, self.mask | other.mask)


def as_vertex_set(n: int, U) -> VertexSet:
    if U is None:
        return VertexSet.full(n)
    if isinstance(U, VertexSet):
        if U.n != n:
            raise ValueError(f"vertex set lives on {U.n} vertices, graph has {n}")
        return U
    return VertexSet(n, U)


class Graph:
    """Immutable simple undirected graph (optionally with loops)."""

    def __init__(self, adjacency, *, loops: bool = False, name: str | None = None):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square matrix")
        if adj.shape[0] > MAX_VERTICES:
            raise OverflowError(f"{adj.shape[0]} vertices exceeds the dense limit {MAX_VERTICES}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if not loops and adj.diagonal().any():
            raise ValueError("self-loops present but loops=False")
        adj.setflags(write=False)
        self.adj = adj
        self.loops = bool(loops)
        self.name = name
        self._degrees = None
        self._hash = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kw) -> Graph:
        adj = np.zeros((n, n), dtype=bool)
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if e.size:
            if e.min() < 0 or e.max() >= n:
                raise ValueError("edge endpoint out of range")
            adj[e[:, 0], e[:, 1]] = True
            adj[e[:, 1], e[:, 0]] = True
        return cls(adj, **kw)

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(~np.eye(n, dtype=bool), name=f"K{n}")

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner, name="Petersen")

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        if self._degrees is None:
            deg = self.adj.sum(axis=1).astype(np.int64)
            deg.setflags(write=False)
            self._degrees = deg
        return self._degrees

    @property
    def edge_count(self) -> int:
        loops = int(self.adj.diagonal().sum())
        return (int(self.adj.sum()) - loops) // 2 + loops

    def is_regular(self) -> bool:
        return self.n == 0 or bool((self.degrees == self.degrees[0]).all())

    @property
    def degree(self) -> int:
        """Common degree; raises if the graph is not regular."""
        if not self.is_regular():
            raise ValueError("graph is not regular")
        return int(self.degrees[0]) if self.n else 0

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges (u, v) with u <= v, sorted."""
        iu, ju = np.nonzero(np.triu(self.adj))
        return list(zip(iu.tolist(), ju.tolist()))

    def matrix(self, dtype=np.int64) -> np.ndarray:
        return self.adj.astype(dtype)

    def content_hash(self) -> str:
        """sha256 of the canonical edge-list serialization."""
        if self._hash is None:
            from prgeom.io import dumps_graph

            self._hash = hashlib.sha256(dumps_graph(self).encode()).hexdigest()
        return self._hash

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.loops == other.loops and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash(self.content_hash())

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.edge_count}>"


class ColoredGraph:
    """Edge-colored graph: one spanning `Graph` layer per color, pairwise edge-disjoint."""

    def __init__(self, layers: Sequence[Graph], colors: Sequence | None = None, *,
                 regular: bool = False, name: str | None = None):
        layers = list(layers)
        if not layers:
            raise ValueError("a colored graph needs at least one color")
        n = layers[0].n
        if any(g.n != n for g in layers):
            raise ValueError("all layers must share the vertex set")
        colors = list(range(len(layers))) if colors is None else list(colors)
        if len(colors) != len(layers) or len(set(colors)) != len(colors):
            raise ValueError("colors must be distinct and match the layers")
        seen = np.zeros((n, n), dtype=bool)
        for c, g in zip(colors, layers):
            if (seen & g.adj).any():
                raise ValueError(f"layer {c!r} shares edges with an earlier layer")
            seen |= g.adj
        if regular:
            for c, g in zip(colors, layers):
                if not g.is_regular():
                    raise ValueError(f"layer {c!r} is not regular")
        self.layers = layers
        self.colors = colors
        self.n = n
        self.name = name
        self._index = {c: i for i, c in enumerate(colors)}

    @classmethod
    def single(cls, g: Graph, color=0) -> ColoredGraph:
        return cls([g], [color], name=g.name)

    def layer(self, color) -> Graph:
        try:
            return self.layers[self._index[color]]
        except (KeyError, TypeError):
            raise KeyError(f"unknown color {color!r}") from None

    def color_index(self, color) -> int:
        if color not in self._index:
            raise KeyError(f"unknown color {color!r}")
        return self._index[color]

    def __contains__(self, color) -> bool:
        return color in self._index

    def union(self) -> Graph:
        adj = np.zeros((self.n, self.n), dtype=bool)
        for g in self.layers:
            adj |= g.adj
        return Graph(adj, loops=any(g.loops for g in self.layers))

    def content_hash(self) -> str:
        from prgeom.io import dumps_graph

        return hashlib.sha256(dumps_graph(self).encode()).hexdigest()

    def __repr__(self) -> str:
        return f"<ColoredGraph n={self.n} colors={len(self.colors)}>"


def _check_product_size(n1: int, n2: int) -> None:
    if n1 * n2 > MAX_VERTICES:
        raise OverflowError(f"product has {n1 * n2} vertices, beyond the index limit {MAX_VERTICES}")


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    _check_product_size(g1.n, g2.n)
    a1, a2 = g1.matrix(np.uint8), g2.matrix(np.uint8)
    adj = np.kron(a1, np.eye(g2.n, dtype=np.uint8)) | np.kron(np.eye(g1.n, dtype=np.uint8), a2)
    return Graph(adj.astype(bool), loops=g1.loops or g2.loops)


def tensor_product(g1: Graph, g2: Graph) -> Graph:
    _check_product_size(g1.n, g2.n)
    adj = np.kron(g1.matrix(np.uint8), g2.matrix(np.uint8)).astype(bool)
    return Graph(adj, loops=bool(adj.diagonal().any()))


def induced_subgraph(g: Graph, U) -> tuple[Graph, np.ndarray]:
    """Subgraph induced on U, plus the map new index -> old index."""
    U = as_vertex_set(g.n, U)
    idx = U.indices
    return Graph(g.adj[np.ix_(idx, idx)], loops=g.loops), np.array(idx)


def edges_between(g: Graph, A, B) -> int:
    """Number of ordered pairs (a, b) in A x B with ab an edge."""
    A, B = as_vertex_set(g.n, A), as_vertex_set(g.n, B)
    return int(g.adj[np.ix_(A.indices, B.indices)].sum())


def is_bipartite(g: Graph) -> bool:
    side = np.full(g.n, -1)
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return False
    return True
