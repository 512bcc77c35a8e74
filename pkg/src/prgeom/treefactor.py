"""Constructive disjoint tree packings in (n, d, lambda)-colored graphs.

Every search scans vertices in ascending index order, so results are
deterministic. Guarantees are evaluated with ``threshold = max_c lambda_c n / d_c``
over the colors a routine actually uses.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from prgeom.bounds import FAIL, PASS, BoundReport, leq, stringiness
from prgeom.graph import ColoredGraph, VertexSet, as_vertex_set
from prgeom.spectral import spectrum


@dataclass(frozen=True)
class ColoredTree:
    """Tree on vertices 0..m-1 with colored edges ``(u, v, color)``."""

    m: int
    edges: tuple[tuple[int, int, object], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v), c) for u, v, c in self.edges))
        stringiness(self)  # raises unless this is a tree

    @classmethod
    def path(cls, colors) -> ColoredTree:
        colors = list(colors)
        return cls(len(colors) + 1, tuple((i, i + 1, c) for i, c in enumerate(colors)))

    @classmethod
    def star(cls, colors) -> ColoredTree:
        colors = list(colors)
        return cls(len(colors) + 1, tuple((0, i + 1, c) for i, c in enumerate(colors)))

    @classmethod
    def single_vertex(cls) -> ColoredTree:
        return cls(1, ())

    @classmethod
    def parse(cls, text: str) -> ColoredTree:
        """``"0-1:1,1-2:2"`` -> edges (0,1,1), (1,2,2); ``""`` is a single vertex."""
        edges = []
        for part in filter(None, (p.strip() for p in text.split(","))):
            uv, _, c = part.partition(":")
            u, v = uv.split("-")
            edges.append((int(u), int(v), _label(c) if c else 0))
        m = 1 + max((max(u, v) for u, v, _ in edges), default=0)
        return cls(m, tuple(edges))

    def degrees(self) -> list[int]:
        deg = [0] * self.m
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def neighbors(self, x: int) -> list[tuple[int, object]]:
        out = []
        for u, v, c in self.edges:
            if u == x:
                out.append((v, c))
            elif v == x:
                out.append((u, c))
        return out

    def colors(self) -> set:
        return {c for _, _, c in self.edges}

    def is_star(self) -> bool:
        deg = self.degrees()
        return self.m >= 2 and max(deg) == self.m - 1

    def center(self) -> int:
        deg = self.degrees()
        return deg.index(max(deg))

    def remove(self, drop: set[int]) -> tuple[ColoredTree, list[int]]:
        """Subtree on the kept vertices, relabeled; also the new -> old vertex map."""
        keep = [x for x in range(self.m) if x not in drop]
        new = {old: i for i, old in enumerate(keep)}
        edges = tuple((new[u], new[v], c) for u, v, c in self.edges if u in new and v in new)
        return ColoredTree(len(keep), edges), keep


def _label(s: str):
    try:
        return int(s)
    except ValueError:
        return s


@dataclass
class Packing:
    """Vertex-disjoint embeddings of a tree; ``embeddings[i][x]`` is the host image of tree vertex x."""

    tree: ColoredTree
    embeddings: list[tuple[int, ...]]
    bound: float
    threshold: float
    vacuous: bool = False
    extra: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.embeddings)

    @property
    def used(self) -> set[int]:
        return {v for emb in self.embeddings for v in emb}

    @property
    def meets_bound(self) -> bool:
        return leq(self.bound, len(self.embeddings), self.bound)

    def certificate(self) -> BoundReport:
        return BoundReport("tree_packing", len(self.embeddings), self.bound, relation=">=",
                           status=PASS if self.meets_bound else FAIL,
                           error_terms={"lambda_n_over_d": self.threshold},
                           extra={"vacuous": self.vacuous, **self.extra})

    def to_dict(self) -> dict:
        return {
            "tree": {"m": self.tree.m, "edges": [list(e) for e in self.tree.edges]},
            "embeddings": [list(e) for e in self.embeddings],
            "count": len(self.embeddings),
            "bound": self.bound,
            "threshold": self.threshold,
            "vacuous": self.vacuous,
            "certificate": self.certificate().to_dict(),
        }


def color_threshold(g: ColoredGraph, colors, profiles: dict | None = None) -> float:
    """max over the given colors of lambda_c n / d_c (inf if a color layer is empty)."""
    colors = list(colors)
    if not colors:
        return 0.0
    out = 0.0
    for c in colors:
        g.color_index(c)
        prof = profiles[c] if profiles and c in profiles else spectrum(g.layer(c))
        out = max(out, prof.ratio)
    return out


def _layer_rows(g: ColoredGraph, c) -> np.ndarray:
    return g.layer(c).adj


def find_colored_edge(g: ColoredGraph, A, B, c) -> tuple[int, int] | None:
    """First edge of color c from A to B (smallest a, then smallest b), or None."""
    adj = _layer_rows(g, c)
    A, B = as_vertex_set(g.n, A), as_vertex_set(g.n, B)
    if not len(A) or not len(B):
        return None
    block = adj[np.ix_(A.indices, B.indices)]
    hits = np.flatnonzero(block.any(axis=1))
    if hits.size == 0:
        return None
    i = hits[0]
    j = np.flatnonzero(block[i])[0]
    return int(A.indices[i]), int(B.indices[j])


def low_degree_count(g: ColoredGraph, U, c, s: int, profiles: dict | None = None) -> tuple[int, BoundReport]:
    """Vertices of U with fewer than s neighbors of color c inside U; certified <= s lambda n / d."""
    if s < 1:
        raise ValueError("s must be >= 1")
    U = as_vertex_set(g.n, U)
    adj = _layer_rows(g, c)
    inside = adj[np.ix_(U.indices, U.indices)].sum(axis=1)
    count = int((inside < s).sum())
    thr = color_threshold(g, [c], profiles)
    rhs = s * thr
    rep = BoundReport("low_degree", count, rhs, status=PASS if leq(count, rhs) else FAIL,
                      extra={"color": c, "s": s})
    return count, rep


def greedy_star_packing(g: ColoredGraph, U, star: ColoredTree, profiles: dict | None = None,
                        threshold: float | None = None) -> Packing:
    """Repeatedly take the lowest-index center with enough free neighbors of every color."""
    if not star.is_star():
        raise ValueError("greedy_star_packing needs a star")
    U = as_vertex_set(g.n, U)
    center = star.center()
    legs = star.neighbors(center)
    need = Counter(c for _, c in legs)
    thr = color_threshold(g, need, profiles) if threshold is None else threshold
    m = len(legs)
    free = U.mask.copy()
    rows = {c: _layer_rows(g, c) for c in need}
    embeddings = []
    for u in U.indices:
        if not free[u]:
            continue
        picks = {}
        for c, k in need.items():
            cand = np.flatnonzero(rows[c][u] & free)
            if cand.size < k:
                break
            picks[c] = list(cand[:k])
        else:
            emb = [0] * star.m
            emb[center] = int(u)
            free[u] = False
            for x, c in legs:
                v = int(picks[c].pop(0))
                emb[x] = v
                free[v] = False
            embeddings.append(tuple(emb))
    bound = (len(U) - m * thr) / (m + 1)
    return Packing(star, embeddings, bound, thr)


def greedy_colored_matching(g: ColoredGraph, A, B, c) -> list[tuple[int, int]]:
    """Maximal c-colored matching between disjoint A and B, built edge by edge in index order."""
    A, B = as_vertex_set(g.n, A), as_vertex_set(g.n, B)
    if (A.mask & B.mask).any():
        raise ValueError("A and B must be disjoint")
    adj = _layer_rows(g, c)
    freeB = B.mask.copy()
    matching = []
    for a in A.indices:
        cand = np.flatnonzero(adj[a] & freeB)
        if cand.size:
            b = int(cand[0])
            freeB[b] = False
            matching.append((int(a), b))
    return matching


def _check_colors(g: ColoredGraph, tree: ColoredTree) -> None:
    missing = [c for c in tree.colors() if c not in g]
    if missing:
        raise KeyError(f"tree colors absent from host: {missing}")


def tree_factor_stringiness(g: ColoredGraph, U, tree: ColoredTree, profiles: dict | None = None) -> Packing:
    """Disjoint copies built star by star; at least |U| / sigma(T) - lambda n / d of them."""
    _check_colors(g, tree)
    U = as_vertex_set(g.n, U)
    thr = color_threshold(g, tree.colors(), profiles)
    embeddings = _stringiness(g, U, tree, profiles, thr)
    bound = len(U) / stringiness(tree) - thr
    return Packing(tree, embeddings, bound, thr, extra={"sigma": stringiness(tree)})


def _stringiness(g, U: VertexSet, tree: ColoredTree, profiles, thr) -> list[tuple[int, ...]]:
    if tree.m == 1:
        return [(int(u),) for u in U.indices]
    if tree.is_star():
        return greedy_star_packing(g, U, tree, profiles, thr).embeddings
    deg = tree.degrees()
    inner = [x for x in range(tree.m) if deg[x] > 1]
    inner_set = set(inner)
    # leaves of the leaf-stripped tree: inner vertices with one inner neighbor
    candidates = [x for x in inner if sum(1 for y, _ in tree.neighbors(x) if y in inner_set) == 1]
    v = min(candidates, key=lambda x: (deg[x], x))
    leaves = [y for y, _ in tree.neighbors(v) if deg[y] == 1]
    sub, keep = tree.remove(set(leaves))
    v_sub = keep.index(v)
    sub_copies = _stringiness(g, U, sub, profiles, thr)

    # star K_{1,y} rooted at v, packed into W = images of v
    star = ColoredTree.star([c for y, c in tree.neighbors(v) if y in leaves])
    owner = {emb[v_sub]: i for i, emb in enumerate(sub_copies)}
    W = VertexSet(g.n, list(owner))
    stars = greedy_star_packing(g, W, star, profiles, thr).embeddings
    leaf_order = [y for y, _ in tree.neighbors(v) if y in leaves]
    out = []
    for st in stars:
        base = sub_copies[owner[st[0]]]
        emb = [0] * tree.m
        for i_sub, old in enumerate(keep):
            emb[old] = base[i_sub]
        for j, leaf in enumerate(leaf_order):
            emb[leaf] = st[j + 1]
        out.append(tuple(emb))
    return out


def tree_factor_linear(g: ColoredGraph, U, tree: ColoredTree, profiles: dict | None = None) -> Packing:
    """Disjoint copies grown one leaf at a time by colored matchings; at least |U|/m - lambda n / d."""
    _check_colors(g, tree)
    U = as_vertex_set(g.n, U)
    thr = color_threshold(g, tree.colors(), profiles)
    m = tree.m
    vacuous = len(U) < m * (m - 1) * thr
    embeddings = _linear(g, U, tree, thr)
    return Packing(tree, embeddings, len(U) / m - thr, thr, vacuous=vacuous)


def _linear(g, U: VertexSet, tree: ColoredTree, thr) -> list[tuple[int, ...]]:
    if tree.m == 1:
        return [(int(u),) for u in U.indices]
    deg = tree.degrees()
    leaf = max(x for x in range(tree.m) if deg[x] == 1)
    (attach, color), = tree.neighbors(leaf)
    sub, keep = tree.remove({leaf})
    a_sub = keep.index(attach)
    copies = _linear(g, U, sub, thr)
    # floor keeps |B| >= |A|, which the leftover argument needs
    chosen = copies[: len(U) // tree.m]
    used = {v for emb in chosen for v in emb}
    A = VertexSet(g.n, [emb[a_sub] for emb in chosen])
    B = VertexSet(g.n, [u for u in U.indices if u not in used])
    owner = {emb[a_sub]: emb for emb in chosen}
    out = []
    for a, b in greedy_colored_matching(g, A, B, color):
        base = owner[a]
        emb = [0] * tree.m
        for i_sub, old in enumerate(keep):
            emb[old] = base[i_sub]
        emb[leaf] = b
        out.append(tuple(emb))
    return out


def validate_packing(g: ColoredGraph, U, packing: Packing) -> list[str]:
    """Independent post-hoc check: returns a list of problems (empty when valid)."""
    U = as_vertex_set(g.n, U)
    problems = []
    seen: dict[int, int] = {}
    for i, emb in enumerate(packing.embeddings):
        if len(emb) != packing.tree.m:
            problems.append(f"copy {i}: wrong size")
            continue
        if len(set(emb)) != len(emb):
            problems.append(f"copy {i}: not injective")
        for v in emb:
            if v not in U:
                problems.append(f"copy {i}: vertex {v} outside U")
            if v in seen and seen[v] != i:
                problems.append(f"copy {i}: vertex {v} shared with copy {seen[v]}")
            seen[v] = i
        for u, v, c in packing.tree.edges:
            if c not in g:
                problems.append(f"copy {i}: unknown color {c!r}")
            elif not g.layer(c).adj[emb[u], emb[v]]:
                problems.append(f"copy {i}: ({emb[u]}, {emb[v]}) is not a color-{c} edge")
    return problems


def leftover_is_maximal(g: ColoredGraph, A, B, c, matching) -> bool:
    """No c-edge joins the unmatched parts of A and B."""
    A, B = as_vertex_set(g.n, A), as_vertex_set(g.n, B)
    ma = {a for a, _ in matching}
    mb = {b for _, b in matching}
    ra = [a for a in A.indices if a not in ma]
    rb = [b for b in B.indices if b not in mb]
    if not ra or not rb:
        return True
    return not g.layer(c).adj[np.ix_(ra, rb)].any()
