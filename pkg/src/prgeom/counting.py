"""Exact integer counts: walks, closed walks, pinned walks, colored walks,
nondegenerate cycles, and the rectangle functionals N, M.

All counts are walk counts (tuples, repeats allowed) unless the name says
otherwise. Integer products go through `exact_matmul`, which picks float64
BLAS, int64 or Python ints depending on a worst-case magnitude bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from prgeom import kernels
from prgeom.graph import ColoredGraph, Graph, VertexSet, as_vertex_set

_F64_EXACT = 2**53
_I64_SAFE = 2**62

MAX_SIMPLE_CYCLE = 8


def _maxabs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a.flat)
    return int(np.abs(a).max())


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product that never wraps.

    Returns int64 when every entry provably fits, otherwise an object array of
    Python ints.
    """
    inner = a.shape[-1] if a.ndim else 1
    bound = _maxabs(a) * _maxabs(b) * max(inner, 1)
    if bound < _F64_EXACT and a.dtype != object and b.dtype != object:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _I64_SAFE and a.dtype != object and b.dtype != object:
        return a.astype(np.int64) @ b.astype(np.int64)
    return np.dot(a.astype(object), b.astype(object))


def exact_sum(a: np.ndarray) -> int:
    if a.dtype == object:
        return int(sum(int(x) for x in a.flat))
    if _maxabs(a) * max(a.size, 1) < _I64_SAFE:
        return int(a.astype(np.int64).sum())
    return int(sum(int(x) for x in a.flat))


def exact_trace(a: np.ndarray) -> int:
    return exact_sum(np.diagonal(a).copy())


class WalkCounter:
    """Powers of the adjacency matrix induced on U, computed lazily and kept.

    ``power(k)[i, j]`` is the number of length-k walks from ``U[i]`` to ``U[j]``
    using only vertices of U.
    """

    def __init__(self, g: Graph, U=None):
        self.graph = g
        self.U = as_vertex_set(g.n, U)
        idx = self.U.indices
        self.adj = g.adj[np.ix_(idx, idx)].astype(np.int64)
        self._powers = [np.eye(len(idx), dtype=np.int64), self.adj]

    def power(self, k: int) -> np.ndarray:
        if k < 0:
            raise ValueError("walk length must be non-negative")
        while len(self._powers) <= k:
            self._powers.append(exact_matmul(self._powers[-1], self.adj))
        return self._powers[k]

    def walks(self, k: int) -> int:
        """P_k(U): (k+1)-tuples in U with consecutive vertices adjacent."""
        return exact_sum(self.power(k))

    def closed(self, m: int) -> int:
        """C_m(U) = trace of the m-th power; C_0 = |U|."""
        return exact_trace(self.power(m))

    def pinned(self, k: int) -> np.ndarray:
        return self.power(k)


def walk_count(g: Graph, U, k: int) -> int:
    if k < 0:
        raise ValueError("k must be >= 0")
    return WalkCounter(g, U).walks(k)


def closed_walk_count(g: Graph, U, m: int) -> int:
    """Labeled, possibly degenerate m-cycles with all vertices in U."""
    if m < 3:
        raise ValueError("closed walks are counted for m >= 3")
    return WalkCounter(g, U).closed(m)


def pinned_walk_counts(g: Graph, U, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Matrix p_k(x, y) over x, y in U, plus the vertex labels of its rows."""
    if k < 1:
        raise ValueError("k must be >= 1")
    wc = WalkCounter(g, U)
    return wc.pinned(k), wc.U.indices.copy()


def colored_walk_count(g: ColoredGraph, U, pattern, closed: bool = False) -> int:
    """Tuples (u_0, ..., u_k) in U whose i-th step is an edge of color pattern[i].

    With ``closed=True`` the tuple has len(pattern) vertices and the step from the
    last vertex back to u_0 carries the last color.
    """
    pattern = list(pattern)
    if not pattern:
        raise ValueError("pattern must be nonempty")
    U = as_vertex_set(g.n, U)
    idx = U.indices
    mats = [g.layer(c).adj[np.ix_(idx, idx)].astype(np.int64) for c in pattern]
    prod = mats[0]
    for m in mats[1:]:
        prod = exact_matmul(prod, m)
    return exact_trace(prod) if closed else exact_sum(prod)


def nondegenerate_cycle_count(g: Graph, U, m: int) -> int:
    """Labeled m-tuples of distinct vertices of U forming a cycle (m in [3, 8])."""
    if not 3 <= m <= MAX_SIMPLE_CYCLE:
        raise ValueError(f"m must lie in [3, {MAX_SIMPLE_CYCLE}]")
    U = as_vertex_set(g.n, U)
    sub = g.adj[np.ix_(U.indices, U.indices)].copy()
    np.fill_diagonal(sub, False)
    return int(kernels.count_simple_cycles(sub, m))


class PairFunction:
    """A function on V1 x V2 stored as an integer grid over a common denominator.

    ``value(a, b) = values[a, b] / denom``. Integer and boolean grids have
    ``denom = 1``; float grids are accepted but lose exactness (``exact`` is False).
    """

    def __init__(self, values, denom: int = 1):
        arr = np.asarray(values)
        if arr.ndim != 2:
            raise ValueError("pair function needs a 2-d grid")
        if arr.dtype == bool:
            arr = arr.astype(np.int64)
        self.exact = arr.dtype.kind in "iu" or arr.dtype == object
        if self.exact and arr.dtype != object:
            arr = arr.astype(np.int64)
        elif not self.exact:
            arr = arr.astype(np.float64)
        if denom < 1:
            raise ValueError("denominator must be positive")
        arr.setflags(write=False)
        self.values = arr
        self.denom = int(denom)

    @classmethod
    def indicator(cls, n1: int, n2: int, S) -> PairFunction:
        """Indicator of S, given as a boolean grid or a `VertexSet` over row-major pairs."""
        if isinstance(S, VertexSet):
            return cls(S.mask.reshape(n1, n2))
        grid = np.zeros((n1, n2), dtype=bool)
        S = np.asarray(S)
        if S.dtype == bool:
            grid = S.reshape(n1, n2)
        elif S.size:
            grid[S[:, 0], S[:, 1]] = True
        return cls(grid)

    @classmethod
    def from_fractions(cls, grid) -> PairFunction:
        fr = [[Fraction(x) for x in row] for row in grid]
        den = math.lcm(*[x.denominator for row in fr for x in row]) if fr and fr[0] else 1
        return cls(np.array([[int(x * den) for x in row] for row in fr], dtype=object), den)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def nonnegative(self) -> bool:
        return bool((self.values >= 0).all())

    def _scalar(self, total):
        return Fraction(int(total), self.denom) if self.exact else float(total) / self.denom

    @cached_property
    def row_marginal(self) -> np.ndarray:
        """F(x) = sum_y f(x, y), in units of 1/denom."""
        return self.values.sum(axis=1)

    @cached_property
    def col_marginal(self) -> np.ndarray:
        """F'(y) = sum_x f(x, y), in units of 1/denom."""
        return self.values.sum(axis=0)

    def check_marginals(self) -> bool:
        return (np.array_equal(self.row_marginal, self.values.sum(axis=1))
                and np.array_equal(self.col_marginal, self.values.sum(axis=0)))

    def total(self):
        """sum of all values (the l1 norm when non-negative)."""
        return self._scalar(exact_sum(self.values) if self.exact else self.values.sum())

    def sq_norm(self):
        """||f||_2^2."""
        v = self.values
        if self.exact:
            return Fraction(exact_sum(_square(v)), self.denom**2)
        return float((v * v).sum()) / self.denom**2

    def marginal_sq_norms(self) -> tuple:
        """(||F||_2^2, ||F'||_2^2)."""
        out = []
        for marg in (self.row_marginal, self.col_marginal):
            if self.exact:
                out.append(Fraction(exact_sum(_square(np.asarray(marg))), self.denom**2))
            else:
                out.append(float((marg * marg).sum()) / self.denom**2)
        return tuple(out)

    def float_values(self) -> np.ndarray:
        return self.values.astype(np.float64) / self.denom


def _square(v: np.ndarray) -> np.ndarray:
    if v.dtype != object and _maxabs(v) ** 2 < _I64_SAFE:
        return v.astype(np.int64) ** 2
    return v.astype(object) ** 2


def _as_pair(f, shape=None) -> PairFunction:
    pf = f if isinstance(f, PairFunction) else PairFunction(f)
    if shape is not None and pf.shape != shape:
        raise ValueError(f"pair function has shape {pf.shape}, expected {shape}")
    return pf


def _common(fs: list[PairFunction]):
    shape = fs[0].shape
    for f in fs:
        if f.shape != shape:
            raise ValueError(f"dimension mismatch: {f.shape} vs {shape}")
    exact = all(f.exact for f in fs)
    return shape, exact


def _mul(a, b):
    return exact_matmul(a, b) if (a.dtype != np.float64 and b.dtype != np.float64) else a @ b


def _hadamard(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.dtype == np.float64 or b.dtype == np.float64:
        return a * b
    if _maxabs(a) * _maxabs(b) < _I64_SAFE and a.dtype != object and b.dtype != object:
        return a.astype(np.int64) * b.astype(np.int64)
    return a.astype(object) * b.astype(object)


def rect_M_sum(f1, f2, f3, f4):
    """sum over a, b in V1 and c, d in V2 of f1(a,c) f2(a,d) f3(b,c) f4(b,d), in raw units."""
    fs = [_as_pair(f) for f in (f1, f2, f3, f4)]
    _common(fs)
    v = [f.values for f in fs]
    left = _mul(v[0], v[2].T)   # [a, b] = sum_c f1(a,c) f3(b,c)
    right = _mul(v[1], v[3].T)  # [a, b] = sum_d f2(a,d) f4(b,d)
    prod = _hadamard(left, right)
    return exact_sum(prod) if prod.dtype != np.float64 else float(prod.sum())


def rect_M(f1, f2, f3, f4):
    """Average of f1(a,c) f2(a,d) f3(b,c) f4(b,d) over all a, b in V1 and c, d in V2.

    Exact `Fraction` for integer-valued inputs.
    """
    fs = [_as_pair(f) for f in (f1, f2, f3, f4)]
    (n1, n2), exact = _common(fs)
    raw = rect_M_sum(*fs)
    den = math.prod(f.denom for f in fs) * n1 * n1 * n2 * n2
    return Fraction(raw, den) if exact else raw / den


def box_norm(f) -> float:
    """M(f, f, f, f) ** (1/4)."""
    m = rect_M(f, f, f, f)
    return float(max(m, 0)) ** 0.25


def rect_N_sum(g1: Graph, g2: Graph, f1, f2, f3, f4):
    """sum over ordered edges (a,b) of G1 and (c,d) of G2 of f1(a,c) f2(a,d) f3(b,c) f4(b,d)."""
    fs = [_as_pair(f, (g1.n, g2.n)) for f in (f1, f2, f3, f4)]
    _, exact = _common(fs)
    v = [f.values for f in fs]
    a2 = g2.matrix(np.int64) if exact else g2.matrix(np.float64)
    total = 0 if exact else 0.0
    for a in range(g1.n):
        nb = g1.neighbors(a)
        if nb.size == 0:
            continue
        # rows b in N(a): u_b = f1[a] * f3[b], w_b = f2[a] * f4[b]; sum_b u_b^T A2 w_b
        u = _hadamard(v[2][nb], v[0][a][None, :])
        w = _hadamard(v[3][nb], v[1][a][None, :])
        aw = _mul(w, a2)
        prod = _hadamard(u, aw)
        total += exact_sum(prod) if exact else float(prod.sum())
    return total


def rect_N(g1: Graph, g2: Graph, f1, f2, f3, f4):
    """Edge-constrained rectangle average, normalized by n1 d1 n2 d2."""
    fs = [_as_pair(f, (g1.n, g2.n)) for f in (f1, f2, f3, f4)]
    _, exact = _common(fs)
    d1, d2 = _avg_degree(g1), _avg_degree(g2)
    raw = rect_N_sum(g1, g2, *fs)
    scale = math.prod(f.denom for f in fs)
    norm = g1.n * d1 * g2.n * d2
    if norm == 0:
        return Fraction(0) if exact else 0.0
    return Fraction(raw, scale * norm) if exact else raw / (scale * norm)


def _avg_degree(g: Graph) -> int:
    return g.degree if g.is_regular() else int(g.degrees.max())


def rectangle_count(g1: Graph, g2: Graph, S) -> int:
    """Unnormalized N for an indicator S: sum over (u1,u2) in E1 of t^T A2 t, t = S[u1] & S[u2]."""
    grid = PairFunction.indicator(g1.n, g2.n, S).values.astype(bool)
    a2 = g2.matrix(np.float64)
    total = 0
    for u1, u2 in zip(*np.nonzero(g1.adj)):
        t = (grid[u1] & grid[u2]).astype(np.float64)
        total += int(round(float(t @ a2 @ t)))
    return total


@dataclass
class CountReport:
    """Exact counts on one (graph, U) together with the pseudo-random main terms."""

    n: int
    d: int
    u_size: int
    walks: dict[int, int] = field(default_factory=dict)
    cycles: dict[int, int] = field(default_factory=dict)
    simple_cycles: dict[int, int] = field(default_factory=dict)
    walk_main: dict[int, float] = field(default_factory=dict)
    cycle_main: dict[int, float] = field(default_factory=dict)
    cycle_error: dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "d": self.d, "u_size": self.u_size,
            "P": {str(k): v for k, v in self.walks.items()},
            "C": {str(k): v for k, v in self.cycles.items()},
            "C_simple": {str(k): v for k, v in self.simple_cycles.items()},
            "P_main": {str(k): v for k, v in self.walk_main.items()},
            "C_main": {str(k): v for k, v in self.cycle_main.items()},
            "C_error_term": {str(k): v for k, v in self.cycle_error.items()},
        }


def count_report(g: Graph, U, ks=(), ms=(), simple_ms=(), lam: float | None = None) -> CountReport:
    U = as_vertex_set(g.n, U)
    wc = WalkCounter(g, U)
    d = _avg_degree(g)
    n, u = g.n, len(U)
    rep = CountReport(n=n, d=d, u_size=u)
    for k in ks:
        rep.walks[k] = wc.walks(k)
        rep.walk_main[k] = u ** (k + 1) * (d / n) ** k
    for m in ms:
        rep.cycles[m] = wc.closed(m)
        rep.cycle_main[m] = (u * d / n) ** m
        if lam is not None:
            rep.cycle_error[m] = lam * (u * d / n) ** (m - 1) + lam ** (m - 2) * u * u * d / n
    for m in simple_ms:
        rep.simple_cycles[m] = nondegenerate_cycle_count(g, U, m)
    return rep
