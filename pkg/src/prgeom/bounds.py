"""Machine checks of the pseudo-random counting inequalities.

Exact-constant inequalities produce ``pass``/``fail``. Asymptotic estimates whose
constants are unspecified are ``report-only`` and carry a ``ratio`` instead.
Exact counts are compared with real bound sides at relative tolerance `RTOL`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from prgeom.counting import (
    PairFunction,
    WalkCounter,
    _square,
    exact_matmul,
    exact_sum,
    rect_M,
    rect_N,
    rectangle_count,
)
from prgeom.graph import Graph, as_vertex_set
from prgeom.spectral import SpectralProfile, eigh, spectrum

RTOL = 1e-9

PASS, FAIL, REPORT = "pass", "fail", "report-only"


@dataclass
class BoundReport:
    name: str
    lhs: object
    rhs: float | None
    main_term: object = None
    error_terms: dict = field(default_factory=dict)
    ratio: float | None = None
    status: str = REPORT
    relation: str = "<="
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    @property
    def exact(self) -> bool:
        return self.status in (PASS, FAIL)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "main_term": _num(self.main_term),
            "error_terms": {k: _num(v) for k, v in self.error_terms.items()},
            "ratio": self.ratio,
            "status": self.status,
            "relation": self.relation,
            **({"extra": self.extra} if self.extra else {}),
        }


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    return x


def leq(lhs, rhs: float, *scales) -> bool:
    """lhs <= rhs up to RTOL relative to the largest magnitude involved."""
    scale = max([1.0, abs(float(rhs))] + [abs(float(s)) for s in scales])
    return float(lhs) <= float(rhs) + RTOL * scale


def _profile(g: Graph, profile: SpectralProfile | None) -> SpectralProfile:
    return profile if profile is not None else spectrum(g)


def _exact_status(ok: bool, profile: SpectralProfile) -> str:
    if not profile.regular:
        return REPORT
    return PASS if ok else FAIL


def _sqrt(x) -> float:
    return math.sqrt(float(x))


# ---------------------------------------------------------------- expander mixing

def check_mixing(g: Graph, f, gv, profile: SpectralProfile | None = None) -> BoundReport:
    """|<f, A g> - d |V| E f E g| <= lambda ||f|| ||g|| for integer vertex functions."""
    prof = _profile(g, profile)
    f = np.asarray(f, dtype=np.int64)
    gv = np.asarray(gv, dtype=np.int64)
    n, d = g.n, prof.d
    inner = exact_sum(f * exact_matmul(g.matrix(np.int64), gv[:, None])[:, 0])
    main = Fraction(d * exact_sum(f) * exact_sum(gv), n)
    lhs = abs(inner - main)
    rhs = prof.lam * _sqrt(exact_sum(f * f)) * _sqrt(exact_sum(gv * gv))
    return BoundReport("expander_mixing", lhs, rhs, main_term=main,
                       status=_exact_status(leq(lhs, rhs, main), prof))


# ---------------------------------------------------------------- tensor forms

def _tensor_form(g: Graph, f: PairFunction, gf: PairFunction, d: int):
    """(sum over (x,z), (y,w) in E of f(x,y) g(z,w), and (d^2/n^2) sum f sum g)."""
    n = g.n
    if f.shape != (n, n) or gf.shape != (n, n):
        raise ValueError("pair functions must live on V x V")
    if f.exact and gf.exact:
        a = g.matrix(np.int64)
        agA = exact_matmul(exact_matmul(a, gf.values), a)
        vals = f.values
        prod = vals.astype(object) * agA.astype(object) if (vals.dtype == object or agA.dtype == object) else None
        if prod is None:
            bound = int(np.abs(vals).max(initial=0)) * int(np.abs(agA).max(initial=0)) * vals.size
            prod = vals * agA if bound < 2**62 else vals.astype(object) * agA.astype(object)
        total = Fraction(exact_sum(prod), f.denom * gf.denom)
        main = Fraction(d * d, n * n) * f.total() * gf.total()
        return total, main
    a = g.matrix(np.float64)
    total = float((f.float_values() * (a @ gf.float_values() @ a)).sum())
    main = d * d / (n * n) * float(f.total()) * float(gf.total())
    return total, main


def check_weakform(g: Graph, f, gf, profile: SpectralProfile | None = None) -> BoundReport:
    """Expander mixing on G x G: deviation <= d lambda ||f||_2 ||g||_2."""
    prof = _profile(g, profile)
    f, gf = _pf(f), _pf(gf)
    total, main = _tensor_form(g, f, gf, prof.d)
    lhs = abs(total - main)
    rhs = prof.d * prof.lam * _sqrt(f.sq_norm()) * _sqrt(gf.sq_norm())
    return BoundReport("weakform", lhs, rhs, main_term=main,
                       status=_exact_status(leq(lhs, rhs, main), prof))


KEYLEMMA_VARIANTS = {"over_n": 1, "over_n2": 2}


def check_keylemma(g: Graph, f, gf, variant: str = "over_n",
                   profile: SpectralProfile | None = None) -> BoundReport:
    """First counting lemma for G x G with marginal cross terms.

    ``over_n`` uses the cross-term factor d lambda / n; ``over_n2`` the factor
    d lambda / n^2, which the shifted-eigenvector construction refutes.
    """
    if variant not in KEYLEMMA_VARIANTS:
        raise ValueError(f"variant must be one of {sorted(KEYLEMMA_VARIANTS)}")
    prof = _profile(g, profile)
    f, gf = _pf(f), _pf(gf)
    if not (f.nonnegative and gf.nonnegative):
        raise ValueError("the first counting lemma needs non-negative functions")
    n, d, lam = g.n, prof.d, prof.lam
    total, main = _tensor_form(g, f, gf, d)
    lhs = abs(total - main)
    F2, F2p = f.marginal_sq_norms()
    G2, G2p = gf.marginal_sq_norms()
    bulk = lam * lam * _sqrt(f.sq_norm()) * _sqrt(gf.sq_norm())
    cross = d * lam / n ** KEYLEMMA_VARIANTS[variant] * (_sqrt(F2) * _sqrt(G2) + _sqrt(F2p) * _sqrt(G2p))
    rhs = bulk + cross
    return BoundReport(f"keylemma[{variant}]", lhs, rhs, main_term=main,
                       error_terms={"bulk": bulk, "cross": cross},
                       status=_exact_status(leq(lhs, rhs, main), prof))


def _pf(f) -> PairFunction:
    return f if isinstance(f, PairFunction) else PairFunction(f)


def flattest_eigenvector(g: Graph, profile: SpectralProfile | None = None) -> tuple[np.ndarray, float]:
    """A vector h with A h = mu h, |mu| = lambda, chosen to keep n max h^2 / ||h||^2 small.

    Candidates are the solver's eigenbasis of that eigenvalue and the projections
    of the Fourier probes cos(2 pi a x / n), sin(2 pi a x / n) onto it.
    """
    prof = _profile(g, profile)
    w, v = eigh(g)
    order = np.argsort(-w)
    w, v = w[order], v[:, order]
    rest = np.arange(1, g.n)
    target = rest[np.argmax(np.abs(w[rest]))]
    mu = float(w[target])
    basis = v[:, np.abs(w - mu) < 1e-6 * max(prof.d, 1)]
    n = g.n
    x = np.arange(n)
    probes = [basis[:, j] for j in range(basis.shape[1])]
    for a in range(1, n):
        for wave in (np.cos(2 * np.pi * a * x / n), np.sin(2 * np.pi * a * x / n)):
            probes.append(basis @ (basis.T @ wave))
    best, best_r = None, math.inf
    for h in probes:
        nrm = float(h @ h)
        if nrm < 1e-12:
            continue
        r = n * float((h * h).max()) / nrm
        if r < best_r - 1e-12:
            best, best_r = h / math.sqrt(nrm), r
    return best, mu


def keylemma_counterexample(g: Graph, profile: SpectralProfile | None = None) -> dict:
    """f(x, y) = h(y) + max|h| for the flattest extremal eigenvector h; both variants checked."""
    prof = _profile(g, profile)
    h, mu = flattest_eigenvector(g, prof)
    s = float(np.abs(h).max())
    f = PairFunction(np.tile(h + s, (g.n, 1)))
    reports = {v: check_keylemma(g, f, f, v, prof) for v in KEYLEMMA_VARIANTS}
    return {
        "eigenvalue": mu,
        "shift": s,
        "flatness": g.n * s * s,
        "predicted_deviation": prof.d * abs(mu) * g.n,
        "reports": reports,
    }


# ---------------------------------------------------------------- rectangle functionals

def check_mcs(S: PairFunction) -> BoundReport:
    """M(S, S, S, S) >= (|S| / (n1 n2))^4, exactly."""
    S = _pf(S)
    n1, n2 = S.shape
    m = rect_M(S, S, S, S)
    density = S.total() / (n1 * n2)
    rhs = density**4
    return BoundReport("mcs", m, rhs, relation=">=", status=PASS if m >= rhs else FAIL)


def check_basic1(f1, f2, f3, f4) -> BoundReport:
    """M(f1, f2, f3, f4) <= min_i ||f_i||_box for [-1, 1]-valued exact inputs.

    Decided exactly: for M > 0 the claim is M^4 <= min_i M(f_i, f_i, f_i, f_i).
    """
    fs = [_pf(f) for f in (f1, f2, f3, f4)]
    for f in fs:
        if not f.exact:
            raise ValueError("basic1 check needs exact (integer/rational) inputs")
        if (np.abs(f.values.astype(object)) > f.denom).any():
            raise ValueError("functions must take values in [-1, 1]")
    m = rect_M(*fs)
    fourth = [rect_M(f, f, f, f) for f in fs]
    ok = m <= 0 or m**4 <= min(fourth)
    rhs = min(float(x) for x in fourth) ** 0.25
    return BoundReport("basic1", m, rhs, status=PASS if ok else FAIL,
                       extra={"box_norms": [float(x) ** 0.25 for x in fourth]})


def check_von_neumann(g1: Graph, g2: Graph, f1, f2, f3, f4, profiles=None) -> BoundReport:
    """|N| - min_j ||f_j||_box measured in units of (lambda/d)^(1/4)."""
    p1, p2 = profiles or (spectrum(g1), spectrum(g2))
    fs = [_pf(f) for f in (f1, f2, f3, f4)]
    N = rect_N(g1, g2, *fs)
    boxes = [float(max(rect_M(f, f, f, f), 0)) ** 0.25 for f in fs]
    lam_d = max(p1.lam / p1.d, p2.lam / p2.d)
    excess = abs(float(N)) - min(boxes)
    unit = lam_d**0.25
    return BoundReport("von_neumann", abs(N), min(boxes), error_terms={"(lambda/d)^(1/4)": unit},
                       ratio=excess / unit if unit > 0 else None)


def check_rectangle_density(g1: Graph, g2: Graph, S, delta_prime: float | None = None,
                            profiles=None) -> tuple[BoundReport, BoundReport]:
    """Rectangle count N(S,S,S,S) against (|S|/(n1 n2))^4, plus the exact MCS inequality."""
    p1, p2 = profiles or (spectrum(g1), spectrum(g2))
    pf = PairFunction.indicator(g1.n, g2.n, S)
    n1, n2 = g1.n, g2.n
    raw = rectangle_count(g1, g2, pf.values.astype(bool))
    norm = n1 * p1.d * n2 * p2.d
    N = Fraction(raw, norm) if norm else Fraction(0)
    density = pf.total() / (n1 * n2)
    main = density**4
    extra = {"count": raw, "density": float(density), "lambda_over_d": max(p1.lam / p1.d, p2.lam / p2.d)}
    if delta_prime is not None:
        extra["delta_prime"] = delta_prime
        extra["exceeds_delta_prime"] = raw > delta_prime**4 * norm
    dens = BoundReport("rectangle_density", N, None, main_term=main,
                       error_terms={"slack": float(main - N)},
                       ratio=float(N / main) if main else None, extra=extra)
    return dens, check_mcs(pf)


# ---------------------------------------------------------------- cycles and paths

def _counter(g: Graph, U, counter: WalkCounter | None) -> WalkCounter:
    if counter is not None:
        return counter
    return WalkCounter(g, as_vertex_set(g.n, U))


def check_second_counting(g: Graph, U, k: int, profile: SpectralProfile | None = None,
                          counter: WalkCounter | None = None) -> tuple[BoundReport, BoundReport]:
    """Odd and even closed-walk estimates via pinned walks, C_0(U) = |U|."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prof = _profile(g, profile)
    wc = _counter(g, U, counter)
    n, d, lam = g.n, prof.d, prof.lam
    c_odd, c_even, c_prev = wc.closed(2 * k + 1), wc.closed(2 * k), wc.closed(2 * k - 2)

    main_odd = Fraction(d * wc.walks(2 * k), n)
    lhs_odd = abs(c_odd - main_odd)
    rhs_odd = lam * c_even
    odd = BoundReport(f"second_counting_odd[k={k}]", lhs_odd, rhs_odd, main_term=main_odd,
                      status=_exact_status(leq(lhs_odd, rhs_odd, main_odd), prof))

    main_even = Fraction(d * wc.walks(2 * k - 1), n)
    lhs_even = abs(c_even - main_even)
    rhs_even = lam * math.sqrt(float(c_even) * float(c_prev))
    # per-vertex form before the final Cauchy-Schwarz
    pk, pk1 = wc.power(k), wc.power(k - 1)
    row_k = np.array([float(exact_sum(_square(r))) for r in pk])
    row_k1 = np.array([float(exact_sum(_square(r))) for r in pk1])
    sharp = lam * float(np.sqrt(row_k * row_k1).sum())
    even = BoundReport(f"second_counting_even[k={k}]", lhs_even, rhs_even, main_term=main_even,
                       status=_exact_status(leq(lhs_even, rhs_even, main_even), prof),
                       extra={"pinned_rhs": sharp, "pinned_pass": leq(lhs_even, sharp, main_even)})
    return odd, even


def check_path_recursions(g: Graph, U, k: int, profile: SpectralProfile | None = None,
                          counter: WalkCounter | None = None) -> tuple[BoundReport, BoundReport]:
    """|P_{2k+1} - d P_k^2 / n| <= lambda P_{2k} and
    |P_{2k} - d P_k P_{k-1} / n| <= lambda sqrt(P_{2k} P_{2k-2})."""
    if k < 1:
        raise ValueError("k must be >= 1")
    prof = _profile(g, profile)
    wc = _counter(g, U, counter)
    n, d, lam = g.n, prof.d, prof.lam
    pk, pk1 = wc.walks(k), wc.walks(k - 1)
    main_odd = Fraction(d * pk * pk, n)
    lhs_odd = abs(wc.walks(2 * k + 1) - main_odd)
    rhs_odd = lam * wc.walks(2 * k)
    main_even = Fraction(d * pk * pk1, n)
    lhs_even = abs(wc.walks(2 * k) - main_even)
    rhs_even = lam * math.sqrt(float(wc.walks(2 * k)) * float(wc.walks(2 * k - 2)))
    return (
        BoundReport(f"path_odd[k={k}]", lhs_odd, rhs_odd, main_term=main_odd,
                    status=_exact_status(leq(lhs_odd, rhs_odd, main_odd), prof)),
        BoundReport(f"path_even[k={k}]", lhs_even, rhs_even, main_term=main_even,
                    status=_exact_status(leq(lhs_even, rhs_even, main_even), prof)),
    )


def _vacuous(prof: SpectralProfile, u: int) -> bool:
    return prof.d == 0 or prof.lam * prof.n / prof.d >= u


def check_path_window(g: Graph, U, k: int, profile: SpectralProfile | None = None,
                      counter: WalkCounter | None = None) -> BoundReport:
    """Relative deviation of P_k from |U|^{k+1} (d/n)^k, in units of lambda n / (d |U|)."""
    prof = _profile(g, profile)
    wc = _counter(g, U, counter)
    n, d, u = g.n, prof.d, len(wc.U)
    pk = wc.walks(k)
    main = Fraction(u ** (k + 1) * d**k, n**k)
    vac = _vacuous(prof, u)
    report = BoundReport(f"path_window[k={k}]", pk, None, main_term=main, extra={"vacuous": vac})
    if u == 0 or d == 0:
        report.ratio = 0.0 if pk == 0 else None
        return report
    rel = abs(pk / main - 1)
    unit = prof.lam * n / (d * u)
    report.error_terms = {"lambda_n_over_d_U": unit}
    if not vac:
        report.ratio = float(rel) / unit if unit > 0 else (0.0 if rel == 0 else math.inf)
    report.extra["relative_deviation"] = float(rel)
    return report


def check_cycle_theorem(g: Graph, U, m: int, profile: SpectralProfile | None = None,
                        counter: WalkCounter | None = None) -> BoundReport:
    """|C_m - (|U| d / n)^m| over lambda (|U| d/n)^{m-1} + lambda^{m-2} |U|^2 d / n."""
    if m < 3:
        raise ValueError("m must be >= 3")
    prof = _profile(g, profile)
    wc = _counter(g, U, counter)
    n, d, lam, u = g.n, prof.d, prof.lam, len(wc.U)
    cm = wc.closed(m)
    main = Fraction(u**m * d**m, n**m)
    dev = abs(cm - main)
    t1 = lam * (u * d / n) ** (m - 1)
    t2 = lam ** (m - 2) * u * u * d / n
    err = t1 + t2
    vac = _vacuous(prof, u)
    ratio = 0.0 if dev == 0 else (float(dev) / err if err > 0 else math.inf)
    return BoundReport(f"cycle_theorem[m={m}]", cm, err, main_term=main,
                       error_terms={"lambda_leading": t1, "lambda_power": t2},
                       ratio=None if (vac and dev != 0) else ratio, extra={"vacuous": vac})


# ---------------------------------------------------------------- trees

def stringiness(tree) -> int:
    """(d_1 + 1) * prod_{i >= 2} d_i over the nonincreasing degree sequence of a tree."""
    n, edges = _tree_shape(tree)
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    deg.sort(reverse=True)
    return (deg[0] + 1) * math.prod(deg[1:])


def _tree_shape(tree) -> tuple[int, list[tuple[int, int]]]:
    if isinstance(tree, Graph):
        n, edges = tree.n, [(u, v) for u, v in tree.edges()]
    elif hasattr(tree, "edges") and hasattr(tree, "m"):
        n, edges = tree.m, [(u, v) for u, v, *_ in tree.edges]
    else:
        edges = [(int(e[0]), int(e[1])) for e in tree]
        n = 1 + max((max(e) for e in edges), default=0)
    if n < 1 or len(edges) != n - 1:
        raise ValueError("not a tree: need exactly n - 1 edges")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError("not a tree: contains a cycle")
        parent[ru] = rv
    return n, edges
