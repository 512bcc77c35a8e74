"""Seeded trial batches for the bound checks.

Trial ``i`` of a run with seed ``s`` draws from ``numpy.random.default_rng([s, i])``,
so any trial can be replayed on its own.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from prgeom import bounds
from prgeom.constructions import FamilySpec
from prgeom.counting import PairFunction, WalkCounter
from prgeom.graph import ColoredGraph, Graph, VertexSet
from prgeom.io import read_graph
from prgeom.spectral import spectrum


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng([int(seed), int(trial)])


@dataclass
class RunConfig:
    command: str = "verify"
    check: str = "second-counting"
    graph: str | None = None
    family: dict | None = None
    graph2: str | None = None
    usize: int | None = None
    trials: int = 1
    seed: int = 0
    k: list[int] = field(default_factory=lambda: [1, 2, 3])
    m: list[int] = field(default_factory=lambda: [4])
    variant: str = "over_n"
    adversarial: bool = False
    output: str | None = None
    format: str = "json"
    jobs: int = 1

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        data = json.loads(text)
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def load_graph(self, which: str = "graph"):
        path = getattr(self, which)
        if path:
            return read_graph(path)
        spec = self.family if which == "graph" else None
        if spec is None:
            if which == "graph2":
                return self.load_graph("graph")
            spec = {"kind": "paley", "params": {"q": 29}}
        g = FamilySpec(spec["kind"], spec.get("params", {})).build()
        return g, g.content_hash()


# ---------------------------------------------------------------- samplers

def random_subset(n: int, rng: np.random.Generator, size: int | None = None) -> VertexSet:
    size = int(rng.integers(0, n + 1)) if size is None else min(size, n)
    return VertexSet.random(n, size, rng)


def random_grid(n1: int, n2: int, rng: np.random.Generator, low: int = 0, high: int = 1) -> np.ndarray:
    """Integer grid with entries in [low, high]; a random fraction of entries is zeroed."""
    grid = rng.integers(low, high + 1, size=(n1, n2))
    keep = rng.random((n1, n2)) < rng.random()
    return np.where(keep, grid, 0)


def random_signed_pair(n1: int, n2: int, rng: np.random.Generator, denom: int = 4) -> PairFunction:
    """Values in [-1, 1] with the given denominator."""
    return PairFunction(rng.integers(-denom, denom + 1, size=(n1, n2)), denom)


# ---------------------------------------------------------------- one trial per check

def _single(g: Graph):
    if isinstance(g, ColoredGraph):
        if len(g.colors) != 1:
            raise ValueError("this check needs a single-color graph")
        return g.layers[0]
    return g


def _colored(g):
    return g if isinstance(g, ColoredGraph) else ColoredGraph.single(g)


def run_trial(check: str, cfg: RunConfig, g, g2, trial: int) -> list[bounds.BoundReport]:
    rng = trial_rng(cfg.seed, trial)
    if check == "coverage":
        return [_coverage_trial(_colored(g), cfg, rng)]
    if check == "low-degree":
        return _low_degree_trial(_colored(g), cfg, rng)
    g = _single(g)
    prof = spectrum(g)
    n = g.n
    if check == "mixing":
        f = rng.choice([-1, 1], size=n) * (rng.random(n) < rng.random())
        h = random_subset(n, rng, cfg.usize).mask.astype(np.int64)
        return [bounds.check_mixing(g, f, h, prof)]
    if check in ("weakform", "keylemma"):
        high = int(rng.integers(1, 4))
        f = PairFunction(random_grid(n, n, rng, 0, high))
        h = PairFunction(random_grid(n, n, rng, 0, high))
        if check == "weakform":
            return [bounds.check_weakform(g, f, h, prof)]
        return [bounds.check_keylemma(g, f, h, cfg.variant, prof)]
    if check == "mcs":
        return [bounds.check_mcs(PairFunction(random_grid(n, n, rng)))]
    if check == "basic1":
        return [bounds.check_basic1(*(random_signed_pair(n, n, rng) for _ in range(4)))]
    if check == "von-neumann":
        g2 = _single(g2)
        fs = [random_signed_pair(n, g2.n, rng) for _ in range(4)]
        return [bounds.check_von_neumann(g, g2, *fs, profiles=(prof, spectrum(g2)))]
    if check == "rectangle":
        g2 = _single(g2)
        S = rng.random((n, g2.n)) < (0.5 if cfg.usize is None else cfg.usize / (n * g2.n))
        return list(bounds.check_rectangle_density(g, g2, S, profiles=(prof, spectrum(g2))))
    U = random_subset(n, rng, cfg.usize)
    wc = WalkCounter(g, U)
    out: list[bounds.BoundReport] = []
    if check == "second-counting":
        for k in cfg.k:
            out += bounds.check_second_counting(g, U, k, prof, wc)
    elif check == "path-recursions":
        for k in cfg.k:
            out += bounds.check_path_recursions(g, U, k, prof, wc)
    elif check == "path-window":
        out += [bounds.check_path_window(g, U, k, prof, wc) for k in cfg.k]
    elif check == "cycle-theorem":
        out += [bounds.check_cycle_theorem(g, U, m, prof, wc) for m in cfg.m]
    else:
        raise ValueError(f"unknown check {check!r}")
    return out


def _coverage_trial(g: ColoredGraph, cfg: RunConfig, rng) -> bounds.BoundReport:
    """A random set just above max_c lambda_c n / d_c must span every color."""
    from prgeom.treefactor import color_threshold

    thr = color_threshold(g, g.colors)
    size = cfg.usize if cfg.usize is not None else math.ceil(thr) + 1
    E = random_subset(g.n, rng, size)
    idx = E.indices
    missing = [c for c in g.colors if not g.layer(c).adj[np.ix_(idx, idx)].any()]
    status = bounds.FAIL if (missing and size > thr) else (bounds.PASS if size > thr else bounds.REPORT)
    return bounds.BoundReport("coverage", len(g.colors) - len(missing), len(g.colors), relation=">=",
                              status=status, extra={"size": size, "threshold": thr, "missing": missing})


def _low_degree_trial(g: ColoredGraph, cfg: RunConfig, rng) -> list[bounds.BoundReport]:
    from prgeom.treefactor import low_degree_count

    U = random_subset(g.n, rng, cfg.usize)
    out = []
    for c in g.colors:
        for s in cfg.k:
            out.append(low_degree_count(g, U, c, s)[1])
    return out


CHECKS = ("mixing", "weakform", "keylemma", "mcs", "basic1", "von-neumann", "rectangle",
          "second-counting", "path-recursions", "path-window", "cycle-theorem", "coverage", "low-degree")


# ---------------------------------------------------------------- batches

_WORKER: dict = {}


def _init_worker(cfg_json: str) -> None:
    cfg = RunConfig.from_json(cfg_json)
    g, h = cfg.load_graph("graph")
    g2, h2 = cfg.load_graph("graph2")
    _WORKER.update(cfg=cfg, g=g, g2=g2, hash=h, hash2=h2)


def _rows_for(trial: int) -> list[dict]:
    cfg, g, g2 = _WORKER["cfg"], _WORKER["g"], _WORKER["g2"]
    reports = run_trial(cfg.check, cfg, g, g2, trial)
    return [_row(cfg, trial, rep, g, _WORKER["hash"]) for rep in reports]


def _profile_summary(g) -> dict | None:
    if isinstance(g, ColoredGraph):
        return None
    return spectrum(g).to_dict(with_spectrum=False)


def _row(cfg: RunConfig, trial: int, rep: bounds.BoundReport, g, graph_hash: str) -> dict:
    row = {"trial": trial, "check": cfg.check, "seed": cfg.seed, "graph_hash": graph_hash,
           "profile": _profile_summary(g)}
    row.update(rep.to_dict())
    return row


def run_batch(cfg: RunConfig) -> list[dict]:
    """All report rows for a config, ordered by trial index."""
    if cfg.check not in CHECKS:
        raise ValueError(f"unknown check {cfg.check!r}; choose from {', '.join(CHECKS)}")
    if cfg.adversarial:
        if cfg.check != "keylemma":
            raise ValueError("--adversarial applies to the keylemma check only")
        g, h = cfg.load_graph("graph")
        g = _single(g)
        ce = bounds.keylemma_counterexample(g)
        rep = ce["reports"][cfg.variant]
        rep.extra.update({k: v for k, v in ce.items() if k != "reports"})
        return [_row(cfg, 0, rep, g, h)]
    payload = cfg.to_json()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs, initializer=_init_worker, initargs=(payload,)) as pool:
            chunks = list(pool.map(_rows_for, range(cfg.trials)))
    else:
        _init_worker(payload)
        chunks = [_rows_for(t) for t in range(cfg.trials)]
    return [row for chunk in chunks for row in chunk]


def exit_code(rows: list[dict]) -> int:
    return 1 if any(r["status"] == bounds.FAIL for r in rows) else 0


def write_rows(rows: list[dict], path: str | None, fmt: str) -> str:
    from prgeom.io import dumps_json, rows_to_csv

    text = dumps_json(rows) if fmt == "json" else rows_to_csv(rows)
    if path:
        Path(path).write_text(text)
    return text
