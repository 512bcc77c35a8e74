"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are timed on the same inputs and their outputs are cross-checked.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from prgeom.constructions import distance_graph, paley_graph, random_regular_graph
from prgeom.graph import Graph
from prgeom.kernels import available_backends


def _best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not built; only timing the Python fallback")

    eig_cases = [
        ("paley 29", paley_graph(29)),
        ("paley 101", paley_graph(101)),
        ("distance 13^2", distance_graph(13, 2, 1)),
    ]
    cycle_cases = [
        ("petersen m=6", Graph.petersen(), 6),
        ("rr(40,4) m=7", random_regular_graph(40, 4, 3), 7),
        ("paley 29 m=5", paley_graph(29), 5),
    ]

    print(f"{'kernel':<28}" + "".join(f"{name:>12}" for name in backends) + f"{'speedup':>10}")
    for label, g in eig_cases:
        a = g.matrix(np.float64)
        times, outs = {}, {}
        for name, mod in backends.items():
            times[name], outs[name] = _best_of(lambda m=mod: m.jacobi_eigh(a), args.repeat)
        ref = np.linalg.eigvalsh(a)
        for name, (w, _, _) in outs.items():
            err = np.abs(np.sort(w) - ref).max()
            assert err < 1e-8, f"{name} eigenvalues off by {err}"
        _row(f"jacobi {label}", times)

    for label, g, m in cycle_cases:
        adj = np.ascontiguousarray(g.adj, dtype=np.uint8)
        times, outs = {}, {}
        for name, mod in backends.items():
            times[name], outs[name] = _best_of(lambda mod=mod: mod.count_simple_cycles(adj, m), 1)
        assert len(set(outs.values())) == 1, f"backends disagree: {outs}"
        _row(f"cycles {label}", times)


def _row(label: str, times: dict) -> None:
    cells = "".join(f"{t * 1e3:>10.1f}ms" for t in times.values())
    speed = ""
    if {"cython", "python"} <= times.keys():
        speed = f"{times['python'] / times['cython']:>9.1f}x"
    print(f"{label:<28}{cells}{speed}")


if __name__ == "__main__":
    main()
