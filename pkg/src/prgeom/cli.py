"""Command-line entry point: ``prgeom build|spectrum|count|verify|treefactor|report``.

Exit codes: 0 success, 1 a verification or validation failure, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from prgeom import harness
from prgeom.constructions import FamilySpec
from prgeom.counting import count_report
from prgeom.graph import ColoredGraph, VertexSet
from prgeom.io import FormatError, dumps_json, read_graph, rows_to_csv, write_graph
from prgeom.spectral import SpectralProfile, spectrum
from prgeom.treefactor import ColoredTree, tree_factor_linear, tree_factor_stringiness, validate_packing

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAMILY_ALIASES = {
    "distance": ("distance", ("q",), ("dim", "t")),
    "distance-colored": ("distance_colored", ("q",), ("dim",)),
    "dot": ("dot_product", ("q",), ("dim", "t", "loops")),
    "subgroup": ("subgroup_difference", ("q", "h"), ()),
    "paley": ("paley", ("q",), ()),
    "random": ("random_regular", ("n", "d"), ("seed",)),
}


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str):
    try:
        return read_graph(path)
    except FileNotFoundError:
        raise UsageError(f"no such graph file: {path}") from None


def _single_layer(g):
    if isinstance(g, ColoredGraph):
        if len(g.colors) != 1:
            raise UsageError("this command needs a single-color graph")
        return g.layers[0]
    return g


# ---------------------------------------------------------------- build

def cmd_build(args) -> int:
    kind, required, optional = FAMILY_ALIASES[args.family]
    params = {}
    for key in required + optional:
        val = getattr(args, key)
        if val is None and key in required:
            raise UsageError(f"{args.family} needs --{key}")
        if val is not None:
            params["include_loops" if key == "loops" else key] = val
    g = FamilySpec(kind, params).build()
    digest = write_graph(g, args.out)
    layers = g.layers if isinstance(g, ColoredGraph) else [g]
    edges = sum(layer.edge_count for layer in layers)
    regular = all(layer.is_regular for layer in layers)
    degrees = sorted({int(x) for layer in layers for x in layer.degrees})
    print(f"n={layers[0].n} edges={edges} colors={len(layers)} regular={regular} "
          f"degrees={degrees} sha256={digest}")
    return EXIT_OK


# ---------------------------------------------------------------- spectrum

def cache_dir() -> Path:
    root = os.environ.get("PRG_CACHE_DIR")
    return Path(root) if root else Path.home() / ".cache" / "prgeom"


def cmd_spectrum(args) -> int:
    g, digest = _load(args.graph)
    g = _single_layer(g)
    path = cache_dir() / f"{digest}.json"
    if not args.no_cache and path.exists():
        text = path.read_text()
        SpectralProfile.from_dict({k: v for k, v in json.loads(text).items() if k != "graph_hash"})
        print(f"cache hit {path}", file=sys.stderr)
    else:
        prof = spectrum(g)
        text = dumps_json({"graph_hash": digest, **prof.to_dict()})
        if not args.no_cache:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
            print(f"cache miss, wrote {path}", file=sys.stderr)
        for w in prof.warnings:
            print(f"warning: {w}", file=sys.stderr)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------- count

def cmd_count(args) -> int:
    g, digest = _load(args.graph)
    g = _single_layer(g)
    if args.usize is None:
        U = VertexSet.full(g.n)
    else:
        U = harness.random_subset(g.n, harness.trial_rng(args.seed, 0), args.usize)
    rep = count_report(g, U, ks=args.k, ms=args.m, simple_ms=args.simple, lam=spectrum(g).lam)
    _emit(dumps_json({"graph_hash": digest, "U": U.indices.tolist(), **rep.to_dict()}), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- verify

def _config_from_args(args) -> harness.RunConfig:
    if args.config:
        cfg = harness.RunConfig.from_json(Path(args.config).read_text())
        cfg.check = args.check
        return cfg
    return harness.RunConfig(
        check=args.check, graph=args.graph, graph2=args.graph2, usize=args.usize,
        trials=args.trials, seed=args.seed, k=args.k or [1, 2, 3], m=args.m or [4],
        variant=args.variant, adversarial=args.adversarial, output=args.out,
        format=args.format, jobs=args.jobs,
    )


def cmd_verify(args) -> int:
    cfg = _config_from_args(args)
    if cfg.check not in harness.CHECKS:
        raise UsageError(f"unknown check {cfg.check!r}; choose from {', '.join(harness.CHECKS)}")
    if cfg.trials < 0 or cfg.jobs < 1:
        raise UsageError("--trials must be >= 0 and --jobs >= 1")
    rows = harness.run_batch(cfg)
    text = harness.write_rows(rows, cfg.output, cfg.format)
    if not cfg.output:
        sys.stdout.write(text)
    failed = sum(r["status"] == "fail" for r in rows)
    print(f"{cfg.check}: {len(rows)} rows, {failed} failed", file=sys.stderr)
    return harness.exit_code(rows)


# ---------------------------------------------------------------- treefactor

def cmd_treefactor(args) -> int:
    g, digest = _load(args.graph)
    if not isinstance(g, ColoredGraph):
        g = ColoredGraph.single(g)
    tree = ColoredTree.parse(args.tree)
    if args.usize is None:
        U = VertexSet.full(g.n)
    else:
        U = harness.random_subset(g.n, harness.trial_rng(args.seed, 0), args.usize)
    build = tree_factor_linear if args.method == "linear" else tree_factor_stringiness
    packing = build(g, U, tree)
    problems = validate_packing(g, U, packing)
    out = {"graph_hash": digest, "method": args.method, "U_size": len(U),
           "problems": problems, **packing.to_dict()}
    _emit(dumps_json(out), args.out)
    ok = not problems and packing.meets_bound
    print(f"{len(packing)} copies, bound {packing.bound:.3f}, "
          f"{'ok' if ok else 'FAILED'}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------- report

def cmd_report(args) -> int:
    try:
        rows = json.loads(Path(args.input).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such report: {args.input}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.input} is not JSON: {exc}") from None
    if not isinstance(rows, list):
        raise UsageError("a report is a JSON list of rows")
    _emit(rows_to_csv(rows), args.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="prgeom", description="Pseudo-random graph geometry toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a graph family and write it as an edge list")
    b.add_argument("family", choices=sorted(FAMILY_ALIASES))
    for name in ("q", "dim", "t", "h", "n", "d"):
        b.add_argument(f"--{name}", type=int)
    b.add_argument("--seed", type=int)
    b.add_argument("--loops", action="store_true", default=None, help="keep self-orthogonal loops (dot)")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("spectrum", help="spectral profile as JSON, cached under PRG_CACHE_DIR")
    s.add_argument("graph")
    s.add_argument("--out")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("count", help="walk, closed-walk and cycle counts on a vertex subset")
    c.add_argument("graph")
    c.add_argument("--usize", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--k", type=int, nargs="*", default=[0, 1, 2, 3])
    c.add_argument("--m", type=int, nargs="*", default=[3, 4, 5])
    c.add_argument("--simple", type=int, nargs="*", default=[])
    c.add_argument("--out")
    c.set_defaults(func=cmd_count)

    v = sub.add_parser("verify", help="run seeded trials of a bound check")
    v.add_argument("check", help=", ".join(harness.CHECKS))
    v.add_argument("--graph", help="edge-list file (default: Paley graph on 29 vertices)")
    v.add_argument("--graph2", help="second factor for product checks (default: --graph)")
    v.add_argument("--usize", type=int)
    v.add_argument("--trials", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--k", type=int, nargs="*")
    v.add_argument("--m", type=int, nargs="*")
    v.add_argument("--variant", choices=("over_n", "over_n2"), default="over_n")
    v.add_argument("--adversarial", action="store_true")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out")
    v.add_argument("--config", help="RunConfig JSON; overrides the other options")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("treefactor", help="pack vertex-disjoint colored trees")
    t.add_argument("graph")
    t.add_argument("--tree", required=True, help="edges like '0-1:1,1-2:2'")
    t.add_argument("--method", choices=("linear", "stringiness"), default="linear")
    t.add_argument("--usize", type=int)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--out")
    t.set_defaults(func=cmd_treefactor)

    r = sub.add_parser("report", help="convert a JSON report to CSV")
    r.add_argument("input")
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, KeyError, OverflowError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"prgeom {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
