"""Edge-list serialization and report emission.

Edge-list format::

    prgg 1 <n> <ncolors>
    # color <index> <label>        (one legend line per color)
    u v c                          (one line per undirected edge, u <= v, sorted)

``u == v`` lines are loops and mark the layer as loop-carrying.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from prgeom.graph import ColoredGraph, Graph

MAGIC = "prgg"
VERSION = 1


class FormatError(ValueError):
    pass


def dumps_graph(g: Graph | ColoredGraph) -> str:
    layers, colors = (g.layers, g.colors) if isinstance(g, ColoredGraph) else ([g], [0])
    out = [f"{MAGIC} {VERSION} {layers[0].n} {len(layers)}"]
    out += [f"# color {i} {label}" for i, label in enumerate(colors)]
    rows = []
    for i, layer in enumerate(layers):
        rows += [(u, v, i) for u, v in layer.edges()]
    rows.sort()
    out += [f"{u} {v} {c}" for u, v, c in rows]
    return "\n".join(out) + "\n"


def loads_graph(text: str) -> Graph | ColoredGraph:
    """Parse the edge-list format; one color gives a `Graph`, more give a `ColoredGraph`."""
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty graph file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != MAGIC:
        raise FormatError(f"bad header {lines[0]!r}")
    try:
        version, n, ncolors = int(head[1]), int(head[2]), int(head[3])
    except ValueError:
        raise FormatError(f"bad header {lines[0]!r}") from None
    if version != VERSION or n < 0 or ncolors < 1:
        raise FormatError(f"unsupported header {lines[0]!r}")
    labels: list = list(range(ncolors))
    adj = np.zeros((ncolors, n, n), dtype=bool)
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 3 and parts[0] == "color":
                labels[int(parts[1])] = _parse_label(parts[2])
            continue
        try:
            u, v, c = (int(x) for x in line.split())
        except ValueError:
            raise FormatError(f"line {lineno}: expected 'u v c', got {line!r}") from None
        if not (0 <= u <= v < n and 0 <= c < ncolors):
            raise FormatError(f"line {lineno}: edge ({u}, {v}, {c}) out of range")
        adj[c, u, v] = adj[c, v, u] = True
    layers = [Graph(a, loops=bool(a.diagonal().any())) for a in adj]
    if ncolors == 1:
        return layers[0]
    return ColoredGraph(layers, labels)


def _parse_label(s: str):
    try:
        return int(s)
    except ValueError:
        return s


def write_graph(g, path) -> str:
    text = dumps_graph(g)
    Path(path).write_text(text)
    return hashlib.sha256(text.encode()).hexdigest()


def read_graph(path) -> tuple[Graph | ColoredGraph, str]:
    """Load a graph file; also returns the sha256 of its bytes."""
    data = Path(path).read_bytes()
    return loads_graph(data.decode()), hashlib.sha256(data).hexdigest()


def jsonable(x):
    """Convert exact numbers and numpy scalars into JSON-friendly values."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return jsonable(x.tolist())
    return x


def dumps_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


CSV_FIELDS = ["trial", "check", "status", "lhs", "rhs", "main_term", "ratio", "graph_hash", "n", "d", "lambda"]


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS + ["extra"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        flat = {k: r.get(k) for k in CSV_FIELDS}
        prof = r.get("profile") or {}
        flat.update(n=prof.get("n"), d=prof.get("d"), **{"lambda": prof.get("lambda")})
        flat["check"] = r.get("name", r.get("check"))
        extra = {k: v for k, v in r.items() if k not in CSV_FIELDS + ["name", "profile"]}
        flat["extra"] = json.dumps(jsonable(extra), sort_keys=True)
        w.writerow({k: jsonable(v) for k, v in flat.items()})
    return buf.getvalue()
