"""Graph JSON and DOT serialization (byte-deterministic)."""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path

from copnum.errors import InvalidInput
from copnum.graph import Graph, build_graph


def graph_to_dict(g: Graph) -> dict:
    annotations = {}
    for name, value in g.annotations.items():
        if isinstance(value, Mapping):
            annotations[name] = {str(k): value[k] for k in sorted(value)}
        else:
            annotations[name] = sorted(value)
    return {"vertices": g.n, "edges": [list(e) for e in g.edges], "annotations": annotations}


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_dict(g), separators=(",", ":")) + "\n"


def graph_from_dict(data: Mapping) -> Graph:
    try:
        n = int(data["vertices"])
        edges = [(int(u), int(v)) for u, v in data["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed graph JSON: {exc}") from exc
    annotations = {}
    for name, value in (data.get("annotations") or {}).items():
        if isinstance(value, Mapping):
            annotations[name] = {int(k): v for k, v in value.items()}
        elif isinstance(value, list):
            annotations[name] = frozenset(int(x) for x in value)
        else:
            raise InvalidInput(f"annotation {name!r} must be a list or an object")
    return build_graph(n, edges, annotations)


def graph_from_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"graph file is not JSON: {exc}") from exc
    return graph_from_dict(data)


def load_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read graph file {path}: {exc}") from exc
    return graph_from_json(text)


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        tags = [k for k, val in g.annotations.items() if not isinstance(val, Mapping) and v in val]
        if tags:
            lines.append(f'  {v} [label="{v}\\n{",".join(tags)}"];')
        else:
            lines.append(f"  {v};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
