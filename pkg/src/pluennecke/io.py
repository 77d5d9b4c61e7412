"""Graph documents, adjacency text and DOT export.

Graph document, version 1::

    pluennecke-graph v1
    # comments start with '#'
    provenance rk k=2 level=3
    level 2
    layers 1 2 3
    edges 0
    0 0
    0 1
    edges 1
    ...
    labels 0
    "0"

Edge lines inside a block are sorted by (u, v). Labels are optional, one
JSON string per vertex so that any text survives the round trip.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import GraphError
from .graph import LayeredGraph, VertexId

HEADER = "pluennecke-graph v1"
FORMAT_VERSION = 1


class ParseError(GraphError):
    def __init__(self, message: str, lineno: int | None = None, line: str | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        ctx = f" (got {line!r})" if line is not None else ""
        super().__init__(f"{where}{message}{ctx}")
        self.lineno = lineno


@dataclass
class GraphDocument:
    graph: LayeredGraph
    provenance: str = ""
    format_version: int = FORMAT_VERSION


def dumps(g: LayeredGraph, provenance: str = "") -> str:
    out = [HEADER]
    if provenance:
        out.append(f"provenance {provenance.replace(chr(10), ' ')}")
    out.append(f"level {g.level}")
    out.append("layers " + " ".join(str(s) for s in g.layer_sizes))
    for i in range(g.level):
        out.append(f"edges {i}")
        out.extend(f"{u} {v}" for u, v in g.edges(i))
    if g.labels is not None:
        for i, layer in enumerate(g.labels):
            out.append(f"labels {i}")
            out.extend(json.dumps(s) for s in layer)
    return "\n".join(out) + "\n"


def _ints(parts: list[str], lineno: int, line: str) -> list[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError("expected integers", lineno, line) from None


def _parse_document(lines: list[str]) -> GraphDocument:
    level = sizes = None
    provenance = ""
    edges: dict[int, list[tuple[int, int]]] = {}
    labels: dict[int, list[str]] = {}
    block = None  # ("edges" | "labels", layer)
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        text = line.strip()
        if lineno == 1:
            if text != HEADER:
                raise ParseError(f"expected header {HEADER!r}", lineno, line)
            continue
        if block and block[0] == "labels" and text.startswith('"'):
            try:
                labels[block[1]].append(json.loads(text))
            except json.JSONDecodeError:
                raise ParseError("bad label string", lineno, line) from None
            continue
        if not text or text.startswith("#"):
            continue
        key, _, rest = text.partition(" ")
        if key == "provenance":
            provenance = rest
        elif key == "level":
            (level,) = _ints([rest], lineno, line)
        elif key == "layers":
            sizes = _ints(rest.split(), lineno, line)
        elif key in ("edges", "labels"):
            if sizes is None or level is None:
                raise ParseError(f"'{key}' block before 'level' and 'layers'", lineno, line)
            (i,) = _ints([rest], lineno, line)
            top = level - 1 if key == "edges" else level
            if not 0 <= i <= top:
                raise ParseError(f"{key} block index {i} out of range", lineno, line)
            target = edges if key == "edges" else labels
            if i in target:
                raise ParseError(f"duplicate {key} block {i}", lineno, line)
            target[i] = []
            block = (key, i)
        elif block and block[0] == "edges":
            pair = _ints(text.split(), lineno, line)
            if len(pair) != 2:
                raise ParseError("edge lines need exactly two indices", lineno, line)
            u, v = pair
            i = block[1]
            if not (0 <= u < sizes[i] and 0 <= v < sizes[i + 1]):
                raise ParseError(f"edge ({u}, {v}) out of range for layers {i} and {i + 1}", lineno, line)
            edges[i].append((u, v))
        else:
            raise ParseError("unrecognised line", lineno, line)
    if level is None or sizes is None:
        raise ParseError("missing 'level' or 'layers'")
    if len(sizes) != level + 1:
        raise ParseError(f"level {level} needs {level + 1} layer sizes, got {len(sizes)}")
    for i, block_edges in edges.items():
        if block_edges != sorted(block_edges):
            raise ParseError(f"edges {i} are not sorted by (u, v)")
    label_rows = None
    if labels:
        if sorted(labels) != list(range(level + 1)):
            raise ParseError("labels must be given for every layer or none")
        label_rows = [labels[i] for i in range(level + 1)]
        for i, row in enumerate(label_rows):
            if len(row) != sizes[i]:
                raise ParseError(f"labels {i} has {len(row)} entries, layer has {sizes[i]}")
    g = LayeredGraph(sizes, [edges.get(i, []) for i in range(level)], label_rows)
    return GraphDocument(g, provenance)


def dumps_adjacency(g: LayeredGraph) -> str:
    """One line per vertex: ``L{i}_{j}: L{i+1}_{k} ...``; top vertices have empty lists."""
    out = []
    for i in range(g.level + 1):
        for x in range(g.layer_sizes[i]):
            v = VertexId(i, x)
            succ = " ".join(str(VertexId(i + 1, y)) for y in g.successors(v)) if i < g.level else ""
            out.append(f"{v}: {succ}".rstrip())
    return "\n".join(out) + "\n"


def _vertex(token: str, lineno: int, line: str) -> tuple[int, int]:
    try:
        if not token.startswith("L"):
            raise ValueError
        a, b = token[1:].split("_")
        return int(a), int(b)
    except ValueError:
        raise ParseError(f"bad vertex name {token!r}", lineno, line) from None


def _parse_adjacency(lines: list[str]) -> GraphDocument:
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        head, sep, rest = text.partition(":")
        if not sep:
            raise ParseError("expected 'vertex: successors'", lineno, line)
        u = _vertex(head.strip(), lineno, line)
        if u in adj:
            raise ParseError(f"vertex {head.strip()} listed twice", lineno, line)
        succ = [_vertex(t, lineno, line) for t in rest.split()]
        for v in succ:
            if v[0] != u[0] + 1:
                raise ParseError(f"edge {head.strip()} -> L{v[0]}_{v[1]} skips a layer", lineno, line)
        adj[u] = succ
    if not adj:
        raise ParseError("no vertices")
    level = max(i for i, _ in adj)
    sizes = [0] * (level + 1)
    for i, x in adj:
        sizes[i] = max(sizes[i], x + 1)
    missing = [f"L{i}_{x}" for i in range(level + 1) for x in range(sizes[i]) if (i, x) not in adj]
    if missing:
        raise ParseError(f"every vertex must be listed; missing {', '.join(missing[:5])}")
    edges: list[list[tuple[int, int]]] = [[] for _ in range(level)]
    for (i, x), succ in adj.items():
        for j, y in succ:
            if j > level or y >= sizes[j]:
                raise ParseError(f"edge target L{j}_{y} is not a listed vertex")
            edges[i].append((x, y))
    return GraphDocument(LayeredGraph(sizes, [sorted(e) for e in edges]))


def loads(text: str) -> GraphDocument:
    """Parse a graph document or adjacency text, detected from the first meaningful line."""
    lines = text.splitlines()
    for line in lines:
        s = line.strip()
        if s and not s.startswith("#"):
            if s == HEADER:
                return _parse_document(lines)
            if s.startswith("L") and ":" in s:
                return _parse_adjacency(lines)
            break
    if lines and lines[0].strip() != HEADER:
        raise ParseError(f"expected header {HEADER!r}", 1, lines[0])
    raise ParseError("empty document")


def load(path: str) -> GraphDocument:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def save(g: LayeredGraph, path: str, provenance: str = "") -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(g, provenance))


def to_dot(g: LayeredGraph, name: str = "G") -> str:
    """DOT with one ``rank=same`` subgraph per layer, bottom layer first."""
    out = [f"digraph {name} {{", "  rankdir=BT;"]
    for i in range(g.level + 1):
        nodes = " ".join(f"{VertexId(i, x)};" for x in range(g.layer_sizes[i]))
        out.append(f"  {{ rank=same; {nodes} }}")
    for u, v in g.all_edges():
        out.append(f"  {u} -> {v};")
    out.append("}")
    return "\n".join(out) + "\n"
