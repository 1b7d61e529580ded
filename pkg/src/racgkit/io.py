"""Graph JSON ingestion and JSON/DOT export.

Graph files look like ``{"vertices": ["a", "b"], "edges": [["a", "b"]]}``.
Every rejection carries the 1-based line of the offending token.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable, Optional

from .graph import SimplicialGraph, SquareGraph

_decoder = json.JSONDecoder()
_WS = " \t\n\r"


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _line(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _skip(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in _WS:
        pos += 1
    return pos


def _expect(text: str, pos: int, ch: str) -> int:
    pos = _skip(text, pos)
    if pos >= len(text) or text[pos] != ch:
        found = "end of input" if pos >= len(text) else repr(text[pos])
        raise GraphFormatError(f"expected {ch!r}, found {found}", _line(text, pos))
    return pos + 1


def _value(text: str, pos: int) -> tuple[Any, int, int]:
    """Decode one JSON value; returns (value, start, end)."""
    start = _skip(text, pos)
    try:
        value, end = _decoder.raw_decode(text, start)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(exc.msg, exc.lineno) from None
    return value, start, end


def _object_items(text: str, pos: int) -> tuple[list[tuple[str, int, int, Any]], int]:
    """Walk a JSON object, returning (key, value_start, value_end, value) tuples."""
    pos = _expect(text, pos, "{")
    items = []
    pos = _skip(text, pos)
    if pos < len(text) and text[pos] == "}":
        return items, pos + 1
    while True:
        key, kstart, pos = _value(text, pos)
        if not isinstance(key, str):
            raise GraphFormatError("object keys must be strings", _line(text, kstart))
        pos = _expect(text, pos, ":")
        value, vstart, pos = _value(text, pos)
        items.append((key, vstart, pos, value))
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        return items, _expect(text, pos, "}")


def _array_items(text: str, pos: int) -> list[tuple[int, Any]]:
    pos = _expect(text, pos, "[")
    out = []
    pos = _skip(text, pos)
    if pos < len(text) and text[pos] == "]":
        return out
    while True:
        value, start, pos = _value(text, pos)
        out.append((start, value))
        pos = _skip(text, pos)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        _expect(text, pos, "]")
        return out


def parse_graph(text: str) -> SimplicialGraph:
    if not text.strip():
        raise GraphFormatError("empty input", 1)
    items, end = _object_items(text, 0)
    trailing = _skip(text, end)
    if trailing < len(text):
        raise GraphFormatError("trailing data after graph object", _line(text, trailing))
    fields = {key: (start, stop) for key, start, stop, _ in items}
    for key in ("vertices", "edges"):
        if key not in fields:
            raise GraphFormatError(f"missing {key!r}", _line(text, end - 1))

    vertices: list[str] = []
    seen: set[str] = set()
    for start, v in _array_items(text, fields["vertices"][0]):
        if not isinstance(v, str):
            raise GraphFormatError(f"vertex label must be a string, got {v!r}", _line(text, start))
        if v in seen:
            raise GraphFormatError(f"duplicate vertex {v!r}", _line(text, start))
        seen.add(v)
        vertices.append(v)

    edges: list[tuple[str, str]] = []
    edge_set: set[frozenset[str]] = set()
    for start, e in _array_items(text, fields["edges"][0]):
        line = _line(text, start)
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, str) for x in e)):
            raise GraphFormatError(f"edge must be a pair of labels, got {e!r}", line)
        u, v = e
        for x in (u, v):
            if x not in seen:
                raise GraphFormatError(f"edge {u!r}-{v!r} has unknown endpoint {x!r}", line)
        if u == v:
            raise GraphFormatError(f"self-loop at {u!r}", line)
        key = frozenset((u, v))
        if key in edge_set:
            raise GraphFormatError(f"duplicate edge {u!r}-{v!r}", line)
        edge_set.add(key)
        edges.append((u, v))
    return SimplicialGraph(vertices, edges)


def load_graph(path: str | Path) -> SimplicialGraph:
    return parse_graph(Path(path).read_text())


def graph_to_dict(g: SimplicialGraph) -> dict[str, Any]:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def graph_to_json(g: SimplicialGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: SimplicialGraph, name: str = "G", highlight: Iterable[str] = ()) -> str:
    marked = set(highlight)
    lines = [f"graph {_dot_id(name)} {{"]
    for v in g.vertices:
        style = ' [color=red, style=bold]' if v in marked else ""
        lines.append(f"  {_dot_id(v)}{style};")
    for u, v in g.edges:
        lines.append(f"  {_dot_id(u)} -- {_dot_id(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def square_graph_to_dot(sg: SquareGraph, name: str = "G4", highlight: Optional[Iterable[int]] = None) -> str:
    """DOT for the square graph; nodes are labelled by their diagonals."""
    marked = set(highlight or ())
    lines = [f"graph {_dot_id(name)} {{"]
    for k, sq in enumerate(sg.squares):
        label = f"{sq.diagonal1[0]}{sq.diagonal1[1]}|{sq.diagonal2[0]}{sq.diagonal2[1]}"
        style = ", color=red, style=bold" if k in marked else ""
        lines.append(f"  s{k} [label={_dot_id(label)}{style}];")
    for i, j in sg.edges:
        lines.append(f"  s{i} -- s{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
