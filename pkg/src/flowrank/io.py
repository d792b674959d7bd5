"""Text formats for networks and machine-readable result documents.

Two line formats are read, both UTF-8 with ``#`` comments and blank lines
ignored:

* edges: ``x,y,c`` gives arc ``(x, y)`` capacity ``c``; repeated arcs add up.
* table: ``x,m,n,y`` records ``m`` wins of ``x`` over ``y`` and ``n`` of ``y``
  over ``x``.

A header line ``#format: table`` or ``#format: edges`` selects the format;
without one the text is read as edges. Vertices appear in first-seen order.
"""

from __future__ import annotations

import json
import re
from typing import Any

from flowrank.errors import FlowRankError, MalformedInputError, ParseError
from flowrank.network import Network, TableRow, VertexSet, from_table
from flowrank.relation import LinearOrder, Relation

FORMATS = ("edges", "table")
_UINT = re.compile(r"[0-9]+")
_HEADER = re.compile(r"#\s*format\s*:\s*(\S+)\s*$")


def detect_format(text: str) -> str:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            fmt = m.group(1).lower()
            if fmt not in FORMATS:
                raise ParseError(f"unknown format {fmt!r}", line=lineno)
            return fmt
        if not line.startswith("#"):
            break
    return "edges"


def _records(text: str, width: int):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != width:
            raise ParseError(f"expected {width} comma-separated fields, got {len(fields)}", line=lineno)
        yield lineno, fields


def _label(value: str, lineno: int) -> str:
    if not value:
        raise ParseError("empty vertex label", line=lineno)
    return value


def _uint(value: str, lineno: int) -> int:
    if not _UINT.fullmatch(value):
        raise ParseError(f"{value!r} is not a nonnegative integer", line=lineno)
    return int(value)


def parse_edges(text: str, *, sort_labels: bool = False) -> Network:
    order: dict[str, None] = {}
    arcs: dict[tuple[str, str], int] = {}
    for lineno, (x, y, c) in _records(text, 3):
        x, y, c = _label(x, lineno), _label(y, lineno), _uint(c, lineno)
        if x == y:
            raise ParseError(f"self-arc on {x!r}", line=lineno)
        order.setdefault(x)
        order.setdefault(y)
        arcs[(x, y)] = arcs.get((x, y), 0) + c
    if len(order) < 2:
        raise ParseError("a network needs at least 2 distinct vertices", line=0)
    vertices = VertexSet(sorted(order) if sort_labels else order)
    return Network.from_arcs(vertices, arcs)


def parse_table(text: str, *, sort_labels: bool = False) -> Network:
    rows = []
    for lineno, (x, m, n, y) in _records(text, 4):
        x, y = _label(x, lineno), _label(y, lineno)
        if x == y:
            raise ParseError(f"row pairs {x!r} with itself", line=lineno)
        rows.append(TableRow(x, _uint(m, lineno), _uint(n, lineno), y))
    labels = {x: None for r in rows for x in (r.x, r.y)}
    if len(labels) < 2:
        raise ParseError("a competition needs at least 2 distinct teams", line=0)
    return from_table(rows, sort_labels=sort_labels)


def parse_network(text: str, fmt: str | None = None, *, sort_labels: bool = False) -> Network:
    fmt = fmt or detect_format(text)
    parser = parse_table if fmt == "table" else parse_edges
    try:
        return parser(text, sort_labels=sort_labels)
    except ParseError:
        raise
    except FlowRankError as exc:
        raise ParseError(str(exc), line=0) from exc


def network_to_edges(net: Network, *, header: bool = True, comments: tuple[str, ...] = ()) -> str:
    """Edges text listing every arc, zero-capacity arcs included."""
    lines = ["#format: edges"] if header else []
    lines += [f"# {c}" for c in comments]
    lines += [f"{x},{y},{c}" for x, y, c in net.arcs()]
    return "\n".join(lines) + "\n"


def check_label(label: str) -> str:
    if "," in label or "\n" in label or not label.strip():
        raise MalformedInputError(f"label {label!r} cannot be written in the line formats")
    return label


# --- tree documents -------------------------------------------------------


def relation_to_tree(rel: Relation) -> dict[str, Any]:
    return {"vertices": list(rel.labels), "pairs": [list(p) for p in rel.pairs()]}


def relation_from_tree(doc: dict[str, Any]) -> Relation:
    try:
        return Relation.from_pairs(doc["vertices"], [tuple(p) for p in doc["pairs"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInputError(f"not a relation document: {exc}") from exc


def order_to_tree(order: LinearOrder) -> list[str]:
    return list(order.ranking)


def dumps(doc: Any) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def loads(text: str) -> Any:
    return json.loads(text)
