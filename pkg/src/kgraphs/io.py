"""Line-oriented text format for k-graphs, with canonical serialization.

Format (whitespace-separated tokens, '#' starts a comment):

    kgraph 1
    k <k>
    vertex <id>
    edge <id> <color:1..k> <source-vertex> <range-vertex>
    square <a> <b> <c> <d>

A square line asserts a.b = c.d with color(a) = i < color(b) = j,
color(c) = j, color(d) = i, composability s(a) = r(b) and s(c) = r(d),
and matching outer endpoints r(a) = r(c), s(b) = s(d).

`serialize_kgraph` is canonical: ids are sorted and field order is fixed,
so equal graphs produce byte-identical files.
"""

from __future__ import annotations

from .core import Edge, KGraph, Square, validate
from .errors import InvalidGraphError, ParseError

FORMAT_NAME = "kgraph"
FORMAT_VERSION = 1


def parse_kgraph(text: str, require_valid: bool = True) -> KGraph:
    """Parse a k-graph file; collects every diagnostic before raising.

    With require_valid (the default) the parsed graph is also run through
    `validate` and an InvalidGraphError carries the full report.
    """
    diagnostics: list[tuple[int, str]] = []
    header_seen = False
    rank: int | None = None
    vertices: dict[str, int] = {}
    edge_tokens: list[tuple[int, list[str]]] = []
    square_tokens: list[tuple[int, list[str]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        directive = tokens[0]
        if directive == FORMAT_NAME:
            if header_seen:
                diagnostics.append((lineno, "duplicate header"))
            elif len(tokens) != 2 or tokens[1] != str(FORMAT_VERSION):
                diagnostics.append(
                    (lineno, f"expected header '{FORMAT_NAME} {FORMAT_VERSION}'")
                )
            header_seen = True
        elif directive == "k":
            if rank is not None:
                diagnostics.append((lineno, "duplicate k line"))
            elif len(tokens) != 2 or not tokens[1].isdigit() or int(tokens[1]) < 1:
                diagnostics.append((lineno, "k must be a positive integer"))
            else:
                rank = int(tokens[1])
        elif directive == "vertex":
            if len(tokens) != 2:
                diagnostics.append((lineno, "vertex takes exactly one id"))
            elif tokens[1] in vertices:
                diagnostics.append((lineno, f"duplicate vertex id {tokens[1]!r}"))
            else:
                vertices[tokens[1]] = lineno
        elif directive == "edge":
            if len(tokens) != 5:
                diagnostics.append(
                    (lineno, "edge takes: edge <id> <color> <source> <range>")
                )
            else:
                edge_tokens.append((lineno, tokens[1:]))
        elif directive == "square":
            if len(tokens) != 5:
                diagnostics.append((lineno, "square takes four edge ids"))
            else:
                square_tokens.append((lineno, tokens[1:]))
        else:
            diagnostics.append((lineno, f"unknown directive {directive!r}"))

    if not header_seen:
        diagnostics.append((0, f"missing '{FORMAT_NAME} {FORMAT_VERSION}' header"))
    if rank is None:
        diagnostics.append((0, "missing 'k <k>' line"))
        raise ParseError(sorted(diagnostics))

    edges: dict[str, Edge] = {}
    for lineno, tokens in edge_tokens:
        eid, color_s, source, range_ = tokens
        try:
            color = int(color_s)
        except ValueError:
            diagnostics.append((lineno, f"edge {eid}: color {color_s!r} is not an integer"))
            continue
        if not 1 <= color <= rank:
            diagnostics.append((lineno, f"edge {eid}: color out of range 1..{rank}"))
            continue
        if eid in edges:
            diagnostics.append((lineno, f"duplicate edge id {eid!r}"))
            continue
        if eid in vertices:
            diagnostics.append((lineno, f"id {eid!r} already names a vertex"))
            continue
        if source not in vertices:
            diagnostics.append((lineno, f"edge {eid}: unknown source vertex {source!r}"))
            continue
        if range_ not in vertices:
            diagnostics.append((lineno, f"edge {eid}: unknown range vertex {range_!r}"))
            continue
        edges[eid] = Edge(id=eid, color=color, source=source, range=range_)

    squares: list[Square] = []
    seen_pairs: dict[tuple[str, str], int] = {}
    for lineno, tokens in square_tokens:
        a, b, c, d = tokens
        missing = [x for x in (a, b, c, d) if x not in edges]
        if missing:
            diagnostics.append((lineno, f"square references unknown edge {missing[0]!r}"))
            continue
        ea, eb, ec, ed = edges[a], edges[b], edges[c], edges[d]
        if not (ea.color < eb.color and ec.color == eb.color and ed.color == ea.color):
            diagnostics.append(
                (lineno, f"invalid square: colors must be i j j i with i < j, "
                         f"got {ea.color} {eb.color} {ec.color} {ed.color}")
            )
            continue
        if ea.source != eb.range or ec.source != ed.range:
            diagnostics.append((lineno, "invalid square: pairs are not composable"))
            continue
        if ea.range != ec.range or eb.source != ed.source:
            diagnostics.append((lineno, "invalid square: outer endpoints differ"))
            continue
        if (a, b) in seen_pairs:
            diagnostics.append(
                (lineno, f"pair ({a},{b}) already has a square at line {seen_pairs[(a, b)]}")
            )
            continue
        seen_pairs[(a, b)] = lineno
        squares.append(Square(first_ij=(a, b), first_ji=(c, d)))

    if diagnostics:
        raise ParseError(sorted(diagnostics))

    g = KGraph(rank=rank, vertices=vertices, edges=edges.values(), squares=squares)
    if require_valid:
        report = validate(g)
        if not report.ok:
            raise InvalidGraphError(report)
    return g


def serialize_kgraph(g: KGraph) -> str:
    """Canonical text form: sorted ids, fixed field order, trailing newline."""
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION}", f"k {g.rank}"]
    for v in g.vertices:
        lines.append(f"vertex {v}")
    for eid in sorted(g.edges):
        e = g.edges[eid]
        lines.append(f"edge {e.id} {e.color} {e.source} {e.range}")
    for sq in g.squares:
        a, b = sq.first_ij
        c, d = sq.first_ji
        lines.append(f"square {a} {b} {c} {d}")
    return "\n".join(lines) + "\n"


def load_kgraph(path: str, require_valid: bool = True) -> KGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_kgraph(fh.read(), require_valid=require_valid)


def save_kgraph(g: KGraph, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_kgraph(g))
