"""Text formats for graphs, configurations and cone spanning trees."""

from __future__ import annotations

from .bijection import SpanningTree
from .chips import Configuration
from .graph import Graph, GraphError


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s


def _ints(s: str, no: int, count: int) -> list[int]:
    parts = s.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {s!r}", no)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"not an integer in {s!r}", no) from None


def parse_graph(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` with ``0 <= u < v < n``."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    no, head = lines[0]
    n, m = _ints(head, no, 2)
    if n < 0 or m < 0:
        raise ParseError("n and m must be nonnegative", no)
    body = lines[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else no)
        raise ParseError(f"header declares {m} edges, found {len(body)}", where)
    edges, seen = [], set()
    for no, s in body:
        u, v = _ints(s, no, 2)
        if not 0 <= u < v < n:
            raise ParseError(f"edge {u} {v} must satisfy 0 <= u < v < {n}", no)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge {u} {v}", no)
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def format_graph(g: Graph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def parse_configuration(text: str, g: Graph) -> Configuration:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise ParseError(f"configuration must be a single line, found {len(lines)}")
    no, s = lines[0]
    chips = _ints(s, no, g.n)
    if any(c < 0 for c in chips):
        raise ParseError("chip counts must be nonnegative", no)
    return Configuration(g, tuple(chips))


def parse_tree(text: str, g: Graph) -> SpanningTree:
    """Parse ``n`` edge lines ``u v``; the cone apex is written ``x``."""
    x = g.n
    edges = []
    for no, s in _content_lines(text):
        parts = s.split()
        if len(parts) != 2:
            raise ParseError(f"expected an edge 'u v', got {s!r}", no)
        try:
            ends = [x if p == "x" else int(p) for p in parts]
        except ValueError:
            raise ParseError(f"bad vertex in {s!r}", no) from None
        if any(not 0 <= a < g.n for a in ends if a != x) or ends[0] == ends[1]:
            raise ParseError(f"bad edge {s!r}", no)
        edges.append(tuple(ends))
    try:
        return SpanningTree.of(g, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
