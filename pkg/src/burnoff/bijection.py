"""Bijection between relaxed legal configurations and spanning trees of the cone.

``config_to_tree`` builds the tree layer by layer from the configuration;
``tree_to_config`` reads a configuration back off a tree by breadth-first
layers around the apex. Both accept an optional ``trace`` list that receives
one dict per processed vertex, for debugging.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chips import Configuration, ConfigurationError, burn
from .graph import ConeGraph, Edge, Graph, GraphError, cone


@dataclass(frozen=True)
class SpanningTree:
    """Spanning tree of the cone over ``base``; the apex is vertex ``base.n``.

    Edges are stored as sorted ``(u, w)`` pairs with ``u < w``.
    """

    base: Graph
    edges: tuple[Edge, ...]

    @classmethod
    def of(cls, base: Graph, edges) -> "SpanningTree":
        norm = tuple(sorted((min(u, w), max(u, w)) for u, w in edges))
        tree = cls(base, norm)
        tree.validate()
        return tree

    @property
    def apex(self) -> int:
        return self.base.n

    @property
    def cone(self) -> ConeGraph:
        return cone(self.base)

    def validate(self):
        n, x = self.base.n, self.base.n
        if len(self.edges) != n:
            raise GraphError(f"spanning tree of the cone needs {n} edges, got {len(self.edges)}")
        if len(set(self.edges)) != n:
            raise GraphError("repeated edge in tree")
        for u, w in self.edges:
            if w == x:
                if not 0 <= u < n:
                    raise GraphError(f"bad apex edge ({u}, x)")
            elif not self.base.has_edge(u, w):
                raise GraphError(f"({u}, {w}) is not an edge of the graph")
        seen = {x}
        stack = [x]
        adj = self.adjacency()
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n + 1:
            raise GraphError("edges do not form a spanning tree of the cone")

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.base.n + 1)]
        for u, w in self.edges:
            adj[u].append(w)
            adj[w].append(u)
        return adj

    def depths(self) -> list[int]:
        """Tree distance from the apex for each base vertex."""
        adj = self.adjacency()
        depth = [-1] * (self.base.n + 1)
        depth[self.apex] = 0
        frontier = [self.apex]
        while frontier:
            nxt = []
            for u in frontier:
                for w in adj[u]:
                    if depth[w] < 0:
                        depth[w] = depth[u] + 1
                        nxt.append(w)
            frontier = nxt
        return depth[:-1]

    def __str__(self):
        return format_tree(self)


def format_tree(t: SpanningTree) -> str:
    """One edge per line; apex edges first, written ``x v``."""
    x = t.apex
    apex_edges = [f"x {u}" for u, w in t.edges if w == x]
    other = [f"{u} {w}" for u, w in t.edges if w != x]
    return "\n".join(apex_edges + other) + "\n"


def _earlier_neighbors(g: Graph, u: int, layers: list[list[int]]) -> list[int]:
    # concatenation N_1, ..., N_{i-1}; each layer is already in index order
    nbrs = set(g.adjacency[u])
    return [w for layer in layers for w in layer if w in nbrs]


def config_to_tree(c: Configuration, trace: list | None = None) -> SpanningTree:
    """Map a relaxed legal configuration on a connected graph to a spanning tree of its cone.

    The first layer is the set of critical vertices, each joined to the
    apex. Each later layer is drawn from unplaced neighbours of the previous
    layer; a candidate ``u`` with ``s`` neighbours in earlier layers is
    skipped for now if it holds fewer than ``deg(u) - s`` chips, and
    otherwise holding ``deg(u) - j`` chips makes the ``j``-th of those
    neighbours its parent.
    """
    g = c.graph
    if not g.is_connected() or g.n == 0:
        raise GraphError("config_to_tree needs a nonempty connected graph")
    if not c.is_relaxed():
        raise ConfigurationError("configuration is not relaxed")
    b = burn(c)
    if not b.legal:
        raise ConfigurationError(f"configuration is not legal; burning halts with {list(b.remaining)} left")
    x = g.n
    deg = g.degrees
    placed = set()
    edges: list[Edge] = []

    first = [v for v in range(g.n) if c[v] == deg[v]]
    for v in first:
        placed.add(v)
        edges.append((v, x))
        if trace is not None:
            trace.append({"layer": 1, "vertex": v, "parent": "x", "chips": c[v], "deg": deg[v]})
    layers = [first]
    while len(placed) < g.n:
        i = len(layers) + 1
        candidates = sorted({w for u in layers[-1] for w in g.adjacency[u] if w not in placed})
        kept = []
        for u in candidates:
            nseq = _earlier_neighbors(g, u, layers)
            s = len(nseq)
            entry = {"layer": i, "vertex": u, "chips": c[u], "deg": deg[u], "N": nseq, "s": s}
            if c[u] < deg[u] - s:
                if trace is not None:
                    trace.append(entry | {"parent": None})
                continue
            j = deg[u] - c[u]
            parent = nseq[j - 1]
            placed.add(u)
            edges.append((u, parent))
            kept.append(u)
            if trace is not None:
                trace.append(entry | {"j": j, "parent": parent})
        if not kept:
            # cannot happen for legal input on a connected graph
            raise RuntimeError(f"layer {i} came out empty")
        layers.append(kept)
    return SpanningTree.of(g, edges)


def tree_to_config(t: SpanningTree, trace: list | None = None) -> Configuration:
    """Map a spanning tree of the cone back to a relaxed legal configuration.

    Vertices are grouped by tree distance from the apex, each layer in index
    order. Apex neighbours get ``deg(u)`` chips; any other vertex gets
    ``deg(u) - t`` where its tree parent is the ``t``-th entry in the
    concatenated list of its graph neighbours from earlier layers.
    """
    t.validate()
    g = t.base
    deg = g.degrees
    depth = t.depths()
    tadj = t.adjacency()
    height = max(depth, default=0)
    layers = [sorted(v for v in range(g.n) if depth[v] == j) for j in range(1, height + 1)]
    chips = [0] * g.n
    for u in layers[0] if layers else []:
        chips[u] = deg[u]
        if trace is not None:
            trace.append({"layer": 1, "vertex": u, "parent": "x", "chips": chips[u], "deg": deg[u]})
    for i in range(2, height + 1):
        for u in layers[i - 1]:
            nseq = _earlier_neighbors(g, u, layers[: i - 1])
            parent = next(w for w in tadj[u] if w != g.n and depth[w] == i - 1)
            pos = nseq.index(parent) + 1
            chips[u] = deg[u] - pos
            if trace is not None:
                trace.append(
                    {"layer": i, "vertex": u, "N": nseq, "s": len(nseq), "t": pos, "parent": parent,
                     "chips": chips[u], "deg": deg[u]}
                )
    return Configuration(g, tuple(chips))
