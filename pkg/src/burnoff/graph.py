"""Simple undirected graphs, cones, and spanning-tree counting/enumeration."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs, bad vertex indices, or out-of-range arguments."""


class ScaleError(RuntimeError):
    """Raised when a desk-scale routine is asked to handle a too-large instance."""


@dataclass(frozen=True)
class Graph:
    """A finite simple undirected graph on vertices ``0..n-1``.

    Neighbor lists are kept sorted; vertex index order is the canonical
    ordering used for every tie-break in this package.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adjacency) != self.n:
            raise GraphError("adjacency length must equal n")
        for u, nbrs in enumerate(self.adjacency):
            if list(nbrs) != sorted(set(nbrs)):
                raise GraphError(f"neighbors of {u} must be sorted and distinct")
            for w in nbrs:
                if not 0 <= w < self.n or w == u:
                    raise GraphError(f"bad neighbor {w} of vertex {u}")
                if u not in self.adjacency[w]:
                    raise GraphError(f"adjacency not symmetric at {u}-{w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, w) for u in range(self.n) for w in self.adjacency[u] if u < w)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def check_vertex(self, v: int) -> int:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise GraphError(f"vertex {v!r} not in 0..{self.n - 1}")
        return v

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``, relabelled in increasing index order.

        Returns the subgraph and the list mapping new index -> old index.
        """
        keep = sorted(set(vertices))
        pos = {old: new for new, old in enumerate(keep)}
        edges = [(pos[u], pos[w]) for u in keep for w in self.adjacency[u] if w in pos and u < w]
        return Graph.from_edges(len(keep), edges), keep

    def delete_vertices(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v})")
        key = (min(u, v), max(u, v))
        return Graph.from_edges(self.n, [e for e in self.edges if e != key])

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``u`` renamed ``perm[u]``."""
        return Graph.from_edges(self.n, [(perm[u], perm[w]) for u, w in self.edges])


@dataclass(frozen=True)
class ConeGraph:
    """``base`` plus an apex adjacent to every base vertex; the apex has index ``base.n``."""

    base: Graph
    graph: Graph

    @property
    def apex(self) -> int:
        return self.base.n


def cone(g: Graph) -> ConeGraph:
    x = g.n
    return ConeGraph(g, Graph.from_edges(g.n + 1, list(g.edges) + [(v, x) for v in range(g.n)]))


def laplacian(g: Graph) -> list[list[int]]:
    lap = [[0] * g.n for _ in range(g.n)]
    for u in range(g.n):
        lap[u][u] = g.degree(u)
        for w in g.adjacency[u]:
            lap[u][w] = -1
    return lap


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for i in range(k - 1):
        if a[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if a[r][i] != 0), None)
            if swap is None:
                return 0
            a[i], a[swap] = a[swap], a[i]
            sign = -sign
        piv = a[i][i]
        for r in range(i + 1, k):
            ar, ai = a[r], a[i]
            f = ar[i]
            for c in range(i + 1, k):
                ar[c] = (ar[c] * piv - f * ai[c]) // prev
            ar[i] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def tree_count(g: Graph | ConeGraph) -> int:
    """Number of spanning trees, via the Laplacian with the last row/column removed.

    The empty graph and K1 both count as having one spanning tree.
    """
    if isinstance(g, ConeGraph):
        g = g.graph
    if g.n <= 1:
        return 1
    lap = laplacian(g)
    return bareiss_det([row[:-1] for row in lap[:-1]])


def tree_count_minus_edge(c: ConeGraph, v: int) -> int:
    """Spanning trees of the cone after deleting the apex edge at base vertex ``v``."""
    c.base.check_vertex(v)
    return tree_count(c.graph.delete_edge(v, c.apex))


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a


def _connected_with(n: int, edges: Iterable[Edge]) -> bool:
    dsu = _DSU(n)
    parts = n
    for u, w in edges:
        ru, rw = dsu.find(u), dsu.find(w)
        if ru != rw:
            dsu.parent[ru] = rw
            parts -= 1
    return parts <= 1


def enumerate_spanning_trees(g: Graph | ConeGraph) -> Iterator[list[Edge]]:
    """Yield every spanning tree once, as a sorted edge list.

    Backtracks over the edge list: each edge is either contracted into the
    tree or deleted, and a branch is abandoned as soon as the remaining
    edges can no longer connect the graph.
    """
    if isinstance(g, ConeGraph):
        g = g.graph
    n = g.n
    if n == 0 or not g.is_connected():
        return
    if n == 1:
        yield []
        return
    edges = g.edges
    need = n - 1
    chosen: list[Edge] = []

    def rec(i: int, comp: list[int]):
        if len(chosen) == need:
            yield sorted(chosen)
            return
        if len(edges) - i < need - len(chosen):
            return
        u, w = edges[i]
        cu, cw = comp[u], comp[w]
        if cu != cw:
            merged = [cu if c == cw else c for c in comp]
            chosen.append((u, w))
            yield from rec(i + 1, merged)
            chosen.pop()
        # deleting edge i: the rest must still be able to span
        if _connected_with(n, chosen + list(edges[i + 1:])):
            yield from rec(i + 1, comp)

    yield from rec(0, list(range(n)))


def connected_sets(g: Graph, v: int, size: int) -> Iterator[frozenset[int]]:
    """Yield each connected vertex set containing ``v`` of the given size exactly once.

    Grows from ``v``; each frontier vertex is either added or permanently
    forbidden, so no set is reached along two branches.
    """
    g.check_vertex(v)
    if not 1 <= size <= g.n:
        raise GraphError(f"size {size} out of range 1..{g.n}")

    def rec(current: frozenset[int], frontier: tuple[int, ...], forbidden: frozenset[int]):
        if len(current) == size:
            yield current
            return
        if not frontier:
            return
        u, rest = frontier[0], frontier[1:]
        grown = current | {u}
        new = sorted(
            w for w in g.adjacency[u] if w not in grown and w not in forbidden and w not in rest
        )
        yield from rec(grown, rest + tuple(new), forbidden)
        yield from rec(current, rest, forbidden | {u})

    yield from rec(frozenset([v]), tuple(g.adjacency[v]), frozenset([v]))


def enumerate_rooted_subtrees(g: Graph, v: int, ell: int) -> Iterator[list[Edge]]:
    """Yield every subtree of ``g`` with ``ell`` vertices that contains ``v``.

    Each subtree is given by its edge list in original vertex indices; the
    single-vertex subtree is the empty list.
    """
    g.check_vertex(v)
    if not isinstance(ell, int) or not 1 <= ell <= g.n:
        raise GraphError(f"ell={ell!r} out of range 1..{g.n}")
    for s in connected_sets(g, v, ell):
        sub, back = g.induced(s)
        for tree in enumerate_spanning_trees(sub):
            yield sorted((back[a], back[b]) for a, b in tree)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(n: int) -> Graph:
    """Star with centre 0 and ``n`` leaves."""
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)])


def k3_pendant() -> Graph:
    """Triangle 0-1-2 with pendant vertex 3 attached to 0."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for h in graphs:
        edges += [(u + off, w + off) for u, w in h.edges]
        off += h.n
    return Graph.from_edges(off, edges)
