"""Burn-off chip-firing dynamics and the burning-algorithm legality test."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .graph import Graph, ScaleError


class ConfigurationError(ValueError):
    """A configuration violates an operation's precondition."""


@dataclass(frozen=True)
class Configuration:
    graph: Graph
    chips: tuple[int, ...]

    def __post_init__(self):
        if len(self.chips) != self.graph.n:
            raise ConfigurationError(
                f"configuration has {len(self.chips)} entries, graph has {self.graph.n} vertices"
            )
        if any(c < 0 for c in self.chips):
            raise ConfigurationError("chip counts must be nonnegative")

    @classmethod
    def of(cls, graph: Graph, chips: Iterable[int]) -> "Configuration":
        return cls(graph, tuple(int(c) for c in chips))

    @classmethod
    def all_critical(cls, graph: Graph) -> "Configuration":
        return cls(graph, graph.degrees)

    def __getitem__(self, v: int) -> int:
        return self.chips[v]

    def __len__(self):
        return len(self.chips)

    @property
    def total(self) -> int:
        return sum(self.chips)

    def is_critical(self, v: int) -> bool:
        return self.chips[v] == self.graph.degree(v)

    def is_supercritical(self, v: int) -> bool:
        return self.chips[v] > self.graph.degree(v)

    def is_relaxed(self) -> bool:
        return all(c <= d for c, d in zip(self.chips, self.graph.degrees))

    def add_chip(self, v: int) -> "Configuration":
        self.graph.check_vertex(v)
        chips = list(self.chips)
        chips[v] += 1
        return Configuration(self.graph, tuple(chips))

    def restrict(self, vertices: Iterable[int]) -> "Configuration":
        """Restriction to the induced subgraph on ``vertices`` (relabelled in index order)."""
        sub, back = self.graph.induced(vertices)
        return Configuration(sub, tuple(self.chips[b] for b in back))

    def __str__(self):
        return " ".join(map(str, self.chips))


@dataclass(frozen=True)
class GameResult:
    """Outcome of one seed-then-relax step.

    ``sequence`` is the actual firing order and is excluded from equality,
    since only length, fired set and final configuration are order-free.
    """

    length: int
    fired: frozenset[int]
    final: Configuration
    sequence: tuple[int, ...] = field(default=(), compare=False)


def _same_graph(c: Configuration, g: Graph):
    if c.graph != g:
        raise ConfigurationError("configuration belongs to a different graph")


def fire(c: Configuration, v: int) -> Configuration:
    g = c.graph
    g.check_vertex(v)
    if not c.is_supercritical(v):
        raise ConfigurationError(f"vertex {v} is not supercritical ({c[v]} <= deg {g.degree(v)})")
    chips = list(c.chips)
    chips[v] -= g.degree(v) + 1
    for w in g.adjacency[v]:
        chips[w] += 1
    return Configuration(g, tuple(chips))


def reverse_fire(c: Configuration, v: int) -> Configuration:
    g = c.graph
    g.check_vertex(v)
    chips = list(c.chips)
    for w in g.adjacency[v]:
        if chips[w] < 1:
            raise ConfigurationError(f"neighbor {w} of {v} has no chip to return")
        chips[w] -= 1
    chips[v] += g.degree(v) + 1
    return Configuration(g, tuple(chips))


# An order policy picks which supercritical vertex fires next from the
# current pending list; None means FIFO.
OrderPolicy = Callable[[Sequence[int]], int]


def random_order(rng) -> OrderPolicy:
    """Order policy firing a uniformly chosen pending vertex; ``rng`` needs ``randrange``."""
    return lambda pending: rng.randrange(len(pending))


def relax_chips(
    adjacency: Sequence[Sequence[int]],
    degrees: Sequence[int],
    chips: list[int],
    policy: OrderPolicy | None = None,
) -> list[int]:
    """Fire supercritical vertices in ``chips`` (mutated) until relaxed; returns the firing sequence."""
    sequence = []
    if policy is None:
        queue = deque(sorted(v for v, d in enumerate(degrees) if chips[v] > d))
        queued = set(queue)
        while queue:
            v = queue.popleft()
            queued.discard(v)
            d = degrees[v]
            if chips[v] <= d:
                continue
            chips[v] -= d + 1
            sequence.append(v)
            if chips[v] > d:
                queue.append(v)
                queued.add(v)
            for w in adjacency[v]:
                chips[w] += 1
                if chips[w] > degrees[w] and w not in queued:
                    queue.append(w)
                    queued.add(w)
        return sequence
    while True:
        pending = [v for v, d in enumerate(degrees) if chips[v] > d]
        if not pending:
            return sequence
        v = pending[policy(pending)]
        chips[v] -= degrees[v] + 1
        sequence.append(v)
        for w in adjacency[v]:
            chips[w] += 1


def relax(c: Configuration, policy: OrderPolicy | None = None) -> GameResult:
    """Relax an arbitrary configuration (no seed added)."""
    g = c.graph
    chips = list(c.chips)
    seq = relax_chips(g.adjacency, g.degrees, chips, policy)
    return GameResult(len(seq), frozenset(seq), Configuration(g, tuple(chips)), tuple(seq))


def seed_and_relax(c: Configuration, v: int, policy: OrderPolicy | None = None) -> GameResult:
    """Add a chip at ``v`` and fire until relaxed.

    The default policy is a FIFO queue of supercritical vertices seeded in
    index order; any policy gives the same result.
    """
    g = c.graph
    g.check_vertex(v)
    if not c.is_relaxed():
        raise ConfigurationError("seed_and_relax needs a relaxed configuration")
    chips = list(c.chips)
    chips[v] += 1
    seq = relax_chips(g.adjacency, g.degrees, chips, policy)
    return GameResult(len(seq), frozenset(seq), Configuration(g, tuple(chips)), tuple(seq))


@dataclass(frozen=True)
class BurnResult:
    legal: bool
    order: tuple[int, ...]
    remaining: tuple[int, ...]

    def __bool__(self):
        return self.legal


def burn(c: Configuration) -> BurnResult:
    """Burning algorithm: repeatedly delete a vertex holding at least its current degree.

    The smallest eligible index is always deleted first. On success ``order``
    is a full deletion order; on failure ``remaining`` lists the vertices
    left when no vertex was eligible.
    """
    g = c.graph
    alive = [True] * g.n
    deg = list(g.degrees)
    order = []
    for _ in range(g.n):
        v = next((u for u in range(g.n) if alive[u] and c.chips[u] >= deg[u]), None)
        if v is None:
            break
        alive[v] = False
        order.append(v)
        for w in g.adjacency[v]:
            deg[w] -= 1
    remaining = tuple(u for u in range(g.n) if alive[u])
    return BurnResult(not remaining, tuple(order), remaining)


def is_legal(c: Configuration) -> bool:
    return burn(c).legal


def in_R(c: Configuration) -> bool:
    return c.is_relaxed() and is_legal(c)


def legal_mask(g: Graph, chips: np.ndarray) -> np.ndarray:
    """Burning algorithm applied row-wise to a ``(k, n)`` array of configurations.

    All eligible vertices are burned together each round; eligibility only
    grows as neighbours burn, so the verdict matches the one-at-a-time run.
    """
    chips = np.asarray(chips)
    adj = np.zeros((g.n, g.n), dtype=np.int32)
    for u, w in g.edges:
        adj[u, w] = adj[w, u] = 1
    alive = np.ones(chips.shape, dtype=bool)
    for _ in range(g.n):
        deg = alive.astype(np.int32) @ adj
        eligible = alive & (chips >= deg)
        if not eligible.any():
            break
        alive &= ~eligible
    return ~alive.any(axis=1)


def is_recurrent_reachable(
    c_from: Configuration, c_to: Configuration, max_steps: int | None = None
) -> bool:
    """Bounded search: can ``c_to`` be reached from ``c_from`` by seed-and-relax steps?

    Only for graphs with at most 4 vertices. ``c_from`` is relaxed first if
    needed. The default bound is ``4 * n * |R|`` steps.
    """
    from .enumeration import count_R

    g = c_from.graph
    _same_graph(c_to, g)
    if g.n > 4:
        raise ScaleError("reachability search supports at most 4 vertices")
    if max_steps is None:
        max_steps = 4 * g.n * count_R(g)
    if c_from.chips == c_to.chips:
        return True
    start = c_from if c_from.is_relaxed() else relax(c_from).final
    if start.chips == c_to.chips:
        return True
    frontier, seen = [start], {start.chips}
    for _ in range(max_steps):
        nxt = []
        for c in frontier:
            for v in range(g.n):
                d = seed_and_relax(c, v).final
                if d.chips == c_to.chips:
                    return True
                if d.chips not in seen:
                    seen.add(d.chips)
                    nxt.append(d)
        if not nxt:
            return False
        frontier = nxt
    return False
