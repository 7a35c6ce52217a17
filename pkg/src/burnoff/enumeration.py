"""Exact game-length distributions, analytic and by brute force."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import reduce
from operator import mul

import numpy as np

from .chips import Configuration, legal_mask, relax_chips
from .graph import (
    Graph,
    GraphError,
    ScaleError,
    cone,
    connected_sets,
    enumerate_rooted_subtrees,
    tree_count,
    tree_count_minus_edge,
)

BOX_LIMIT = 10**7
GAME_LIMIT = 2 * 10**6
# below these sizes process start-up costs more than it saves
PARALLEL_MIN_N = 9
PARALLEL_MIN_GAMES = 200_000


@dataclass(frozen=True)
class LengthDistribution:
    """Pair counts ``counts[l]`` for game lengths ``l = 0..n`` out of ``total = |R| * n``."""

    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if sum(self.counts) != self.total:
            raise ValueError(f"counts sum to {sum(self.counts)}, expected {self.total}")

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def probabilities(self) -> tuple[Fraction, ...]:
        if self.total == 0:
            return tuple(Fraction(0) for _ in self.counts)
        return tuple(Fraction(c, self.total) for c in self.counts)

    def rows(self) -> list[dict]:
        return [
            {
                "length": ell,
                "count": c,
                "total": self.total,
                "probability": f"{c}/{self.total}",
                "percent": format_percent(Fraction(c, self.total) if self.total else Fraction(0)),
            }
            for ell, c in enumerate(self.counts)
        ]

    def to_csv(self) -> str:
        lines = ["length,count,total,probability,percent"]
        lines += [",".join(str(r[k]) for k in ("length", "count", "total", "probability", "percent")) for r in self.rows()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "total": self.total, "rows": self.rows()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def format_percent(p: Fraction) -> str:
    """``100 * p`` as an exact decimal if it terminates, else to 6 significant digits."""
    pct = p * 100
    den = pct.denominator
    for f in (2, 5):
        while den % f == 0:
            den //= f
    if den != 1:
        return f"{float(pct):.6g}"
    with localcontext() as ctx:
        ctx.prec = 200
        d = (Decimal(pct.numerator) / Decimal(pct.denominator)).normalize()
    return format(d, "f")


def count_R(g: Graph) -> int:
    """Number of relaxed legal configurations, as the spanning-tree count of the cone."""
    return tree_count(cone(g))


def _box_size(g: Graph) -> int:
    return reduce(mul, (d + 1 for d in g.degrees), 1)


def enumerate_R_bruteforce(g: Graph, limit: int = BOX_LIMIT) -> list[Configuration]:
    """Every relaxed legal configuration, found by testing the whole box in lexicographic order."""
    size = _box_size(g)
    if size > limit:
        raise ScaleError(f"configuration box has {size} points (limit {limit})")
    if g.n == 0:
        return [Configuration(g, ())]
    radices = np.array([d + 1 for d in g.degrees], dtype=np.int64)
    # place values, last vertex fastest
    place = np.ones(g.n, dtype=np.int64)
    for i in range(g.n - 2, -1, -1):
        place[i] = place[i + 1] * radices[i + 1]
    out = []
    chunk = 1 << 18
    for start in range(0, size, chunk):
        idx = np.arange(start, min(start + chunk, size), dtype=np.int64)
        box = (idx[:, None] // place[None, :]) % radices[None, :]
        for row in box[legal_mask(g, box)]:
            out.append(Configuration(g, tuple(int(a) for a in row)))
    return out


def _require_connected(g: Graph):
    if g.n == 0 or not g.is_connected():
        raise GraphError("graph must be nonempty and connected")


def count_length_zero_pairs(g: Graph) -> int:
    """Pairs (C, v) with a length-zero game: the sum over v of trees of the cone minus edge xv."""
    _require_connected(g)
    c = cone(g)
    return sum(tree_count_minus_edge(c, v) for v in range(g.n))


def _r_minus(g: Graph, s: frozenset[int]) -> int:
    rest, _ = g.delete_vertices(s)
    return count_R(rest)


def _ell_pairs_at(g: Graph, v: int, ell: int, cache: dict | None = None) -> int:
    cache = {} if cache is None else cache
    total = 0
    for s in connected_sets(g, v, ell):
        if s not in cache:
            sub, _ = g.induced(s)
            cache[s] = tree_count(sub) * _r_minus(g, s)
        total += cache[s]
    return total


def count_length_ell_pairs(g: Graph, ell: int) -> int:
    """Pairs (C, v) with a game of length ``ell >= 1``.

    Sums, over seeds ``v`` and connected vertex sets ``S`` of size ``ell``
    containing ``v``, the product of the spanning-tree count of ``g[S]`` and
    the number of relaxed legal configurations on ``g - S``.
    """
    _require_connected(g)
    if not isinstance(ell, int) or not 1 <= ell <= g.n:
        raise GraphError(f"ell={ell!r} out of range 1..{g.n}")
    cache: dict = {}
    return sum(_ell_pairs_at(g, v, ell, cache) for v in range(g.n))


def count_length_ell_pairs_per_tree(g: Graph, ell: int) -> int:
    """Unfactorized form: one ``r(g - T)`` term per subtree ``T``. Slow; for cross-checks."""
    _require_connected(g)
    total = 0
    for v in range(g.n):
        for tree in enumerate_rooted_subtrees(g, v, ell):
            verts = {v} | {a for e in tree for a in e}
            total += _r_minus(g, frozenset(verts))
    return total


def _analytic_row(args):
    g, ell = args
    return count_length_zero_pairs(g) if ell == 0 else count_length_ell_pairs(g, ell)


def _pool_map(fn, items, workers: int):
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(fn, items))
    return [fn(a) for a in items]


def distribution_analytic(g: Graph, workers: int = 1) -> LengthDistribution:
    _require_connected(g)
    if g.n < PARALLEL_MIN_N:
        workers = 1
    counts = _pool_map(_analytic_row, [(g, ell) for ell in range(g.n + 1)], workers)
    total = count_R(g) * g.n
    return LengthDistribution(tuple(counts), total)


def _oracle_chunk(args):
    g, rows = args
    adj, deg = g.adjacency, g.degrees
    hist = [0] * (g.n + 1)
    for row in rows:
        for v in range(g.n):
            chips = list(row)
            chips[v] += 1
            hist[len(relax_chips(adj, deg, chips))] += 1
    return hist


def distribution_oracle(g: Graph, workers: int = 1, game_limit: int = GAME_LIMIT) -> LengthDistribution:
    """Tally game lengths by playing every (C, v) with C from the brute-force enumeration."""
    _require_connected(g)
    configs = enumerate_R_bruteforce(g)
    if len(configs) * g.n > game_limit:
        raise ScaleError(f"{len(configs) * g.n} games exceed limit {game_limit}")
    rows = [c.chips for c in configs]
    if len(rows) * g.n < PARALLEL_MIN_GAMES:
        workers = 1
    k = max(1, workers * 4)
    chunks = [(g, rows[i::k]) for i in range(k)] if workers > 1 else [(g, rows)]
    hists = _pool_map(_oracle_chunk, chunks, workers)
    counts = tuple(int(sum(h[ell] for h in hists)) for ell in range(g.n + 1))
    return LengthDistribution(counts, len(configs) * g.n)
