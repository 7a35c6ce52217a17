"""Random seeding Markov chain on relaxed legal configurations.

Each step picks a seed vertex uniformly at random, adds a chip there and
relaxes. Randomness comes from SplitMix64, a fixed 64-bit generator whose
whole state is one integer, so a ``ChainState`` is an immutable value and
runs are reproducible on every platform.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from scipy import stats

from .chips import Configuration, ConfigurationError, GameResult, in_R, relax_chips
from .enumeration import count_R, distribution_analytic
from .graph import Graph, GraphError, ScaleError

MASK64 = (1 << 64) - 1
VISITATION_LIMIT = 10**4


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def uniform_below(state: int, n: int) -> tuple[int, int]:
    """Unbiased draw from ``range(n)`` by rejecting the top partial block of 2**64."""
    if n <= 0:
        raise ValueError("n must be positive")
    limit = (1 << 64) - ((1 << 64) % n)
    while True:
        state, x = splitmix64(state)
        if x < limit:
            return state, x % n


@dataclass(frozen=True)
class ChainState:
    current: Configuration
    step_count: int
    rng_state: int


def chain_init(g: Graph, seed: int, start: Configuration | None = None) -> ChainState:
    """Start state; defaults to the all-critical configuration, which is always in R."""
    if start is None:
        start = Configuration.all_critical(g)
    elif start.graph != g:
        raise ConfigurationError("start configuration belongs to a different graph")
    elif not in_R(start):
        raise ConfigurationError(f"start {start} is not a relaxed legal configuration")
    return ChainState(start, 0, seed & MASK64)


def chain_step(s: ChainState, check: bool = False) -> tuple[ChainState, GameResult]:
    g = s.current.graph
    if g.n == 0:
        raise GraphError("cannot seed an empty graph")
    rng, v = uniform_below(s.rng_state, g.n)
    chips = list(s.current.chips)
    chips[v] += 1
    seq = relax_chips(g.adjacency, g.degrees, chips)
    final = Configuration(g, tuple(chips))
    if check:
        assert in_R(final), f"chain left R at step {s.step_count + 1}: {final}"
        assert len(set(seq)) == len(seq), f"repeated firing {seq}"
    result = GameResult(len(seq), frozenset(seq), final, tuple(seq))
    return ChainState(final, s.step_count + 1, rng), result


@dataclass(frozen=True)
class ChiSquare:
    statistic: float
    df: int
    alpha: float
    critical_value: float
    p_value: float
    bins: tuple[tuple[tuple[int, ...], float, int], ...] = ()

    @property
    def reject(self) -> bool:
        return self.df > 0 and self.statistic > self.critical_value

    def to_dict(self) -> dict:
        return {
            "statistic": self.statistic,
            "df": self.df,
            "alpha": self.alpha,
            "critical_value": self.critical_value,
            "p_value": self.p_value,
            "reject": self.reject,
            "bins": [{"lengths": list(k), "expected": e, "observed": o} for k, e, o in self.bins],
        }


def merge_bins(expected: list[float], observed: list[int], min_expected: float = 5.0):
    """Pool adjacent bins until every expected count reaches ``min_expected``.

    The smallest offending bin is merged into whichever neighbour has the
    smaller expected count (right one on ties). Returns ``(labels, E, O)``.
    """
    labels = [(i,) for i in range(len(expected))]
    e, o = list(expected), list(observed)
    while len(e) > 1:
        small = [i for i in range(len(e)) if e[i] < min_expected]
        if not small:
            break
        i = min(small, key=lambda k: (e[k], k))
        if i == 0:
            j = 1
        elif i == len(e) - 1:
            j = i - 1
        else:
            j = i - 1 if e[i - 1] < e[i + 1] else i + 1
        a, b = min(i, j), max(i, j)
        labels[a:b + 1] = [labels[a] + labels[b]]
        e[a:b + 1] = [e[a] + e[b]]
        o[a:b + 1] = [o[a] + o[b]]
    return labels, e, o


def chi_square_test(observed: list[int], probabilities: list, alpha: float, merge: bool = True) -> ChiSquare:
    m = sum(observed)
    expected = [m * float(p) for p in probabilities]
    if merge:
        labels, e, o = merge_bins(expected, observed)
    else:
        labels, e, o = [(i,) for i in range(len(expected))], expected, list(observed)
    # bins with zero expectation and zero observation carry no information
    keep = [k for k in range(len(e)) if e[k] > 0 or o[k] > 0]
    labels, e, o = [labels[k] for k in keep], [e[k] for k in keep], [o[k] for k in keep]
    df = len(e) - 1
    if df <= 0:
        return ChiSquare(0.0, 0, alpha, 0.0, 1.0, tuple(zip(labels, e, o)))
    if any(x == 0 for x in e):
        return ChiSquare(float("inf"), df, alpha, float(stats.chi2.ppf(1 - alpha, df)), 0.0, tuple(zip(labels, e, o)))
    stat = sum((oo - ee) ** 2 / ee for oo, ee in zip(o, e))
    crit = float(stats.chi2.ppf(1 - alpha, df))
    return ChiSquare(float(stat), df, alpha, crit, float(stats.chi2.sf(stat, df)), tuple(zip(labels, e, o)))


@dataclass(frozen=True)
class SimulationReport:
    n: int
    games_played: int
    seed: int
    length_histogram: tuple[int, ...]
    analytic: tuple[Fraction, ...] | None = None
    chi_square: ChiSquare | None = None
    chi_square_note: str | None = None
    visitation: dict[tuple[int, ...], int] | None = None
    states: int | None = None
    max_deviation: float | None = None

    def frequencies(self) -> list[float]:
        m = self.games_played
        return [h / m if m else 0.0 for h in self.length_histogram]

    def to_dict(self) -> dict:
        d: dict = {
            "n": self.n,
            "games_played": self.games_played,
            "seed": self.seed,
            "length_histogram": {str(k): h for k, h in enumerate(self.length_histogram)},
        }
        if self.analytic is not None:
            d["analytic_probability"] = {str(k): str(p) for k, p in enumerate(self.analytic)}
        if self.chi_square is not None:
            d["chi_square"] = self.chi_square.to_dict()
        if self.chi_square_note:
            d["chi_square_note"] = self.chi_square_note
        if self.visitation is not None:
            d["states"] = self.states
            d["max_deviation"] = self.max_deviation
            d["visitation"] = {" ".join(map(str, k)): c for k, c in sorted(self.visitation.items())}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        lines = ["length,observed,frequency,expected_probability"]
        for k, h in enumerate(self.length_histogram):
            p = str(self.analytic[k]) if self.analytic is not None else ""
            freq = h / self.games_played if self.games_played else 0.0
            lines.append(f"{k},{h},{freq:.6g},{p}")
        return "\n".join(lines) + "\n"


def _play(g: Graph, m: int, seed: int, start, track: bool, check: bool = False):
    state = chain_init(g, seed, start)
    hist = [0] * (g.n + 1)
    visits: Counter = Counter()
    for _ in range(m):
        state, res = chain_step(state, check)
        hist[res.length] += 1
        if track:
            visits[state.current.chips] += 1
    return hist, visits


def run_simulation(
    g: Graph,
    m: int,
    seed: int,
    alpha: float = 0.1,
    start: Configuration | None = None,
    check: bool = False,
) -> SimulationReport:
    """Play ``m`` chain steps and compare the length histogram with the exact distribution.

    Chi-square bins with expected count below 5 are pooled with a
    neighbour first. If the exact distribution cannot be computed the
    report carries a note instead of a test.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    hist, _ = _play(g, m, seed, start, track=False, check=check)
    try:
        dist = distribution_analytic(g)
    except (GraphError, ScaleError) as exc:
        return SimulationReport(g.n, m, seed, tuple(hist), chi_square_note=f"analytic distribution unavailable: {exc}")
    probs = dist.probabilities
    chi = chi_square_test(hist, list(probs), alpha)
    return SimulationReport(g.n, m, seed, tuple(hist), probs, chi)


def visitation_uniformity(
    g: Graph, m: int, seed: int, alpha: float = 0.05, start: Configuration | None = None
) -> SimulationReport:
    """Visit counts of each state over ``m`` steps, tested against the uniform distribution on R."""
    n_states = count_R(g)
    if n_states > VISITATION_LIMIT:
        raise ScaleError(f"|R| = {n_states} exceeds visitation limit {VISITATION_LIMIT}")
    if m == 0:
        return SimulationReport(g.n, 0, seed, tuple([0] * (g.n + 1)), visitation={}, states=n_states, max_deviation=0.0)
    hist, visits = _play(g, m, seed, start, track=True)
    p = 1 / n_states
    unseen = n_states - len(visits)
    dev = max([abs(c / m - p) for c in visits.values()] + ([p] if unseen else []))
    e = m * p
    stat = sum((c - e) ** 2 / e for c in visits.values()) + unseen * e
    df = n_states - 1
    if df > 0:
        chi = ChiSquare(float(stat), df, alpha, float(stats.chi2.ppf(1 - alpha, df)), float(stats.chi2.sf(stat, df)))
    else:
        chi = ChiSquare(0.0, 0, alpha, 0.0, 1.0)
    return SimulationReport(
        g.n, m, seed, tuple(hist), chi_square=chi, visitation=dict(visits), states=n_states, max_deviation=dev
    )


def merge_reports(reports: list[SimulationReport]) -> tuple[int, ...]:
    """Combined length histogram of independent runs on the same graph."""
    return tuple(sum(col) for col in zip(*(r.length_histogram for r in reports)))

