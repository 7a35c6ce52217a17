"""Acceptance suite: one test per criterion, each tagged with a ``criterion`` marker.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""
import random
import subprocess
import sys
import time

import pytest

from burnoff.bijection import SpanningTree, config_to_tree, tree_to_config
from burnoff.chips import random_order, seed_and_relax
from burnoff.cli import main
from burnoff.enumeration import distribution_analytic, distribution_oracle, enumerate_R_bruteforce
from burnoff.graph import complete, cone, enumerate_spanning_trees, k3_pendant, tree_count
from burnoff.markov import run_simulation, visitation_uniformity

from conftest import atlas_graphs, random_connected_graph

GRAPHS_6 = atlas_graphs(6)
GRAPHS_5 = atlas_graphs(5)


def random_7_vertex_graphs():
    rng = random.Random(2024)
    return [random_connected_graph(rng, 7, 0.5) for _ in range(20)]


@pytest.mark.criterion(1, "exact length distribution for the triangle with a pendant")
def test_criterion_1_table(capsys):
    start = time.perf_counter()
    code = main(["analyze", "--family", "k3_pendant"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    rows = [line.split(",") for line in out.splitlines() if line and not line.startswith("#")]
    assert rows[0] == ["length", "count", "total", "probability", "percent"]
    body = rows[1:]
    assert [int(r[1]) for r in body] == [82, 35, 16, 15, 12]
    assert {r[2] for r in body} == {"160"}
    assert [r[4] for r in body] == ["51.25", "21.875", "10", "9.375", "7.5"]
    assert elapsed < 1.0, elapsed


@pytest.mark.criterion(2, "|R| equals the spanning tree count of the cone, n <= 6")
def test_criterion_2_R_equals_trees():
    start = time.perf_counter()
    assert len(GRAPHS_6) == 143
    for g in GRAPHS_6:
        assert len(enumerate_R_bruteforce(g)) == tree_count(cone(g)), g
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(3, "analytic distribution equals the game-playing oracle")
def test_criterion_3_analytic_equals_oracle():
    start = time.perf_counter()
    for g in GRAPHS_6 + random_7_vertex_graphs():
        assert distribution_analytic(g) == distribution_oracle(g), g
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(4, "bijection round trips in both directions, n <= 5")
def test_criterion_4_round_trips():
    start = time.perf_counter()
    for g in GRAPHS_5:
        configs = enumerate_R_bruteforce(g)
        trees = [SpanningTree.of(g, e) for e in enumerate_spanning_trees(cone(g))]
        assert len(configs) == len(trees)
        for c in configs:
            assert tree_to_config(config_to_tree(c)) == c
        for t in trees:
            assert config_to_tree(tree_to_config(t)) == t
    assert time.perf_counter() - start < 120


@pytest.mark.criterion(5, "firing order independence, single firings, chip conservation")
def test_criterion_5_property_suite():
    start = time.perf_counter()
    rng = random.Random(7)
    pool = []
    for n in range(1, 8):
        for _ in range(3):
            g = random_connected_graph(rng, n, rng.choice([0.3, 0.5, 0.8]))
            pool.append((g, enumerate_R_bruteforce(g)))
    for _ in range(10_000):
        g, members = rng.choice(pool)
        c = rng.choice(members)
        v = rng.randrange(g.n)
        base = seed_and_relax(c, v)
        assert len(set(base.sequence)) == base.length
        assert base.final.total == c.total + 1 - base.length
        for _ in range(10):
            other = seed_and_relax(c, v, random_order(rng))
            assert other == base
            assert len(set(other.sequence)) == other.length
            assert other.final.total == c.total + 1 - other.length
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(6, "chi-square goodness of fit on 10,000 simulated games")
def test_criterion_6_chi_square():
    start = time.perf_counter()
    g = k3_pendant()
    exact = distribution_analytic(g).probabilities
    accepted = 0
    for seed in (1, 2, 3):
        r = run_simulation(g, 10_000, seed, alpha=0.1)
        assert r.analytic == tuple(exact)
        assert sum(r.length_histogram) == 10_000
        print(f"seed {seed}: statistic {r.chi_square.statistic:.4f}, p {r.chi_square.p_value:.4f}, "
              f"reject {r.chi_square.reject}")
        accepted += not r.chi_square.reject
    assert accepted >= 2
    assert time.perf_counter() - start < 5


@pytest.mark.criterion(7, "K2 visitation frequencies within 1/3 +- 0.017")
def test_criterion_7_visitation():
    start = time.perf_counter()
    for seed in (1, 2, 3):
        r = visitation_uniformity(complete(2), 30_000, seed)
        assert len(r.visitation) == 3 and sum(r.visitation.values()) == 30_000
        for state, count in r.visitation.items():
            assert abs(count / 30_000 - 1 / 3) <= 0.017, (seed, state, count)
    assert time.perf_counter() - start < 5


@pytest.mark.criterion(8, "repeated simulate invocations are byte-identical")
def test_criterion_8_determinism(tmp_path):
    outputs = []
    for i in range(2):
        chart = tmp_path / f"run{i}.svg"
        proc = subprocess.run(
            [sys.executable, "-m", "burnoff", "simulate", "--family", "k3_pendant", "-m", "10000",
             "--seed", "1", "--alpha", "0.1", "--chart", str(chart)],
            capture_output=True, check=True,
        )
        outputs.append((proc.stdout, chart.read_bytes()))
    assert outputs[0][0] and outputs[0][1]
    assert outputs[0] == outputs[1]
