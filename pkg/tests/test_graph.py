import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burnoff.graph import (
    Graph,
    GraphError,
    bareiss_det,
    complete,
    cone,
    connected_sets,
    cycle,
    disjoint_union,
    enumerate_rooted_subtrees,
    enumerate_spanning_trees,
    k3_pendant,
    path,
    star,
    tree_count,
    tree_count_minus_edge,
)

from conftest import atlas_graphs, graphs


def is_spanning_tree(n, edges):
    if len(edges) != n - 1:
        return False
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for u, w in edges:
        ru, rw = find(u), find(w)
        if ru == rw:
            return False
        parent[ru] = rw
    return True


def brute_tree_count(g):
    """Count (n-1)-edge subsets that form a spanning tree."""
    if g.n <= 1:
        return 1
    return sum(is_spanning_tree(g.n, s) for s in itertools.combinations(g.edges, g.n - 1))


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()))


def test_cone_examples():
    k1 = cone(Graph.from_edges(1, []))
    assert k1.graph == complete(2)
    assert cone(complete(2)).graph == complete(3)
    c = cone(k3_pendant())
    assert c.graph.n == 5 and c.graph.m == 8
    assert c.graph.degree(c.apex) == 4
    base, _ = c.graph.delete_vertices([c.apex])
    assert base == k3_pendant()


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete(3), 3),
        (path(3), 1),
        (cycle(4), 4),
        (complete(4), 16),
        (Graph.from_edges(0, []), 1),
        (Graph.from_edges(1, []), 1),
        (Graph.from_edges(2, []), 0),
    ],
)
def test_tree_count_small(g, expected):
    assert tree_count(g) == expected


def test_tree_count_cone_k3_pendant():
    assert tree_count(cone(k3_pendant())) == 40


def test_tree_count_large_is_exact():
    # Cayley: K_n has n^(n-2) spanning trees; exceeds 64 bits for n = 30
    assert tree_count(complete(30)) == 30**28


def test_bareiss_det_with_pivoting():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[2, 0, 1], [1, 3, 2], [1, 1, 1]]) == 2 * (3 - 2) - 0 + 1 * (1 - 3)
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    assert bareiss_det([]) == 1


def test_tree_count_minus_edge():
    assert tree_count_minus_edge(cone(Graph.from_edges(1, [])), 0) == 0
    assert tree_count_minus_edge(cone(complete(2)), 0) == 1
    c = cone(k3_pendant())
    assert sum(tree_count_minus_edge(c, v) for v in range(4)) == 82
    with pytest.raises(GraphError):
        tree_count_minus_edge(c, 4)


@pytest.mark.parametrize("g", atlas_graphs(6, connected=False), ids=lambda g: f"n{g.n}m{g.m}")
def test_tree_count_matches_bruteforce(g):
    assert tree_count(g) == brute_tree_count(g)


@pytest.mark.parametrize("g", atlas_graphs(6), ids=lambda g: f"n{g.n}m{g.m}")
def test_enumeration_matches_count(g):
    trees = list(enumerate_spanning_trees(g))
    assert len(trees) == tree_count(g)
    assert len({tuple(t) for t in trees}) == len(trees)
    for t in trees:
        assert t == sorted(t)
        assert all(g.has_edge(u, w) for u, w in t)
        assert is_spanning_tree(g.n, t)


def test_enumerate_examples():
    assert len(list(enumerate_spanning_trees(cone(k3_pendant())))) == 40
    assert len(list(enumerate_spanning_trees(cycle(4)))) == 4
    trees = list(enumerate_spanning_trees(complete(3)))
    assert len(trees) == 3 and all(len(t) == 2 for t in trees)
    assert list(enumerate_spanning_trees(Graph.from_edges(3, [(0, 1)]))) == []


@given(graphs(max_n=7), st.randoms(use_true_random=False))
@settings(max_examples=60, deadline=None)
def test_tree_count_relabel_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert tree_count(g.relabel(perm)) == tree_count(g)


@given(graphs(max_n=6))
@settings(max_examples=60, deadline=None)
def test_disconnected_cone_multiplicative(g):
    comps = g.components()
    if len(comps) > 1:
        assert tree_count(g) == 0
    prod = 1
    for comp in comps:
        sub, _ = g.induced(comp)
        prod *= tree_count(cone(sub))
    assert tree_count(cone(g)) == prod


def brute_connected_sets(g, v, size):
    out = set()
    for s in itertools.combinations(range(g.n), size):
        if v in s:
            sub, _ = g.induced(s)
            if sub.is_connected():
                out.add(frozenset(s))
    return out


@pytest.mark.parametrize("g", atlas_graphs(6)[::3], ids=lambda g: f"n{g.n}m{g.m}")
def test_connected_sets_exactly_once(g):
    for v in range(g.n):
        for size in range(1, g.n + 1):
            found = list(connected_sets(g, v, size))
            assert len(found) == len(set(found))
            assert set(found) == brute_connected_sets(g, v, size)


def brute_rooted_subtrees(g, v, ell):
    """Edge subsets with ell-1 edges forming a tree on ell vertices containing v."""
    if ell == 1:
        return {()}
    out = set()
    for s in itertools.combinations(g.edges, ell - 1):
        verts = sorted({a for e in s for a in e})
        if len(verts) != ell or v not in verts:
            continue
        idx = {a: i for i, a in enumerate(verts)}
        if is_spanning_tree(ell, [(idx[a], idx[b]) for a, b in s]):
            out.add(tuple(sorted(s)))
    return out


@pytest.mark.parametrize("g", [k3_pendant(), complete(4), cycle(5), star(3)], ids=str)
def test_rooted_subtrees_match_bruteforce(g):
    for v in range(g.n):
        for ell in range(1, g.n + 1):
            found = [tuple(t) for t in enumerate_rooted_subtrees(g, v, ell)]
            assert len(found) == len(set(found))
            assert set(found) == brute_rooted_subtrees(g, v, ell)


def test_rooted_subtrees_examples():
    rnd = random.Random(3)
    g = complete(5)
    v = rnd.randrange(5)
    assert list(enumerate_rooted_subtrees(g, v, 1)) == [[]]
    assert len(list(enumerate_rooted_subtrees(complete(3), 0, 3))) == 3
    with pytest.raises(GraphError):
        list(enumerate_rooted_subtrees(g, 0, 0))
    with pytest.raises(GraphError):
        list(enumerate_rooted_subtrees(g, 0, 6))


def test_disjoint_union_and_families():
    g = disjoint_union(complete(2), complete(3))
    assert g.n == 5 and g.m == 4 and len(g.components()) == 2
    assert star(3).degrees == (3, 1, 1, 1)
    assert k3_pendant().edges == ((0, 1), (0, 2), (0, 3), (1, 2))
