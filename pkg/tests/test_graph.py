from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htorus.graph import (Graph, Graph6Error, complete, complete_bipartite, cycle, edge_pairs,
                          fundamental_cycles, independent_pairs, k3n_with_bracers, parse_graph6, path,
                          petersen, read_graph6_file, spanning_tree, star, write_graph6)

from conftest import random_graph


def test_generators():
    assert complete(5).m == 10
    g = complete_bipartite(3, 7)
    assert (g.n, g.m) == (10, 21)
    assert all(len(g.neighbors(v)) == 7 for v in range(3))
    p = petersen()
    assert (p.n, p.m) == (10, 15)
    assert all(p.degree(v) == 3 for v in range(10))
    assert p.girth() == 5
    assert cycle(5).girth() == 5 and path(4).girth() is None


def test_bracers():
    g = k3n_with_bracers(6, [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)])
    assert (g.n, g.m) == (9, 21)
    assert k3n_with_bracers(3, []) == complete_bipartite(3, 3)
    g = k3n_with_bracers(2, [("a", "b", 2), ("a", "b", 2)])
    assert (g.n, g.m) == (7, 10)
    with pytest.raises(ValueError):
        k3n_with_bracers(3, [("a", "b", 1), ("b", "a", 1)])


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, [(0, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        Graph(3, [(0, 3)])


def test_graph6_known_strings():
    assert write_graph6(complete(5)) == "D~{"
    assert parse_graph6("D~{") == complete(5)
    assert write_graph6(Graph(1)) == "@"
    assert parse_graph6("@").n == 1 and parse_graph6("@").m == 0
    assert parse_graph6(">>graph6<<D~{") == complete(5)


def test_graph6_errors_report_offsets():
    with pytest.raises(Graph6Error) as exc:
        parse_graph6("D~ ")
    assert exc.value.offset == 2
    with pytest.raises(Graph6Error):
        parse_graph6("D~")  # truncated
    with pytest.raises(Graph6Error):
        parse_graph6("D~{{")  # trailing
    with pytest.raises(Graph6Error):
        parse_graph6("")


def _nx_graph(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_graph6_round_trip_random():
    # 10^4 random graphs; networkx is the independent encoder
    rng = random.Random(6)
    for k in range(10_000):
        n = rng.randint(1, 70 if k % 50 == 0 else 12)
        g = random_graph(rng, n, rng.random())
        s = write_graph6(g)
        assert parse_graph6(s) == g
        if k % 10 == 0:
            assert s == nx.to_graph6_bytes(_nx_graph(g), header=False).decode().strip()


@given(st.integers(1, 12), st.data())
@settings(max_examples=200, deadline=None)
def test_graph6_round_trip_hypothesis(n, data):
    pairs = list(combinations(range(n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    g = Graph(n, chosen)
    assert parse_graph6(write_graph6(g)) == g


def test_read_file_with_header(tmp_path):
    f = tmp_path / "g.g6"
    f.write_text(">>graph6<<D~{\n\nC~\n")
    gs = read_graph6_file(f)
    assert gs[0] == complete(5) and gs[1] == complete(4)


def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def test_spanning_tree_union_find():
    rng = random.Random(1)
    for _ in range(300):
        g = random_graph(rng, rng.randint(1, 10), rng.random())
        tree = spanning_tree(g)
        parent = list(range(g.n))
        for e in tree:
            a, b = (_find(parent, v) for v in g.edges[e])
            assert a != b, "cycle in spanning tree"
            parent[a] = b
        assert len(tree) == g.n - len(g.components())
        for u, v in g.edges:
            assert _find(parent, u) == _find(parent, v)
    assert len(spanning_tree(complete(4))) == 3
    assert len(spanning_tree(Graph(4, [(0, 1), (2, 3)]))) == 2
    assert spanning_tree(path(3)) == [0, 1]


def test_fundamental_cycles_count():
    for g in (complete(5), petersen(), complete_bipartite(3, 4)):
        cycles = fundamental_cycles(g)
        assert len(cycles) == g.m - g.n + 1
        for c in cycles:
            assert all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def test_independent_pairs():
    assert len(list(independent_pairs(complete(4)))) == 3
    assert len(list(independent_pairs(star(4)))) == 0
    assert len(list(independent_pairs(complete(5)))) == 15
    rng = random.Random(2)
    for _ in range(100):
        g = random_graph(rng, rng.randint(2, 8))
        ind = list(independent_pairs(g))
        adj = [p for p in edge_pairs(g) if p.adjacent]
        assert len(ind) + len(adj) == g.m * (g.m - 1) // 2
        assert all(len(set(g.edges[p.e]) | set(g.edges[p.f])) == 4 for p in ind)
        assert ind == sorted(ind)
