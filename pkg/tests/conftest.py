from __future__ import annotations

import random

import numpy as np
import pytest

from htorus.graph import Graph
from htorus.scheme import DrawingScheme, RotationSystem


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    rng.shuffle(edges)
    return Graph(n, edges)


def random_rotation(g: Graph, rng: random.Random) -> RotationSystem:
    orders = []
    for v in range(g.n):
        inc = list(g.incident[v])
        rng.shuffle(inc)
        orders.append(tuple(inc))
    return RotationSystem(tuple(orders))


def random_scheme(g: Graph, rng: random.Random) -> DrawingScheme:
    """Arbitrary scheme: random symmetric parities, homology, rotation and order."""
    m = g.m
    P = np.zeros((m, m), dtype=np.uint8)
    for e in range(m):
        for f in range(e + 1, m):
            P[e, f] = P[f, e] = rng.getrandbits(1)
    H = np.array([[rng.getrandbits(1), rng.getrandbits(1)] for _ in range(m)], dtype=np.uint8).reshape(m, 2)
    order = list(range(g.n))
    rng.shuffle(order)
    return DrawingScheme(g, tuple(order), random_rotation(g, rng), P, H, None)


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
