"""Combinatorial drawings on the torus.

A :class:`DrawingScheme` replaces a drawing by the data that matters for
independent-even questions: a rotation system, a symmetric matrix of crossing
parities and a Z2^2 homology vector per edge.  The reference drawing puts the
vertices in convex position on a disk in the torus with every edge a chord.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph, parse_graph6, write_graph6

SCHEME_FORMAT = "htorus.scheme/1"


class ContractViolation(ValueError):
    """An operation was called outside its precondition."""


# --------------------------------------------------------------------------
# rotation systems


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic order of incident edge ids at every vertex.

    In a simple graph the end of edge ``e`` at ``v`` is determined by the pair,
    so a rotation is stored as a tuple of edge ids.
    """

    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(tuple(int(e) for e in o) for o in self.orders))

    def at(self, v: int) -> tuple[int, ...]:
        return self.orders[v]

    def __len__(self) -> int:
        return len(self.orders)

    def successor(self, v: int, e: int) -> int:
        o = self.orders[v]
        return o[(o.index(e) + 1) % len(o)]

    def validate(self, g: Graph) -> None:
        if len(self.orders) != g.n:
            raise ContractViolation(f"rotation covers {len(self.orders)} vertices, graph has {g.n}")
        for v, o in enumerate(self.orders):
            if len(set(o)) != len(o) or set(o) != set(g.incident[v]):
                raise ContractViolation(f"rotation at {v} is not a permutation of its incident edges")

    def reversed(self, vertices: Iterable[int] | None = None) -> RotationSystem:
        vs = set(range(len(self.orders))) if vertices is None else set(vertices)
        return RotationSystem(tuple(o[::-1] if v in vs else o for v, o in enumerate(self.orders)))

    def with_order(self, v: int, order: Sequence[int]) -> RotationSystem:
        orders = list(self.orders)
        orders[v] = tuple(order)
        return RotationSystem(tuple(orders))

    def same_cyclic(self, v: int, order: Sequence[int]) -> bool:
        return cyclic_equal(self.orders[v], order)

    def to_json(self) -> list[list[int]]:
        return [list(o) for o in self.orders]

    @classmethod
    def from_json(cls, data) -> RotationSystem:
        return cls(tuple(tuple(o) for o in data))


def cyclic_equal(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        k = list(b).index(a[0])
    except ValueError:
        return False
    return tuple(a) == tuple(b[k:]) + tuple(b[:k])


def reference_rotation(g: Graph, order: Sequence[int]) -> RotationSystem:
    """Rotation of the convex chord drawing: neighbors by circular position after ``v``."""
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    orders = []
    for v in range(g.n):
        inc = sorted(g.incident[v], key=lambda e: (pos[g.other(e, v)] - pos[v]) % n)
        orders.append(tuple(inc))
    return RotationSystem(tuple(orders))


# --------------------------------------------------------------------------
# homology vectors


def symplectic(u: Sequence[int], v: Sequence[int]) -> int:
    """Intersection form ``u^T [[0,1],[1,0]] v`` over Z2."""
    return ((u[0] & v[1]) ^ (u[1] & v[0])) & 1


def reference_parities(g: Graph, order: Sequence[int]) -> np.ndarray:
    """Crossing parities of the convex chord drawing for vertex circular ``order``."""
    if sorted(order) != list(range(g.n)):
        raise ContractViolation("order must be a permutation of the vertices")
    pos = {v: i for i, v in enumerate(order)}
    m = g.m
    P = np.zeros((m, m), dtype=np.uint8)
    spans = []
    for u, v in g.edges:
        a, b = sorted((pos[u], pos[v]))
        spans.append((a, b))
    for e, f in combinations(range(m), 2):
        a, b = spans[e]
        c, d = spans[f]
        if len({a, b, c, d}) < 4:
            continue
        if (a < c < b) != (a < d < b):
            P[e, f] = P[f, e] = 1
    return P


# --------------------------------------------------------------------------
# the scheme


@dataclass(frozen=True, eq=False)
class DrawingScheme:
    """A drawing of ``graph`` on the torus up to crossing parity.

    ``finger_moves`` holds the edge-vertex moves ``(e, v)`` applied to the
    reference drawing when the scheme came from the solver; it is ``None``
    once a move has taken the scheme outside that closed form.
    """

    graph: Graph
    order: tuple[int, ...]
    rotation: RotationSystem
    parity: np.ndarray
    homology: np.ndarray
    finger_moves: frozenset | None = field(default=None)

    def __post_init__(self):
        P = np.array(self.parity, dtype=np.uint8) & 1
        H = np.array(self.homology, dtype=np.uint8).reshape(self.graph.m, 2) & 1
        m = self.graph.m
        if P.shape != (m, m):
            raise ContractViolation(f"parity matrix has shape {P.shape}, expected {(m, m)}")
        if not np.array_equal(P, P.T) or P.diagonal().any():
            raise ContractViolation("parity matrix must be symmetric with zero diagonal")
        self.rotation.validate(self.graph)
        if sorted(self.order) != list(range(self.graph.n)):
            raise ContractViolation("reference order must be a permutation of the vertices")
        P.setflags(write=False)
        H.setflags(write=False)
        object.__setattr__(self, "parity", P)
        object.__setattr__(self, "homology", H)
        object.__setattr__(self, "order", tuple(int(v) for v in self.order))
        if self.finger_moves is not None:
            object.__setattr__(self, "finger_moves", frozenset((int(e), int(v)) for e, v in self.finger_moves))

    @classmethod
    def reference(cls, g: Graph, order: Sequence[int] | None = None) -> DrawingScheme:
        order = tuple(range(g.n)) if order is None else tuple(order)
        return cls(g, order, reference_rotation(g, order), reference_parities(g, order),
                   np.zeros((g.m, 2), dtype=np.uint8), frozenset())

    def replace(self, **changes) -> DrawingScheme:
        kw = dict(graph=self.graph, order=self.order, rotation=self.rotation, parity=self.parity,
                  homology=self.homology, finger_moves=self.finger_moves)
        kw.update(changes)
        return DrawingScheme(**kw)

    def x(self, e: int) -> tuple[int, int]:
        h = self.homology[e]
        return int(h[0]), int(h[1])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DrawingScheme):
            return NotImplemented
        return (self.graph == other.graph and self.graph.edges == other.graph.edges
                and self.order == other.order and self.rotation == other.rotation
                and np.array_equal(self.parity, other.parity)
                and np.array_equal(self.homology, other.homology)
                and self.finger_moves == other.finger_moves)

    __hash__ = None

    # -- serialization ------------------------------------------------------

    def to_dict(self) -> dict:
        g = self.graph
        return {
            "format": SCHEME_FORMAT,
            "graph6": write_graph6(g),
            "edges": [list(uv) for uv in g.edges],
            "reference_order": list(self.order),
            "rotations": self.rotation.to_json(),
            "parity_matrix": pack_upper(self.parity),
            "homology": "".join(str(2 * int(a) + int(b)) for a, b in self.homology),
            "finger_moves": None if self.finger_moves is None else sorted(map(list, self.finger_moves)),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> DrawingScheme:
        if data.get("format") != SCHEME_FORMAT:
            raise ValueError(f"unknown scheme format {data.get('format')!r}")
        g0 = parse_graph6(data["graph6"])
        g = Graph(g0.n, [tuple(uv) for uv in data["edges"]])
        if g != g0:
            raise ValueError("edge list disagrees with graph6 string")
        m = g.m
        hom = np.array([[int(c) >> 1, int(c) & 1] for c in data["homology"]], dtype=np.uint8).reshape(m, 2)
        fm = data.get("finger_moves")
        return cls(g, tuple(data["reference_order"]), RotationSystem.from_json(data["rotations"]),
                   unpack_upper(data["parity_matrix"], m), hom,
                   None if fm is None else frozenset(tuple(p) for p in fm))

    @classmethod
    def from_json(cls, text: str) -> DrawingScheme:
        return cls.from_dict(json.loads(text))


def pack_upper(P: np.ndarray) -> str:
    """Upper triangle (row-major, ``e < f``) packed MSB-first into hex."""
    m = P.shape[0]
    iu = np.triu_indices(m, 1)
    bits = np.asarray(P[iu], dtype=np.uint8)
    if bits.size == 0:
        return ""
    return np.packbits(bits).tobytes().hex()


def unpack_upper(text: str, m: int) -> np.ndarray:
    k = m * (m - 1) // 2
    bits = np.unpackbits(np.frombuffer(bytes.fromhex(text), dtype=np.uint8))[:k] if k else np.zeros(0, np.uint8)
    if bits.size != k:
        raise ValueError("parity matrix payload too short")
    P = np.zeros((m, m), dtype=np.uint8)
    iu = np.triu_indices(m, 1)
    P[iu] = bits
    return P | P.T


# --------------------------------------------------------------------------
# walks, cycles and homology


@dataclass(frozen=True)
class Cycle:
    """Simple cycle given by its vertex sequence (first vertex not repeated)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(int(v) for v in self.vertices)
        if len(vs) >= 2 and vs[0] == vs[-1]:
            vs = vs[:-1]
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise ContractViolation("a cycle needs at least 3 distinct vertices")
        object.__setattr__(self, "vertices", vs)

    def edges(self, g: Graph) -> list[int]:
        vs = self.vertices
        try:
            return [g.edge_id(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]
        except ValueError as exc:
            raise ContractViolation(str(exc)) from None

    def closed_walk(self) -> list[int]:
        return list(self.vertices) + [self.vertices[0]]


def walk_edges(g: Graph, walk: Sequence[int]) -> list[int]:
    """Edge ids of a closed walk ``v0 v1 ... vk`` with ``vk == v0``."""
    if len(walk) < 2 or walk[0] != walk[-1]:
        raise ContractViolation("walk must be closed (first vertex repeated at the end)")
    out = []
    for a, b in zip(walk, walk[1:]):
        if not g.has_edge(a, b):
            raise ContractViolation(f"walk uses non-edge ({a}, {b})")
        out.append(g.edge_id(a, b))
    return out


def walk_homology(s: DrawingScheme, walk) -> tuple[int, int]:
    """Z2 sum of edge homology vectors along a closed walk (multiplicity counted)."""
    if isinstance(walk, Cycle):
        edges = walk.edges(s.graph)
    else:
        edges = walk_edges(s.graph, list(walk))
    h0 = h1 = 0
    for e in edges:
        h0 ^= int(s.homology[e, 0])
        h1 ^= int(s.homology[e, 1])
    return h0, h1


def is_essential(s: DrawingScheme, c) -> bool:
    if not isinstance(c, Cycle):
        c = Cycle(tuple(c))
    return walk_homology(s, c) != (0, 0)


def pair_parity(s: DrawingScheme, e: int, f: int) -> int:
    if e == f:
        raise ContractViolation("pair_parity needs two distinct edges")
    return int(s.parity[e, f])


def independent_mask(g: Graph) -> np.ndarray:
    m = g.m
    ends = np.array(g.edges, dtype=np.int64).reshape(m, 2)
    share = np.zeros((m, m), dtype=bool)
    for i in range(2):
        for j in range(2):
            share |= ends[:, i][:, None] == ends[:, j][None, :]
    return ~share


def odd_independent_pairs(s: DrawingScheme) -> list[tuple[int, int]]:
    mask = np.triu(independent_mask(s.graph), 1) & (s.parity == 1)
    return [(int(e), int(f)) for e, f in zip(*np.nonzero(mask))]


def is_iocr0(s: DrawingScheme) -> bool:
    return not odd_independent_pairs(s)


def vertex_is_even(s: DrawingScheme, v: int) -> bool:
    inc = s.graph.incident[v]
    return not any(s.parity[e, f] for e, f in combinations(inc, 2))


def even_vertices(s: DrawingScheme) -> frozenset[int]:
    return frozenset(v for v in range(s.graph.n) if vertex_is_even(s, v))


def evenly_connected_components(s: DrawingScheme) -> list[frozenset[int]]:
    """Components of the subgraph induced by the even vertices."""
    even = even_vertices(s)
    g = s.graph
    seen: set[int] = set()
    comps = []
    for v in sorted(even):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in even and w not in seen:
                    seen.add(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(frozenset(comp))
    return comps


@dataclass(frozen=True)
class ThreePathReport:
    essential: tuple[bool, bool, bool]  # cycles (p1,p2), (p1,p3), (p2,p3)

    @property
    def ok(self) -> bool:
        return sum(self.essential) != 1


def check_three_path(s: DrawingScheme, p1: Sequence[int], p2: Sequence[int], p3: Sequence[int]) -> ThreePathReport:
    """Essentiality of the three cycles formed by internally disjoint paths."""
    paths = [list(p) for p in (p1, p2, p3)]
    ends = {(p[0], p[-1]) for p in paths}
    if len(ends) != 1 or any(len(p) < 2 for p in paths):
        raise ContractViolation("the three paths must share both endpoints")
    a, b = paths[0][0], paths[0][-1]
    if a == b:
        raise ContractViolation("path endpoints must differ")
    interiors = [set(p[1:-1]) for p in paths]
    for i, j in combinations(range(3), 2):
        if interiors[i] & interiors[j]:
            raise ContractViolation("paths are not internally disjoint")
    for p in paths:
        if len(set(p)) != len(p):
            raise ContractViolation("paths must be simple")
    edge_lists = [tuple(sorted(walk_edges(s.graph, p + p[-2::-1])[: len(p) - 1])) for p in paths]
    if len(set(edge_lists)) < 3:
        raise ContractViolation("the three paths must be distinct")
    flags = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        walk = paths[i] + paths[j][-2::-1]
        flags.append(walk_homology(s, walk) != (0, 0))
    return ThreePathReport(tuple(flags))
