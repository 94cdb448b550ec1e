"""Redrawing moves on drawing schemes and flip decision procedures."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .graph import Graph
from .scheme import (ContractViolation, Cycle, DrawingScheme, RotationSystem, is_essential,
                     vertex_is_even)


class MoveRefused(ValueError):
    """A move whose precondition fails for the given scheme (with the reason)."""


@dataclass(frozen=True)
class MoveRecord:
    """One applied move; ``edge_map[i]`` is the new id of old edge ``i`` (``None`` if gone)."""

    kind: str
    args: dict
    edge_map: tuple[int | None, ...] = ()
    vertex_map: tuple[int | None, ...] = ()

    def to_json(self) -> str:
        return json.dumps({"kind": self.kind, "args": self.args, "edge_map": list(self.edge_map),
                           "vertex_map": list(self.vertex_map)}, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> MoveRecord:
        d = json.loads(line)
        return cls(d["kind"], d["args"], tuple(d["edge_map"]), tuple(d["vertex_map"]))


def _identity_maps(s: DrawingScheme) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return tuple(range(s.graph.m)), tuple(range(s.graph.n))


# --------------------------------------------------------------------------
# elementary moves


def edge_vertex_move(s: DrawingScheme, e: int, v: int) -> DrawingScheme:
    """Finger move of ``e`` around ``v``: toggles ``e`` against every edge at ``v``."""
    g = s.graph
    if v in g.edges[e]:
        raise ContractViolation(f"vertex {v} is an endpoint of edge {e}")
    P = s.parity.copy()
    for f in g.incident[v]:
        P[e, f] ^= 1
        P[f, e] ^= 1
    moves = s.finger_moves
    if moves is not None:
        moves = moves ^ {(e, v)}
    return s.replace(parity=P, finger_moves=moves)


def edge_flip(s: DrawingScheme, v: int, i: int) -> DrawingScheme:
    """Swap the ends at positions ``i`` and ``i+1`` (cyclically) of the rotation at ``v``."""
    order = list(s.rotation.at(v))
    d = len(order)
    if d < 2:
        raise ContractViolation(f"vertex {v} has degree {d} < 2")
    i %= d
    j = (i + 1) % d
    e, f = order[i], order[j]
    order[i], order[j] = f, e
    P = s.parity.copy()
    if e != f:
        P[e, f] ^= 1
        P[f, e] ^= 1
    return s.replace(rotation=s.rotation.with_order(v, order), parity=P, finger_moves=None)


def flip_pair(s: DrawingScheme, v: int, e: int, f: int) -> DrawingScheme:
    """Flip the consecutive ends of ``e`` and ``f`` at ``v`` (``f`` right after ``e``)."""
    order = s.rotation.at(v)
    i = order.index(e)
    if order[(i + 1) % len(order)] != f:
        raise ContractViolation(f"edges {e}, {f} are not consecutive at {v}")
    return edge_flip(s, v, i)


def vertex_split(s: DrawingScheme, v: int, first: Sequence[int], second: Sequence[int]) -> DrawingScheme:
    """Split ``v`` into ``v`` (keeping ``first``) and a new last vertex (taking ``second``).

    ``first`` and ``second`` must be the two contiguous arcs of the rotation at
    ``v``, listed in rotation order.  The new edge is appended with id ``m`` and
    is even.  Homology of the new edge is zero.
    """
    g = s.graph
    order = list(s.rotation.at(v))
    d = len(order)
    first, second = list(first), list(second)
    if not first or not second or sorted(first + second) != sorted(order):
        raise ContractViolation("arcs must partition the rotation into two non-empty parts")
    k = order.index(first[0])
    rolled = order[k:] + order[:k]
    if rolled != first + second:
        raise ContractViolation("arcs are not contiguous in the rotation")
    if d < 2:
        raise ContractViolation("cannot split a vertex of degree < 2")
    new_v = g.n
    new_e = g.m
    moved = set(second)
    edges = []
    for e, (a, b) in enumerate(g.edges):
        if e in moved:
            a, b = (new_v if a == v else a), (new_v if b == v else b)
        edges.append((a, b))
    edges.append((v, new_v))
    g2 = Graph(g.n + 1, edges)
    orders = list(s.rotation.orders)
    orders[v] = tuple(first + [new_e])
    orders.append(tuple(second + [new_e]))
    m2 = g.m + 1
    P = np.zeros((m2, m2), dtype=np.uint8)
    P[: g.m, : g.m] = s.parity
    H = np.zeros((m2, 2), dtype=np.uint8)
    H[: g.m] = s.homology
    pos = list(s.order)
    pos.insert(pos.index(v) + 1, new_v)
    return DrawingScheme(g2, tuple(pos), RotationSystem(tuple(orders)), P, H, None)


def contract_even_edge(s: DrawingScheme, e: int) -> DrawingScheme:
    """Contract the even edge ``e = uv`` (``u < v``) into ``u``.

    Vertex ``v`` and edge ``e`` are deleted and higher ids shift down by one.
    The rotation at ``v`` is spliced into the rotation at ``u`` at the position
    of ``e``; ``x[e]`` is added to every other edge at ``v`` so cycle classes
    are unchanged.
    """
    g = s.graph
    u, v = g.edges[e]
    if s.parity[e].any():
        odd = [int(f) for f in np.flatnonzero(s.parity[e])]
        raise MoveRefused(f"edge {e} is odd (crosses {odd} oddly)")
    common = set(g.neighbors(u)) & set(g.neighbors(v))
    if common:
        raise MoveRefused(f"contraction would create multi-edges via {sorted(common)}")
    ru = list(s.rotation.at(u))
    rv = list(s.rotation.at(v))
    k = rv.index(e)
    tail_v = rv[k + 1:] + rv[:k]
    i = ru.index(e)
    merged = ru[:i] + tail_v + ru[i + 1:]
    emap = [None if f == e else (f if f < e else f - 1) for f in range(g.m)]
    vmap = [None if w == v else (w if w < v else w - 1) for w in range(g.n)]
    vmap[v] = vmap[u]
    edges = []
    for f, (a, b) in enumerate(g.edges):
        if f == e:
            continue
        a2, b2 = (u if a == v else a), (u if b == v else b)
        edges.append((vmap[a2], vmap[b2]))
    g2 = Graph(g.n - 1, edges)
    orders = []
    for w in range(g.n):
        if w == v:
            continue
        o = merged if w == u else list(s.rotation.at(w))
        orders.append(tuple(emap[f] for f in o))
    keep = [f for f in range(g.m) if f != e]
    P = s.parity[np.ix_(keep, keep)]
    H = s.homology.copy()
    xe = s.homology[e]
    for f in g.incident[v]:
        if f != e:
            H[f] ^= xe
    H = H[keep]
    order = tuple(vmap[w] for w in s.order if w != v)
    return DrawingScheme(g2, order, RotationSystem(tuple(orders)), P, H, None)


def apply_record(s: DrawingScheme, rec: MoveRecord) -> DrawingScheme:
    a = rec.args
    if rec.kind == "edge-vertex":
        return edge_vertex_move(s, a["e"], a["v"])
    if rec.kind == "flip":
        return edge_flip(s, a["v"], a["i"])
    if rec.kind == "split":
        return vertex_split(s, a["v"], a["first"], a["second"])
    if rec.kind == "contract":
        return contract_even_edge(s, a["e"])
    raise ValueError(f"unknown move kind {rec.kind!r}")


def record(s: DrawingScheme, kind: str, **args) -> tuple[DrawingScheme, MoveRecord]:
    """Apply a move and return the new scheme with its record."""
    g = s.graph
    rec = MoveRecord(kind, args)
    out = apply_record(s, rec)
    if kind == "split":
        emap, vmap = tuple(range(g.m)), tuple(range(g.n))
    elif kind == "contract":
        e = args["e"]
        u, v = g.edges[e]
        emap = tuple(None if f == e else (f if f < e else f - 1) for f in range(g.m))
        vm = [None if w == v else (w if w < v else w - 1) for w in range(g.n)]
        vm[v] = vm[u]
        vmap = tuple(vm)
    else:
        emap, vmap = _identity_maps(s)
    return out, MoveRecord(kind, args, emap, vmap)


def replay(s: DrawingScheme, records: Iterable[MoveRecord]) -> DrawingScheme:
    for rec in records:
        s = apply_record(s, rec)
    return s


# --------------------------------------------------------------------------
# making a vertex even by flips


def _local_state(s: DrawingScheme, v: int, edges: Sequence[int] | None = None):
    order = [e for e in s.rotation.at(v) if edges is None or e in set(edges)]
    idx = {e: k for k, e in enumerate(sorted(order))}
    bits = 0
    for e, f in combinations(order, 2):
        if s.parity[e, f]:
            a, b = sorted((idx[e], idx[f]))
            bits |= 1 << _pair_bit(a, b, len(order))
    return tuple(order), bits, idx


def _pair_bit(a: int, b: int, d: int) -> int:
    return a * d + b


def _canonical(order: tuple[int, ...]) -> tuple[int, ...]:
    k = order.index(min(order))
    return order[k:] + order[:k]


def _flip_search(order: tuple[int, ...], bits: int, idx: dict[int, int]):
    """BFS over (cyclic order, parity bits); returns the flip list (edge pairs) or None."""
    d = len(order)
    if bits == 0:
        return []
    start = (_canonical(order), bits)
    parent = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        o, b = state
        for i in range(d):
            j = (i + 1) % d
            e, f = o[i], o[j]
            lo, hi = sorted((idx[e], idx[f]))
            nb = b ^ (1 << _pair_bit(lo, hi, d))
            no = list(o)
            no[i], no[j] = f, e
            nxt = (_canonical(tuple(no)), nb)
            if nxt in parent:
                continue
            parent[nxt] = (state, (e, f))
            if nb == 0:
                path = []
                cur = nxt
                while parent[cur] is not None:
                    prev, mv = parent[cur]
                    path.append(mv)
                    cur = prev
                return path[::-1]
            queue.append(nxt)
    return None


@dataclass
class EvenResult:
    """Outcome of :func:`make_vertex_even_by_flips`.

    ``flips`` are rotation positions to pass to :func:`edge_flip` one after
    another; ``obstruction`` holds four edges that no flips make pairwise even.
    """

    possible: bool
    flips: list[int] = field(default_factory=list)
    obstruction: tuple[int, ...] | None = None


def flips_to_even(s: DrawingScheme, v: int, edges: Sequence[int] | None = None) -> list[tuple[int, int]] | None:
    order, bits, idx = _local_state(s, v, edges)
    if len(order) < 2:
        return []
    return _flip_search(order, bits, idx)


def make_vertex_even_by_flips(s: DrawingScheme, v: int) -> EvenResult:
    pairs = flips_to_even(s, v)
    if pairs is not None:
        positions = []
        cur = s
        for e, f in pairs:
            order = cur.rotation.at(v)
            i = order.index(e)
            positions.append(i)
            cur = edge_flip(cur, v, i)
        return EvenResult(True, positions)
    for quad in combinations(sorted(s.graph.incident[v]), 4):
        if flips_to_even(s, v, quad) is None:
            return EvenResult(False, [], quad)
    raise AssertionError("no four-edge obstruction found at a vertex that cannot be made even")


def apply_flips(s: DrawingScheme, v: int, positions: Sequence[int]) -> DrawingScheme:
    for i in positions:
        s = edge_flip(s, v, i)
    return s


# --------------------------------------------------------------------------
# X-configurations


@dataclass
class XConfiguration:
    first: Cycle
    second: Cycle
    vertex: int


@dataclass
class XSearchResult:
    config: XConfiguration | None
    incomplete: bool = False
    candidates: list[XConfiguration] = field(default_factory=list)


def _paths(g: Graph, a: int, b: int, banned: set[int], limit: int):
    """Simple paths from ``a`` to ``b`` avoiding ``banned`` (at most ``limit`` yielded)."""
    count = 0
    stack = [(a, [a])]
    while stack:
        u, p = stack.pop()
        if u == b:
            yield p
            count += 1
            if count >= limit:
                return
            continue
        for w in sorted(g.neighbors(u), reverse=True):
            if w in banned or w in p:
                continue
            stack.append((w, p + [w]))


def _shortest_path(g: Graph, a: int, b: int, banned: set[int]) -> list[int] | None:
    if a in banned or b in banned:
        return None
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        if u == b:
            out = []
            while u is not None:
                out.append(u)
                u = prev[u]
            return out[::-1]
        for w in g.neighbors(u):
            if w not in banned and w not in prev:
                prev[w] = u
                queue.append(w)
    return None


def x_configuration_candidates(s: DrawingScheme, path_budget: int = 2000) -> XSearchResult:
    """Cycle pairs through a non-evenable vertex using the 2+2 split of a bad quadruple.

    Essentiality is not checked here.
    """
    g = s.graph
    out = []
    incomplete = False
    for v in range(g.n):
        if vertex_is_even(s, v) or g.degree(v) < 4:
            continue
        res = make_vertex_even_by_flips(s, v)
        if res.possible:
            continue
        quads = [q for q in combinations(sorted(g.incident[v]), 4) if flips_to_even(s, v, q) is None]
        for quad in quads:
            ends = {e: g.other(e, v) for e in quad}
            for (e1, e2), (e3, e4) in _two_two_splits(quad):
                a, b = ends[e1], ends[e2]
                c, d = ends[e3], ends[e4]
                produced = 0
                for p in _paths(g, a, b, {v, c, d}, path_budget):
                    produced += 1
                    q = _shortest_path(g, c, d, {v} | set(p))
                    if q is not None:
                        out.append(XConfiguration(Cycle(tuple([v] + p)), Cycle(tuple([v] + q)), v))
                        break
                else:
                    if produced >= path_budget:
                        incomplete = True
    return XSearchResult(out[0] if out else None, incomplete, out)


def _two_two_splits(quad):
    a, b, c, d = quad
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def find_x_configuration(s: DrawingScheme, path_budget: int = 2000) -> XSearchResult:
    """First candidate pair in which both cycles are essential."""
    res = x_configuration_candidates(s, path_budget)
    good = [c for c in res.candidates if is_essential(s, c.first) and is_essential(s, c.second)]
    return XSearchResult(good[0] if good else None, res.incomplete, good)
