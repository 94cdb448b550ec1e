"""Orientable embeddings from rotation systems: face tracing and genus search."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .graph import Graph
from .scheme import (ContractViolation, DrawingScheme, RotationSystem, even_vertices,
                     evenly_connected_components)

FOUND = "found"
NONE = "none"
EXACT = "exact"
UNKNOWN = "unknown-budget"


class BudgetExhausted(RuntimeError):
    """A search hit its node budget before reaching a decision."""


@dataclass
class FaceTrace:
    faces: list[list[tuple[int, int]]]  # directed edges (tail, head)

    @property
    def count(self) -> int:
        return len(self.faces)

    @property
    def total_length(self) -> int:
        return sum(len(f) for f in self.faces)


def trace_faces(g: Graph, rot: RotationSystem) -> FaceTrace:
    """Faces as orbits of: arrive at ``v`` along ``e``, leave along the successor of ``e``."""
    rot.validate(g)
    succ = [dict(zip(o, o[1:] + o[:1])) for o in rot.orders]
    seen = set()
    faces = []
    for e, (a, b) in enumerate(g.edges):
        for start in ((a, b, e), (b, a, e)):
            if start in seen:
                continue
            face = []
            cur = start
            while cur not in seen:
                seen.add(cur)
                tail, head, edge = cur
                face.append((tail, head))
                f = succ[head][edge]
                cur = (head, g.other(f, head), f)
            faces.append(face)
    return FaceTrace(faces)


def euler_genus(g: Graph, rot: RotationSystem) -> int:
    """Orientable genus of the embedding; components are summed."""
    faces = trace_faces(g, rot)
    comp_of = {}
    comps = g.components()
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    fcount = [0] * len(comps)
    for face in faces.faces:
        fcount[comp_of[face[0][0]]] += 1
    mcount = [0] * len(comps)
    for u, _ in g.edges:
        mcount[comp_of[u]] += 1
    total = 0
    for i, c in enumerate(comps):
        if mcount[i] == 0:
            continue
        chi2 = 2 - len(c) + mcount[i] - fcount[i]
        if chi2 % 2 or chi2 < 0:
            raise AssertionError("Euler characteristic parity violated")
        total += chi2 // 2
    return total


def default_rotation(g: Graph) -> RotationSystem:
    return RotationSystem(tuple(tuple(inc) for inc in g.incident))


# --------------------------------------------------------------------------
# constraints


@dataclass(frozen=True)
class RotationConstraint:
    """``free``, ``fixed`` (cyclic order) or ``reversible`` (order, group id).

    Vertices in the same reversible group are reversed together or not at all.
    """

    kind: str = "free"
    order: tuple[int, ...] = ()
    group: int | None = None

    def __post_init__(self):
        if self.kind not in ("free", "fixed", "reversible"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "reversible" and self.group is None:
            raise ValueError("reversible constraints need a group id")
        object.__setattr__(self, "order", tuple(self.order))


def compat_constraints(s: DrawingScheme) -> dict[int, RotationConstraint]:
    """Fix the rotation at every even vertex of the drawing."""
    return {v: RotationConstraint("fixed", s.rotation.at(v)) for v in sorted(even_vertices(s))}


def weak_constraints(s: DrawingScheme) -> dict[int, RotationConstraint]:
    """One reversal choice per evenly connected component."""
    out = {}
    for gid, comp in enumerate(evenly_connected_components(s)):
        for v in sorted(comp):
            out[v] = RotationConstraint("reversible", s.rotation.at(v), gid)
    return out


def _validate_constraints(g: Graph, constraints: Mapping[int, RotationConstraint]) -> None:
    for v, c in constraints.items():
        if not 0 <= v < g.n:
            raise ContractViolation(f"constraint for unknown vertex {v}")
        if c.kind != "free" and sorted(c.order) != sorted(g.incident[v]):
            raise ContractViolation(f"constraint at {v} is not a permutation of its incident edges")


# --------------------------------------------------------------------------
# search


class _Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExhausted(f"node budget {self.limit} exhausted")


class _DartSearch:
    """Face-at-a-time construction of a rotation system on one connected component.

    Faces are traced one after another; whenever the trace arrives at a vertex
    whose successor for the incoming edge is still open, every admissible
    successor is tried.  A branch is cut when the faces closed so far plus the
    most faces the unused darts could still form (each face needs at least
    ``min_face`` darts) cannot reach the count Euler's formula demands.
    """

    def __init__(self, g: Graph, vertices: Sequence[int], fixed: Mapping[int, Sequence[int]],
                 min_face: int, budget: _Budget):
        self.g = g
        self.vertices = list(vertices)
        vs = set(self.vertices)
        self.edges = [e for e, (a, b) in enumerate(g.edges) if a in vs]
        self.nv = len(self.vertices)
        self.ne = len(self.edges)
        self.min_face = max(1, min_face)
        self.budget = budget
        self.nxt: dict[int, dict[int, int]] = {v: {} for v in self.vertices}
        self.prv: dict[int, dict[int, int]] = {v: {} for v in self.vertices}
        for v in self.vertices:
            inc = g.incident[v]
            if v in fixed:
                o = list(fixed[v])
                for i, e in enumerate(o):
                    self._link(v, e, o[(i + 1) % len(o)])
            elif len(inc) == 1:
                self._link(v, inc[0], inc[0])
        deg = {v: g.degree(v) for v in self.vertices}
        darts = []
        for e in self.edges:
            a, b = g.edges[e]
            darts.append((a, b, e))
            darts.append((b, a, e))
        # start faces at darts leaving high-degree vertices
        darts.sort(key=lambda d: (-deg[d[0]], d[0], d[2]))
        self.darts = darts
        self.used: set[tuple[int, int, int]] = set()
        self.closed = 0
        self.best = None  # (faces, rotation) of the best complete leaf seen

    def _link(self, v: int, e: int, f: int) -> None:
        self.nxt[v][e] = f
        self.prv[v][f] = e

    def _unlink(self, v: int, e: int) -> None:
        f = self.nxt[v].pop(e)
        del self.prv[v][f]

    def _allowed(self, v: int, e: int, f: int) -> bool:
        if f in self.prv[v]:
            return False
        deg = self.g.degree(v)
        x, count = f, 1
        while x in self.nxt[v]:
            x = self.nxt[v][x]
            count += 1
        if x == e:
            return count == deg
        return True

    def rotation(self) -> dict[int, tuple[int, ...]]:
        out = {}
        for v in self.vertices:
            inc = self.g.incident[v]
            if not inc:
                out[v] = ()
                continue
            start = min(inc)
            o = [start]
            x = self.nxt[v][start]
            while x != start:
                o.append(x)
                x = self.nxt[v][x]
            out[v] = tuple(o)
        return out

    def run(self, needed_faces: int) -> dict[int, tuple[int, ...]] | None:
        self.needed = needed_faces
        self.total_darts = 2 * self.ne
        if self.ne == 0:
            return self.rotation()
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 20 * self.total_darts + 1000))
        try:
            return self._new_face()
        finally:
            sys.setrecursionlimit(old)

    def _bound_ok(self, face_len: int) -> bool:
        unused = self.total_darts - len(self.used)
        short = max(0, self.min_face - face_len)
        best = self.closed + 1 + max(0, unused - short) // self.min_face
        return best >= self.needed

    def _new_face(self):
        for d in self.darts:
            if d not in self.used:
                break
        else:
            if self.closed >= self.needed:
                return self.rotation()
            return None
        if self.closed + 1 + (self.total_darts - len(self.used) - 1) // self.min_face < self.needed:
            return None
        self.used.add(d)
        try:
            return self._extend(d, d, 1)
        finally:
            self.used.discard(d)

    def _extend(self, start, cur, length):
        added = []
        try:
            while True:
                tail, v, e = cur
                f = self.nxt[v].get(e)
                if f is None:
                    return self._branch(start, cur, length)
                nd = (v, self.g.other(f, v), f)
                if nd == start:
                    self.closed += 1
                    try:
                        return self._new_face()
                    finally:
                        self.closed -= 1
                self.used.add(nd)
                added.append(nd)
                cur = nd
                length += 1
        finally:
            for d in added:
                self.used.discard(d)

    def _branch(self, start, cur, length):
        self.budget.tick()
        if not self._bound_ok(length):
            return None
        tail, v, e = cur
        cands = [f for f in self.g.incident[v] if f != e and self._allowed(v, e, f)]
        closing = [f for f in cands if (v, self.g.other(f, v), f) == start]
        order = closing + [f for f in cands if f not in closing]
        for f in order:
            self._link(v, e, f)
            try:
                res = self._extend(start, cur, length)
            finally:
                self._unlink(v, e)
            if res is not None:
                return res
        return None


def _min_face_length(g: Graph, vertices: Sequence[int]) -> int:
    sub, _ = g.induced(vertices)
    gi = sub.girth()
    return 3 if gi is None else gi


@dataclass
class GenusResult:
    genus: int | None
    rotation: RotationSystem | None
    status: str
    lower_bound: int = 0
    upper_bound: int | None = None
    nodes: int = 0


@dataclass
class EmbedResult:
    status: str
    rotation: RotationSystem | None = None
    genus: int | None = None
    nodes: int = 0
    info: dict = field(default_factory=dict)


def _component_search(g: Graph, comp: list[int], fixed: Mapping[int, Sequence[int]], target: int,
                      budget: _Budget) -> dict[int, tuple[int, ...]] | None:
    """Rotation on ``comp`` (with ``fixed`` rotations) of genus at most ``target``, or None."""
    vs = set(comp)
    m = sum(1 for a, b in g.edges if a in vs)
    n = len(comp)
    if m == 0:
        return {v: () for v in comp}
    if m == n - 1:  # tree: every rotation is planar
        rot = {v: tuple(fixed[v]) if v in fixed else tuple(g.incident[v]) for v in comp}
        return rot
    needed = 2 - 2 * target - n + m
    search = _DartSearch(g, comp, fixed, _min_face_length(g, comp), budget)
    return search.run(needed)


def _euler_lower_bound(g: Graph, comp: list[int]) -> int:
    vs = set(comp)
    m = sum(1 for a, b in g.edges if a in vs)
    n = len(comp)
    if m <= n - 1:
        return 0
    gmin = _min_face_length(g, comp)
    max_faces = (2 * m) // gmin
    lb = 2 - n + m - max_faces
    return max(0, (lb + 1) // 2)


def min_genus(g: Graph, budget: int | None = None) -> GenusResult:
    """Exact orientable genus by iterative deepening on the target genus."""
    bud = _Budget(budget)
    rot: dict[int, tuple[int, ...]] = {}
    total = 0
    lower = 0
    upper_default = euler_genus(g, default_rotation(g))
    for comp in g.components():
        lb = _euler_lower_bound(g, comp)
        target = lb
        while True:
            try:
                found = _component_search(g, comp, {}, target, bud)
            except BudgetExhausted:
                lower += target
                return GenusResult(None, None, UNKNOWN, lower_bound=lower, upper_bound=upper_default,
                                   nodes=bud.nodes)
            if found is not None:
                break
            target += 1
        rot.update(found)
        total += target
        lower += target
    rs = RotationSystem(tuple(rot.get(v, ()) for v in range(g.n)))
    genus = euler_genus(g, rs)
    if genus != total:
        raise AssertionError(f"witness genus {genus} differs from search value {total}")
    return GenusResult(total, rs, EXACT, lower_bound=total, upper_bound=total, nodes=bud.nodes)


def genus_at_most(g: Graph, target: int, budget: int | None = None) -> bool:
    """Whether some rotation system has genus ``<= target``; raises on budget exhaustion."""
    bud = _Budget(budget)
    spent = 0
    for comp in g.components():
        lb = _euler_lower_bound(g, comp)
        t = lb
        while spent + t <= target:
            if _component_search(g, comp, {}, t, bud) is not None:
                break
            t += 1
        else:
            return False
        spent += t
    return spent <= target


def is_planar(g: Graph, budget: int | None = None) -> bool:
    return genus_at_most(g, 0, budget)


def is_toroidal(g: Graph, budget: int | None = None) -> bool:
    return genus_at_most(g, 1, budget)


def constrained_embed(g: Graph, constraints: Mapping[int, RotationConstraint], target_genus: int,
                      budget: int | None = None) -> EmbedResult:
    """Rotation system honouring ``constraints`` with genus ``<= target_genus``."""
    _validate_constraints(g, constraints)
    bud = _Budget(budget)
    groups = sorted({c.group for c in constraints.values() if c.kind == "reversible"})
    has_fixed = any(c.kind == "fixed" for c in constraints.values())
    choices = list(product((False, True), repeat=len(groups)))
    if groups and not has_fixed:
        # reversing every rotation preserves genus, so pin the first group
        choices = [c for c in choices if not c[0]]
    comps = g.components()
    tried = 0
    try:
        for flips in choices:
            tried += 1
            flip_of = dict(zip(groups, flips))
            fixed = {}
            for v, c in constraints.items():
                if c.kind == "fixed":
                    fixed[v] = c.order
                elif c.kind == "reversible":
                    fixed[v] = c.order[::-1] if flip_of[c.group] else c.order
            rot = _constrained_components(g, comps, fixed, target_genus, bud)
            if rot is not None:
                rs = RotationSystem(tuple(rot.get(v, ()) for v in range(g.n)))
                return EmbedResult(FOUND, rs, euler_genus(g, rs), bud.nodes, {"reversals": flip_of})
    except BudgetExhausted:
        return EmbedResult(UNKNOWN, None, None, bud.nodes, {"choices_tried": tried})
    return EmbedResult(NONE, None, None, bud.nodes, {"choices_tried": tried})


def _constrained_components(g, comps, fixed, target, bud):
    rot: dict[int, tuple[int, ...]] = {}
    spent = 0
    for comp in comps:
        cfix = {v: fixed[v] for v in comp if v in fixed}
        t = 0
        while True:
            if spent + t > target:
                return None
            found = _component_search(g, comp, cfix, t, bud)
            if found is not None:
                break
            t += 1
        rot.update(found)
        spent += t
    return rot
