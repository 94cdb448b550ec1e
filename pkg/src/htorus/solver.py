"""Independent-even drawings on the sphere and torus as GF(2) systems.

Unknowns of a torus drawing relative to the convex reference drawing:

* ``y[e, v]`` (``v`` not on ``e``): edge-vertex move of ``e`` around ``v``;
* ``x[e]`` in Z2^2: homology class of the handle detour attached to ``e``.

For edges ``e != f`` the crossing parity is::

    cr0(e, f) + sum_{v in f - e} y[e, v] + sum_{u in e - f} y[f, u] + omega(x[e], x[f])

with ``omega`` the intersection form.  Independent pairs must be even.  The
``y`` part is linear with a coefficient matrix that only depends on incidence,
so it is reduced once; a value of ``x`` is feasible exactly when every left
null vector of that matrix annihilates the right-hand side, which is a
quadratic condition in ``x``.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .gf2 import Gf2System, bits_of, parity
from .graph import Graph, independent_pairs, spanning_tree
from .scheme import DrawingScheme, reference_parities, reference_rotation, symplectic

SAT = "sat"
UNSAT = "unsat"
UNKNOWN = "unknown-budget"

SUFFIX_EDGES = 6
_MASK64 = (1 << 64) - 1


@dataclass
class SolveResult:
    status: str
    certificate: DrawingScheme | None = None
    stats: dict = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        return self.status == SAT


@dataclass(frozen=True)
class TorusAssignment:
    """Homology classes per edge and the set of edge-vertex moves."""

    x: tuple[tuple[int, int], ...]
    y: frozenset

    def is_gauge_normalized(self, g: Graph) -> bool:
        return all(self.x[e] == (0, 0) for e in spanning_tree(g))


# --------------------------------------------------------------------------
# the linear part


class PairSystem:
    """Independent-pair constraints of ``g`` for a fixed reference order."""

    def __init__(self, g: Graph, order: Sequence[int] | None = None, cr0: np.ndarray | None = None):
        self.g = g
        self.order = tuple(range(g.n)) if order is None else tuple(order)
        self.cr0 = reference_parities(g, self.order) if cr0 is None else np.asarray(cr0, dtype=np.uint8)
        self.pairs = [(p.e, p.f) for p in independent_pairs(g)]
        self.variables = [(e, v) for e, (a, b) in enumerate(g.edges) for v in range(g.n) if v not in (a, b)]
        self.var_index = {ev: j for j, ev in enumerate(self.variables)}
        rows = []
        rhs = 0
        for i, (e, f) in enumerate(self.pairs):
            row = 0
            for v in g.edges[f]:
                row ^= 1 << self.var_index[(e, v)]
            for u in g.edges[e]:
                row ^= 1 << self.var_index[(f, u)]
            rows.append(row)
            if self.cr0[e, f]:
                rhs |= 1 << i
        self.system = Gf2System(len(self.variables), rows, rhs)
        self.rhs0 = rhs
        self.null = self.system.left_null_space()

    @property
    def n_constraints(self) -> int:
        return len(self.pairs)

    def rhs(self, x: Sequence[Sequence[int]]) -> int:
        b = self.rhs0
        for i, (e, f) in enumerate(self.pairs):
            if symplectic(x[e], x[f]):
                b ^= 1 << i
        return b

    def y_set(self, y: int) -> frozenset:
        return frozenset(self.variables[j] for j in bits_of(y))

    def y_int(self, moves) -> int:
        out = 0
        for ev in moves:
            out ^= 1 << self.var_index[tuple(ev)]
        return out

    def scheme(self, x: Sequence[Sequence[int]], y: int) -> DrawingScheme:
        moves = self.y_set(y)
        P = assignment_parities(self.g, self.cr0, x, moves)
        return DrawingScheme(self.g, self.order, reference_rotation(self.g, self.order), P,
                             np.array(x, dtype=np.uint8).reshape(self.g.m, 2), moves)


def assignment_parities(g: Graph, cr0: np.ndarray, x, moves) -> np.ndarray:
    """Full parity matrix (adjacent pairs included) for an assignment."""
    m = g.m
    P = np.array(cr0, dtype=np.uint8).copy()
    X = np.array(x, dtype=np.uint8).reshape(m, 2)
    P ^= ((X[:, 0][:, None] & X[:, 1][None, :]) ^ (X[:, 1][:, None] & X[:, 0][None, :])).astype(np.uint8)
    for e, v in moves:
        for f in g.incident[v]:
            if f != e:
                P[e, f] ^= 1
                P[f, e] ^= 1
    np.fill_diagonal(P, 0)
    return P


def build_sphere_system(g: Graph, cr0: np.ndarray | None = None, order: Sequence[int] | None = None) -> Gf2System:
    return PairSystem(g, order, cr0).system


# --------------------------------------------------------------------------
# quadratic search over x


def _cotree_order(g: Graph, free: Sequence[int]) -> list[int]:
    deg = [g.degree(v) for v in range(g.n)]
    return sorted(free, key=lambda e: (-(deg[g.edges[e][0]] + deg[g.edges[e][1]]), e))


class QuadraticSearch:
    """Feasibility of ``x`` on the free edges, one quadratic form per null vector.

    Bit ``2k`` / ``2k+1`` of a packed ``x`` is the first / second homology bit
    of the ``k``-th free edge.  ``coupling[i][j]`` (``i < j``) has bit ``t`` set
    when null vector ``t`` contains a pair whose omega term multiplies bits
    ``i`` and ``j``.
    """

    def __init__(self, ps: PairSystem, free: Sequence[int], suffix_edges: int = SUFFIX_EDGES):
        self.ps = ps
        self.free = list(free)
        c = len(self.free)
        self.n_bits = 2 * c
        pos = {e: k for k, e in enumerate(self.free)}
        colmask = [0] * ps.n_constraints
        const = 0
        for t, vec in enumerate(ps.null):
            if parity(vec & ps.rhs0):
                const |= 1 << t
            for p in bits_of(vec):
                colmask[p] |= 1 << t
        self.n_null = len(ps.null)
        self.const = const
        nb = self.n_bits
        coupling = [[0] * nb for _ in range(nb)]
        last_edge = [-1] * self.n_null
        for p, (e, f) in enumerate(ps.pairs):
            cm = colmask[p]
            if not cm or e not in pos or f not in pos:
                continue
            a, b = pos[e], pos[f]
            for i, j in ((2 * a, 2 * b + 1), (2 * a + 1, 2 * b)):
                lo, hi = min(i, j), max(i, j)
                coupling[lo][hi] ^= cm
            for t in bits_of(cm):
                last_edge[t] = max(last_edge[t], a, b)
        self.coupling = coupling
        # determined[d]: null vectors whose free support lies in edges 0..d
        self.determined = [0] * (c + 1)
        for t, le in enumerate(last_edge):
            for d in range(max(le, 0), c):
                self.determined[d] |= 1 << t
        self.always = sum(1 << t for t, le in enumerate(last_edge) if le < 0)
        self.s = min(suffix_edges, c)
        self.prefix = c - self.s
        self._words = max(1, (self.n_null + 63) // 64)
        self._suffix_table = self._build_suffix_table()

    # -- packing helpers -----------------------------------------------------

    def _to_words(self, value: int) -> np.ndarray:
        return np.array([(value >> (64 * w)) & _MASK64 for w in range(self._words)], dtype=np.uint64)

    def _build_suffix_table(self) -> np.ndarray:
        """Packed quadratic value of every suffix assignment (suffix-internal terms)."""
        base = 2 * self.prefix
        nbits = 2 * self.s
        Q = np.zeros((self._words, 1), dtype=np.uint64)
        for j in range(nbits):
            # L[idx] = XOR_{i in idx} coupling[base+i][base+j]
            L = np.zeros((self._words, 1), dtype=np.uint64)
            for i in range(j):
                col = self._to_words(self.coupling[base + i][base + j])[:, None]
                L = np.concatenate([L, L ^ col], axis=1)
            Q = np.concatenate([Q, Q ^ L], axis=1)
        return Q

    def x_from_packed(self, packed: int) -> list[tuple[int, int]]:
        x = [(0, 0)] * self.ps.g.m
        for k, e in enumerate(self.free):
            x[e] = ((packed >> (2 * k)) & 1, (packed >> (2 * k + 1)) & 1)
        return x

    def value(self, packed: int) -> int:
        """Packed quadratic value (before adding the constant) of a full assignment."""
        v = 0
        set_bits = list(bits_of(packed))
        for a in range(len(set_bits)):
            for b in range(a + 1, len(set_bits)):
                v ^= self.coupling[set_bits[a]][set_bits[b]]
        return v

    def feasible(self, packed: int) -> bool:
        return (self.value(packed) ^ self.const) == 0

    # -- enumeration -----------------------------------------------------------

    def run(self, budget: int | None = None, find_all: bool = False, first_values: Sequence[int] | None = None):
        """Depth-first search; yields feasible packed assignments.

        Sets ``self.stats`` and ``self.complete`` when the generator finishes.
        ``first_values`` restricts the class of the first free edge (used to
        split work between processes).
        """
        c = len(self.free)
        total = 4 ** c
        self.stats = {"branches_total": total, "branches_decided": 0, "nodes": 0, "pruned": 0}
        self.complete = False
        if self.always & self.const:
            self.stats["branches_decided"] = total
            self.complete = True
            return
        nb = self.n_bits
        base = 2 * self.prefix
        sfx = 4 ** self.s
        stats = self.stats
        first = [0, 1, 2, 3] if first_values is None else list(first_values)

        def leaf(packed_prefix: int, V: int, lin: list[int]) -> Iterator[int]:
            target = V ^ self.const
            T = np.zeros((self._words, 1), dtype=np.uint64)
            for j in range(2 * self.s):
                col = self._to_words(lin[base + j])[:, None]
                T = np.concatenate([T, T ^ col], axis=1)
            total_v = self._suffix_table ^ T ^ self._to_words(target)[:, None]
            ok = np.flatnonzero(~total_v.any(axis=0))
            for idx in ok:
                yield packed_prefix | (int(idx) << base)

        def rec(d: int, packed: int, V: int, lin: list[int]):
            cover = 4 ** (c - d)
            if budget is not None and stats["branches_decided"] + cover > budget:
                raise _BudgetExceeded
            stats["nodes"] += 1
            if d == self.prefix:
                if self.s == 0:
                    if V == self.const:
                        yield packed
                else:
                    yield from leaf(packed, V, lin)
                stats["branches_decided"] += cover
                return
            values = first if d == 0 else (0, 1, 2, 3)
            for a in values:
                i, j = 2 * d, 2 * d + 1
                nV, nlin = V, lin
                if a:
                    nlin = list(lin)
                    if a & 1:
                        nV ^= lin[i]
                    if a & 2:
                        nV ^= lin[j]
                        if a & 1:
                            nV ^= self.coupling[i][j]
                    for k in range(j + 1, nb):
                        add = 0
                        if a & 1:
                            add ^= self.coupling[i][k]
                        if a & 2:
                            add ^= self.coupling[j][k]
                        if add:
                            nlin[k] ^= add
                if (nV ^ self.const) & self.determined[d]:
                    stats["pruned"] += 1
                    stats["branches_decided"] += 4 ** (c - d - 1)
                    continue
                yield from rec(d + 1, packed | (a << (2 * d)), nV, nlin)
            if d == 0 and first_values is not None:
                stats["branches_decided"] += (4 - len(first)) * 4 ** (c - 1)

        try:
            if c == 0:
                stats["nodes"] = 1
                stats["branches_decided"] = 1
                if self.const == 0:
                    yield 0
                self.complete = True
                return
            for hit in rec(0, 0, 0, [0] * nb):
                yield hit
                if not find_all:
                    return
            self.complete = True
        except _BudgetExceeded:
            self.complete = False


class _BudgetExceeded(Exception):
    pass


# --------------------------------------------------------------------------
# public solvers


def _workers_default() -> int:
    try:
        return max(1, int(os.environ.get("HTORUS_WORKERS", "1")))
    except ValueError:
        return 1


def solve_sphere(g: Graph, order: Sequence[int] | None = None) -> SolveResult:
    t0 = time.perf_counter()
    ps = PairSystem(g, order)
    y = ps.system.solve()
    stats = {"constraints": ps.n_constraints, "variables": len(ps.variables),
             "rank": ps.system.rank, "time": time.perf_counter() - t0}
    if y is None:
        return SolveResult(UNSAT, None, stats)
    return SolveResult(SAT, ps.scheme([(0, 0)] * g.m, y), stats)


def _solve_part(args):
    g, order, cr0, first_values, budget = args
    ps = PairSystem(g, order, cr0)
    qs = QuadraticSearch(ps, _cotree_order(g, _cotree(g)))
    hit = next(iter(qs.run(budget=budget, first_values=first_values)), None)
    return hit, qs.complete, qs.stats


def _cotree(g: Graph) -> list[int]:
    tree = set(spanning_tree(g))
    return [e for e in range(g.m) if e not in tree]


def solve_torus(g: Graph, budget: int | None = None, order: Sequence[int] | None = None,
                workers: int | None = None, cr0: np.ndarray | None = None) -> SolveResult:
    """Decide whether ``g`` has an independently even drawing on the torus.

    Homology classes are gauge-fixed to zero on a spanning forest and the
    ``4**(m - n + c)`` cotree assignments are searched exhaustively.  ``budget``
    caps the number of cotree assignments decided.
    """
    t0 = time.perf_counter()
    workers = _workers_default() if workers is None else workers
    ps = PairSystem(g, order, cr0)
    free = _cotree_order(g, _cotree(g))
    qs = QuadraticSearch(ps, free)
    stats = {"constraints": ps.n_constraints, "variables": len(ps.variables), "rank": ps.system.rank,
             "null_vectors": len(ps.null), "free_edges": len(free)}
    hit = None
    complete = True
    if workers > 1 and len(free) > qs.s:
        parts = [(g, ps.order, ps.cr0, [a], None if budget is None else budget // 4) for a in range(4)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_part, parts))
        agg = {"branches_total": 4 ** len(free), "branches_decided": 0, "nodes": 0, "pruned": 0}
        for part_hit, part_complete, part_stats in results:
            for k in ("branches_decided", "nodes", "pruned"):
                agg[k] += part_stats[k] - (3 * 4 ** (len(free) - 1) if k == "branches_decided" else 0)
            if hit is None and part_hit is not None:
                hit = part_hit
            complete = complete and part_complete
        stats.update(agg)
    else:
        hit = next(iter(qs.run(budget=budget)), None)
        complete = qs.complete
        stats.update(qs.stats)
    stats["time"] = time.perf_counter() - t0
    stats["workers"] = workers
    if hit is not None:
        x = qs.x_from_packed(hit)
        y = ps.system.solve(ps.rhs(x))
        return SolveResult(SAT, ps.scheme(x, y), stats)
    return SolveResult(UNSAT if complete else UNKNOWN, None, stats)


def iter_torus_solutions(g: Graph, order: Sequence[int] | None = None, budget: int | None = None):
    """All gauge-fixed feasible homology assignments with one ``y`` each.

    Yields ``(x, y_particular, ps)`` triples; ``ps.system.null_space()`` spans
    the remaining ``y`` freedom.
    """
    ps = PairSystem(g, order)
    qs = QuadraticSearch(ps, _cotree_order(g, _cotree(g)))
    for packed in qs.run(budget=budget, find_all=True):
        x = qs.x_from_packed(packed)
        yield x, ps.system.solve(ps.rhs(x)), ps


def solve_torus_ungauged(g: Graph, budget: int | None = None, order: Sequence[int] | None = None,
                         cr0: np.ndarray | None = None) -> SolveResult:
    """Reference search over all ``4**m`` homology assignments, no gauge fixing."""
    t0 = time.perf_counter()
    ps = PairSystem(g, order, cr0)
    checked = 0
    for combo in product(range(4), repeat=g.m):
        if budget is not None and checked >= budget:
            return SolveResult(UNKNOWN, None, {"branches_decided": checked, "time": time.perf_counter() - t0})
        checked += 1
        x = [(a >> 1, a & 1) for a in combo]
        b = ps.rhs(x)
        if ps.system.is_consistent(b):
            y = ps.system.solve(b)
            return SolveResult(SAT, ps.scheme(x, y), {"branches_decided": checked, "time": time.perf_counter() - t0})
    return SolveResult(UNSAT, None, {"branches_decided": checked, "time": time.perf_counter() - t0})


# --------------------------------------------------------------------------
# certificates


def certificate_check(g: Graph, s: DrawingScheme) -> bool:
    """Recompute the parity matrix from ``(order, x, y)`` and test independence-evenness."""
    return certificate_problem(g, s) is None


def recompute_parities(s: DrawingScheme) -> np.ndarray:
    """Parity matrix implied by the scheme's ``(order, x, y)`` record, pair by pair."""
    g = s.graph
    pos = {v: i for i, v in enumerate(s.order)}
    moves = set(s.finger_moves or ())
    P = np.zeros((g.m, g.m), dtype=np.uint8)
    for e in range(g.m):
        for f in range(e + 1, g.m):
            a, b = g.edges[e]
            c, d = g.edges[f]
            shared = {a, b} & {c, d}
            val = 0
            if not shared:
                pa, pb = sorted((pos[a], pos[b]))
                val ^= int((pa < pos[c] < pb) != (pa < pos[d] < pb))
            for w in (c, d):
                if w not in shared and (e, w) in moves:
                    val ^= 1
            for u in (a, b):
                if u not in shared and (f, u) in moves:
                    val ^= 1
            val ^= symplectic(s.x(e), s.x(f))
            P[e, f] = P[f, e] = val
    return P


def certificate_problem(g: Graph, s: DrawingScheme) -> str | None:
    """``None`` for a valid certificate, else a description of the first problem."""
    if s.graph != g or s.graph.edges != g.edges:
        return "scheme is over a different graph"
    if s.finger_moves is None:
        return "scheme carries no edge-vertex move record"
    for e, v in s.finger_moves:
        if not 0 <= e < g.m or not 0 <= v < g.n or v in g.edges[e]:
            return f"invalid edge-vertex move ({e}, {v})"
    P = recompute_parities(s)
    diff = np.argwhere(np.triu(P != s.parity, 1))
    if len(diff):
        e, f = map(int, diff[0])
        return f"recorded parity of edges {e},{f} disagrees with the recomputation"
    for e in range(g.m):
        for f in range(e + 1, g.m):
            if P[e, f] and not set(g.edges[e]) & set(g.edges[f]):
                return f"independent edges {e},{f} cross oddly"
    return None


def even_vertex_set(ps: PairSystem, x, y: int) -> frozenset[int]:
    """Even vertices of ``ps.scheme(x, y)`` without building the scheme."""
    g = ps.g
    odd = set()
    vi = ps.var_index
    for u in range(g.n):
        inc = g.incident[u]
        for i in range(len(inc)):
            e = inc[i]
            v = g.other(e, u)
            for j in range(i + 1, len(inc)):
                f = inc[j]
                w = g.other(f, u)
                val = int(ps.cr0[e, f]) ^ symplectic(x[e], x[f])
                val ^= (y >> vi[(e, w)]) & 1
                val ^= (y >> vi[(f, v)]) & 1
                if val:
                    odd.add(u)
                    break
            if u in odd:
                break
    return frozenset(range(g.n)) - odd


# --------------------------------------------------------------------------
# independent odd crossing number


@dataclass
class IocrResult:
    value: int
    scheme: DrawingScheme | None
    exact: bool
    stats: dict = field(default_factory=dict)


def count_odd_independent(ps: PairSystem, x, y: int) -> int:
    b = ps.rhs(x)
    return bin(ps.system.evaluate(y) ^ b).count("1")


def _min_coset_weight(columns: list[int], syndrome: int, limit: int, work_cap: int):
    """Smallest number of columns XOR-ing to ``syndrome``, searched below ``limit``.

    Returns ``(weight or None, chosen columns, exhausted, work)``.  Increasing
    weight order makes ignoring repeated columns safe: a pick that reuses a
    column means a lighter solution exists and was already found.
    """
    if syndrome == 0:
        return 0, (), True, 0
    lookup: dict[int, int] = {}
    for p, col in enumerate(columns):
        if col:
            lookup.setdefault(col, p)
    useful = [p for p, col in enumerate(columns) if col]
    work = 0
    for w in range(1, limit):
        if math.comb(len(useful), w - 1) + work > work_cap:
            return None, (), False, work
        for combo in combinations(useful, w - 1):
            work += 1
            t = syndrome
            for p in combo:
                t ^= columns[p]
            last = lookup.get(t)
            if last is not None:
                return w, combo + (last,), True, work
    return None, (), True, work


def _anneal(ps: PairSystem, free: list[int], steps: int, rng: random.Random, x0=None):
    """Simulated annealing over (x, y) minimizing odd independent pairs."""
    g = ps.g
    m = g.m
    pairs = ps.pairs
    npairs = len(pairs)
    by_var: list[list[int]] = [[] for _ in ps.variables]
    by_edge: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for i, (e, f) in enumerate(pairs):
        for v in g.edges[f]:
            by_var[ps.var_index[(e, v)]].append(i)
        for u in g.edges[e]:
            by_var[ps.var_index[(f, u)]].append(i)
        by_edge[e].append((i, f))
        by_edge[f].append((i, e))
    x = [list(v) for v in (x0 if x0 is not None else [(0, 0)] * m)]
    y = 0
    viol = [int(ps.cr0[e, f]) ^ symplectic(x[e], x[f]) for e, f in pairs]
    cur = sum(viol)
    best = (cur, [tuple(v) for v in x], y)
    nvars = len(ps.variables)
    t_hi, t_lo = 2.0, 0.05
    for step in range(steps):
        if cur == 0:
            break
        temp = t_hi * (t_lo / t_hi) ** (step / max(1, steps - 1))
        if free and rng.random() < 0.2:
            e = free[rng.randrange(len(free))]
            new = (rng.randrange(2), rng.randrange(2))
            if new == tuple(x[e]):
                continue
            d = (x[e][0] ^ new[0], x[e][1] ^ new[1])
            flips = [i for i, f in by_edge[e] if symplectic(d, x[f])]
            delta = sum(1 - 2 * viol[i] for i in flips)
            if delta <= 0 or rng.random() < math.exp(-delta / temp):
                x[e] = list(new)
                for i in flips:
                    viol[i] ^= 1
                cur += delta
        else:
            j = rng.randrange(nvars)
            delta = sum(1 - 2 * viol[i] for i in by_var[j])
            if delta <= 0 or rng.random() < math.exp(-delta / temp):
                y ^= 1 << j
                for i in by_var[j]:
                    viol[i] ^= 1
                cur += delta
        if cur < best[0]:
            best = (cur, [tuple(v) for v in x], y)
    assert npairs == len(viol)
    return best


def min_iocr(g: Graph, surface: str = "torus", budget: int = 2_000_000, order: Sequence[int] | None = None,
             seed: int = 0, anneal_steps: int = 200_000, restarts: int = 8) -> IocrResult:
    """Fewest odd independent pairs over all drawings on ``surface``.

    Exact search: every gauge-fixed ``x`` (only ``x = 0`` on the sphere) with
    the minimum coset weight of its right-hand side, pruned by the incumbent.
    When that does not fit in ``budget`` units of work the result comes from
    simulated annealing and is flagged inexact.
    """
    if surface not in ("sphere", "torus"):
        raise ValueError("surface must be 'sphere' or 'torus'")
    t0 = time.perf_counter()
    rng = random.Random(seed)
    ps = PairSystem(g, order)
    free = _cotree_order(g, _cotree(g)) if surface == "torus" else []
    columns = [0] * ps.n_constraints
    for t, vec in enumerate(ps.null):
        for p in bits_of(vec):
            columns[p] |= 1 << t

    def syndrome(x) -> int:
        b = ps.rhs(x)
        out = 0
        for t, vec in enumerate(ps.null):
            if parity(vec & b):
                out |= 1 << t
        return out

    def build(x, chosen) -> tuple[int, DrawingScheme]:
        b = ps.rhs(x)
        for p in chosen:
            b ^= 1 << p
        y = ps.system.solve(b)
        return y, ps.scheme(x, y)

    # heuristic incumbent first: it tightens the exact search
    best_val, best_x, best_y = ps.n_constraints + 1, None, None
    anneal_restarts = restarts if free else 1
    for r in range(anneal_restarts):
        x0 = None
        if r and free:
            x0 = [(0, 0)] * g.m
            for e in free:
                x0[e] = (rng.randrange(2), rng.randrange(2))
        val, xv, yv = _anneal(ps, free, anneal_steps, rng, x0)
        if val < best_val:
            best_val, best_x, best_y = val, xv, yv
        if best_val == 0:
            break
    exact = False
    work = 0
    n_x = 4 ** len(free)
    if best_val > 0 and n_x <= budget:
        exact = True
        for packed in range(n_x):
            x = [(0, 0)] * g.m
            for k, e in enumerate(free):
                x[e] = ((packed >> (2 * k)) & 1, (packed >> (2 * k + 1)) & 1)
            s = syndrome(x)
            w, chosen, exhausted, spent = _min_coset_weight(columns, s, best_val, budget - work)
            work += 1 + spent
            if not exhausted:
                exact = False
                break
            if w is not None and w < best_val:
                y, _ = build(x, chosen)
                best_val, best_x, best_y = w, x, y
                if w == 0:
                    break
    elif best_val == 0:
        exact = True
    scheme = ps.scheme(best_x, best_y)
    stats = {"time": time.perf_counter() - t0, "x_assignments": n_x, "work": work, "free_edges": len(free),
             "constraints": ps.n_constraints}
    return IocrResult(best_val, scheme, exact, stats)
