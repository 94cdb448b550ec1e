"""Simple undirected graphs with dense integer ids, generators and graph6 I/O."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class EdgePair(NamedTuple):
    e: int
    f: int
    adjacent: bool


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Edges are stored as ``(u, v)`` with ``u < v``; the edge id is the position
    in :attr:`edges`.  Construction keeps the given edge order, so callers that
    append edges keep earlier ids stable.
    """

    __slots__ = ("n", "edges", "__dict__")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = []
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            norm.append(key)
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, in increasing id order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {uv: i for i, uv in enumerate(self.edges)}

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self.edge_index[key]
        except KeyError:
            raise ValueError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edge_index

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.other(e, v) for e in self.incident[v])

    def degree(self, v: int) -> int:
        return len(self.incident[v])

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v} is not an endpoint of edge {e}")

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash((self.n, self.edge_set()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def components(self) -> list[list[int]]:
        """Vertex lists of connected components, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.neighbors(u):
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed ``perm[v]``; edge ids are kept."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of the vertices")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def delete_edges(self, drop: Iterable[int]) -> Graph:
        drop = set(drop)
        return Graph(self.n, [uv for i, uv in enumerate(self.edges) if i not in drop])

    def induced(self, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph relabelled to ``0..k-1`` plus the old-vertex list."""
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(vs), edges), vs

    def girth(self) -> int | None:
        """Length of a shortest cycle, ``None`` for forests."""
        best = None
        for s in range(self.n):
            dist = {s: 0}
            parent = {s: -1}
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.neighbors(u):
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        c = dist[u] + dist[w] + 1
                        if best is None or c < best:
                            best = c
        return best


# --------------------------------------------------------------------------
# generators


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("n must be >= 1")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with side A = ``0..a-1`` and side B = ``a..a+b-1``."""
    if a < 1 or b < 1:
        raise ValueError("both sides must be non-empty")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(k: int) -> Graph:
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)])


_HUBS = {"a": 0, "b": 1, "c": 2}


def k3n_with_bracers(n: int, bracers: Iterable[Sequence] = ()) -> Graph:
    """K_{3,n} on hubs a=0, b=1, c=2 plus bracer paths between hubs.

    Each bracer is ``(x, y, length)`` with ``x, y`` in ``{"a","b","c"}`` (or
    ``0, 1, 2``) and length 1 or 2.  Length-2 bracers get a fresh interior
    vertex appended after the ``n`` spoke vertices.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    edges = [(h, 3 + j) for h in range(3) for j in range(n)]
    extra = 0
    direct = set()
    for x, y, length in bracers:
        u = _HUBS.get(x, x)
        w = _HUBS.get(y, y)
        if u not in (0, 1, 2) or w not in (0, 1, 2) or u == w:
            raise ValueError(f"bad bracer endpoints {x!r}, {y!r}")
        if length == 1:
            key = (min(u, w), max(u, w))
            if key in direct:
                raise ValueError(f"duplicate length-1 bracer {x}{y}")
            direct.add(key)
            edges.append(key)
        elif length == 2:
            mid = 3 + n + extra
            extra += 1
            edges += [(u, mid), (w, mid)]
        else:
            raise ValueError("bracer length must be 1 or 2")
    return Graph(3 + n + extra, edges)


# --------------------------------------------------------------------------
# spanning trees and edge pairs


def spanning_tree(g: Graph) -> list[int]:
    """Edge ids of the BFS spanning forest (roots in vertex order, neighbors by id)."""
    seen = [False] * g.n
    tree = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    tree.append(g.edge_id(u, w))
                    queue.append(w)
    return sorted(tree)


def fundamental_cycles(g: Graph) -> list[list[int]]:
    """One cycle (as a vertex list) per cotree edge of :func:`spanning_tree`."""
    tree = set(spanning_tree(g))
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in range(g.n):
        if root in depth:
            continue
        depth[root] = 0
        parent[root] = -1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for e in g.incident[u]:
                if e in tree:
                    w = g.other(e, u)
                    if w not in depth:
                        depth[w] = depth[u] + 1
                        parent[w] = u
                        queue.append(w)
    cycles = []
    for e, (u, v) in enumerate(g.edges):
        if e in tree:
            continue
        left, right = [u], [v]
        a, b = u, v
        while a != b:
            if depth[a] >= depth[b]:
                a = parent[a]
                left.append(a)
            else:
                b = parent[b]
                right.append(b)
        cycles.append(left + right[-2::-1])
    return cycles


def edge_pairs(g: Graph) -> Iterator[EdgePair]:
    for e, f in combinations(range(g.m), 2):
        yield EdgePair(e, f, bool(set(g.edges[e]) & set(g.edges[f])))


def independent_pairs(g: Graph) -> Iterator[EdgePair]:
    """Pairs of edges with four distinct endpoints, sorted by ``(e, f)``."""
    for p in edge_pairs(g):
        if not p.adjacent:
            yield p


# --------------------------------------------------------------------------
# graph6


def _size_bytes(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise ValueError("graph6 sizes above 258047 are not supported")


def write_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits += [0] * (-len(bits) % 6)
    body = []
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        body.append(chr(63 + val))
    return _size_bytes(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    line = text.strip("\r\n")
    start = 0
    if line.startswith(">>graph6<<"):
        start = len(">>graph6<<")
    data = line[start:]
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ch!r} outside the graph6 range 63..126", start + i)
    if not data:
        raise Graph6Error("empty graph6 string", start)
    if data[0] != "~":
        n, pos = ord(data[0]) - 63, 1
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size prefix", start + len(data))
        if data[1] == "~":
            raise Graph6Error("8-byte size prefix not supported", start + 1)
        n = 0
        for ch in data[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        pos = 4
        if n < 63:
            raise Graph6Error("non-canonical long size prefix", start)
    need = (n * (n - 1) // 2 + 5) // 6
    have = len(data) - pos
    if have < need:
        raise Graph6Error(f"expected {need} edge bytes, found {have}", start + len(data))
    if have > need:
        raise Graph6Error("trailing bytes after graph", start + pos + need)
    bits = []
    for ch in data[pos:]:
        val = ord(ch) - 63
        bits.extend((val >> s) & 1 for s in range(5, -1, -1))
    pad = bits[n * (n - 1) // 2:]
    if any(pad):
        raise Graph6Error("non-zero padding bits", start + len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, sorted(edges))


def read_graph6_file(path) -> list[Graph]:
    graphs = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if not line or line == ">>graph6<<":
                continue
            graphs.append(parse_graph6(line))
    return graphs
