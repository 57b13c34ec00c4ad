"""Finite simple graphs: canonical edge-list storage, structural queries, text I/O.

Vertices are 0-based indices internally; human-facing reports elsewhere in the
package print 1-based names (v1, v2, ...) and say so.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

INF = math.inf

Edge = tuple[int, int]


class GraphError(ValueError):
    """Graph construction or parse failure, with a machine-checkable code."""

    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.line = line
        at = f" (line {line})" if line is not None else ""
        super().__init__(f"{code}: {message}{at}")


def _canonical_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices 0..n-1 with sorted, duplicate-free edges."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("bad-header", "vertex count must be non-negative")
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise GraphError("loop-edge", f"loop at vertex {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise GraphError("index-out-of-range", f"edge ({i},{j}) exceeds n={self.n}")
            if i > j:
                raise GraphError("bad-edge-order", f"edge ({i},{j}) not stored as i<j")
            if (i, j) in seen:
                raise GraphError("duplicate-edge", f"edge ({i},{j}) repeated")
            seen.add((i, j))
        if list(self.edges) != sorted(self.edges):
            raise GraphError("bad-edge-order", "edges not in canonical sorted order")

    @staticmethod
    def build(n: int, edges) -> "Graph":
        """Construct from any iterable of vertex pairs, canonicalizing order."""
        canon = sorted({_canonical_edge(i, j) for i, j in edges})
        return Graph(n, tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in self.edges:
            nbrs[i].append(j)
            nbrs[j].append(i)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def has_edge(self, i: int, j: int) -> bool:
        return _canonical_edge(i, j) in self.edge_set

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def isolated_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if not self.adjacency[v])

    def _check_vertex(self, v: int):
        if not (0 <= v < self.n):
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, ordered by smallest member."""
        seen = [False] * self.n
        out = []
        for root in range(self.n):
            if seen[root]:
                continue
            block = []
            queue = deque([root])
            seen[root] = True
            while queue:
                v = queue.popleft()
                block.append(v)
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
            out.append(tuple(sorted(block)))
        return out

    def distance(self, u: int, v: int) -> float:
        """BFS shortest-path length; INF when no path exists."""
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            return 0
        dist = {u: 0}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    if y == v:
                        return dist[y]
                    queue.append(y)
        return INF

    def distances_from(self, u: int) -> list[float]:
        self._check_vertex(u)
        dist: list[float] = [INF] * self.n
        dist[u] = 0
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if dist[y] == INF:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist

    def girth(self) -> float:
        """Length of a shortest cycle; INF for forests. BFS from every vertex."""
        best = INF
        for root in range(self.n):
            dist = {root: 0}
            parent = {root: -1}
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        parent[w] = v
                        queue.append(w)
                    elif parent[v] != w:
                        best = min(best, dist[v] + dist[w] + 1)
        return best

    def is_forest(self) -> bool:
        return self.m == self.n - len(self.components())

    def component_stats(self) -> list[tuple[int, int, bool]]:
        """Per-component (vertex count, edge count, is_tree); trees satisfy |V|=|E|+1."""
        out = []
        for block in self.components():
            verts = set(block)
            ecount = sum(1 for i, j in self.edges if i in verts)
            out.append((len(block), ecount, ecount == len(block) - 1))
        return out

    def blow_up(self, k) -> "Graph":
        """Replace vertex v_i by k_i copies; copies adjacent iff the originals were.

        Copies of v_0 come first, then copies of v_1, and so on.
        """
        k = list(k)
        if len(k) != self.n:
            raise GraphError("bad-blowup", f"need {self.n} multiplicities, got {len(k)}")
        if any(x < 1 for x in k):
            raise GraphError("bad-blowup", "multiplicities must be >= 1")
        offset = [0] * self.n
        total = 0
        for v in range(self.n):
            offset[v] = total
            total += k[v]
        edges = []
        for i, j in self.edges:
            for a in range(k[i]):
                for b in range(k[j]):
                    edges.append((offset[i] + a, offset[j] + b))
        return Graph.build(total, edges)

    def with_isolated(self) -> "Graph":
        """The graph with one appended isolated vertex (index n)."""
        return Graph(self.n + 1, self.edges)

    def union(self, other: "Graph") -> "Graph":
        """Disjoint union; other's vertices are shifted past self's."""
        shifted = [(i + self.n, j + self.n) for i, j in other.edges]
        return Graph.build(self.n + other.n, list(self.edges) + shifted)

    def serialize(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{i} {j}" for i, j in self.edges]
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        """Best-effort undirected DOT export with 1-based vertex names."""
        lines = ["graph G {"]
        lines += [f"  v{v + 1};" for v in range(self.n)]
        lines += [f"  v{i + 1} -- v{j + 1};" for i, j in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header "n m", then m lines "i j" with 0 <= i < j < n."""
    lines = [ln for ln in text.splitlines()]
    if not lines or not lines[0].strip():
        raise GraphError("bad-header", "missing 'n m' header", line=1)
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError("bad-header", f"expected 'n m', got {lines[0]!r}", line=1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise GraphError("bad-header", f"non-integer header {lines[0]!r}", line=1) from None
    if n < 0 or m < 0:
        raise GraphError("bad-header", "negative counts", line=1)
    body = [(idx + 2, ln) for idx, ln in enumerate(lines[1:]) if ln.strip()]
    if len(body) != m:
        raise GraphError("edge-count-mismatch", f"header says {m} edges, found {len(body)}")
    edges = []
    seen = set()
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError("bad-edge-line", f"expected 'i j', got {ln!r}", line=lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError("bad-edge-line", f"non-integer endpoints {ln!r}", line=lineno) from None
        if i == j:
            raise GraphError("loop-edge", f"loop at vertex {i}", line=lineno)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError("index-out-of-range", f"edge ({i},{j}) exceeds n={n}", line=lineno)
        e = _canonical_edge(i, j)
        if e in seen:
            raise GraphError("duplicate-edge", f"edge {e} repeated", line=lineno)
        seen.add(e)
        edges.append(e)
    return Graph(n, tuple(sorted(edges)))


def is_perfect_matching(g: Graph, m) -> bool:
    """True iff every vertex of g lies in exactly one edge of m (m must be edges of g)."""
    count = [0] * g.n
    for i, j in m:
        e = _canonical_edge(i, j)
        if e not in g.edge_set:
            raise GraphError("not-an-edge", f"{e} is not an edge of the graph")
        count[e[0]] += 1
        count[e[1]] += 1
    return all(c == 1 for c in count)
