"""Simple connected graphs: construction, metrics, products, and text I/O.

Vertices are integers 0..n-1.  Edges are stored as a frozenset of (u, v)
pairs with u < v.  All graphs handled by this package are simple and
connected; the constructor enforces both.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .errors import InvalidParameterError


class Graph:
    """Immutable simple connected graph."""

    __slots__ = ("n", "edges", "adj", "_dist")

    def __init__(self, n: int, edges):
        if not isinstance(n, int) or n < 1:
            raise InvalidParameterError(f"vertex count must be a positive int, got {n!r}")
        norm = set()
        for e in edges:
            u, v = e
            if not (isinstance(u, int) and isinstance(v, int)):
                raise InvalidParameterError(f"edge endpoints must be ints: {e!r}")
            if u == v:
                raise InvalidParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidParameterError(f"edge {e!r} out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in norm:
                raise InvalidParameterError(f"duplicate edge {key!r}")
            norm.add(key)
        self.n = n
        self.edges = frozenset(norm)
        adj = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._dist = None
        # connectivity check: BFS from 0 must reach everything
        seen = [False] * n
        seen[0] = True
        q = deque([0])
        count = 1
        while q:
            x = q.popleft()
            for y in self.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    q.append(y)
        if count != n:
            raise InvalidParameterError("graph is not connected")

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def neighbors(self, v: int):
        return self.adj[v]

    def distance_matrix(self):
        """All-pairs hop distances as a list of lists (cached)."""
        if self._dist is None:
            n = self.n
            mat = []
            for s in range(n):
                dist = [-1] * n
                dist[s] = 0
                q = deque([s])
                while q:
                    x = q.popleft()
                    for y in self.adj[x]:
                        if dist[y] < 0:
                            dist[y] = dist[x] + 1
                            q.append(y)
                mat.append(dist)
            self._dist = mat
        return self._dist

    def dist(self, u: int, v: int) -> int:
        return self.distance_matrix()[u][v]

    def eccentricity(self, v: int) -> int:
        return max(self.distance_matrix()[v])

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1


@dataclass(frozen=True)
class GraphStructure:
    """Bundle of structural metrics for a graph."""

    diameter: int
    girth: float  # math.inf when acyclic
    vertex_connectivity: int
    cut_vertices: tuple


def structure(g: Graph) -> GraphStructure:
    """Compute diameter, girth, vertex connectivity, and cut vertices."""
    diam = max(max(row) for row in g.distance_matrix())
    return GraphStructure(
        diameter=diam,
        girth=_girth(g),
        vertex_connectivity=_vertex_connectivity(g),
        cut_vertices=tuple(sorted(_cut_vertices(g))),
    )


def _girth(g: Graph):
    """Length of a shortest cycle; inf for trees.

    For each edge (u,v), the shortest cycle through that edge has length
    1 + dist(u,v) in the graph with the edge removed.
    """
    if g.is_tree():
        return math.inf
    best = math.inf
    for u, v in g.edges:
        # BFS from u avoiding the edge (u,v) itself
        dist = [-1] * g.n
        dist[u] = 0
        q = deque([u])
        while q:
            x = q.popleft()
            if x == v:
                break
            for y in g.adj[x]:
                if (x == u and y == v) or (x == v and y == u):
                    continue
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        if dist[v] > 0:
            best = min(best, dist[v] + 1)
    return best


def _cut_vertices(g: Graph):
    """Articulation points by iterative lowpoint DFS."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cuts = set()
    timer = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        root_children = 0
        stack = [(root, iter(g.adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    parent[w] = v
                    if v == root:
                        root_children += 1
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, iter(g.adj[w])))
                    advanced = True
                    break
                elif w != parent[v]:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                p = parent[v]
                if p >= 0:
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cuts.add(p)
        if root_children >= 2:
            cuts.add(root)
    return cuts


def _vertex_connectivity(g: Graph) -> int:
    """Minimum number of vertices whose removal disconnects the graph.

    Complete graphs have connectivity n-1 by convention.  Otherwise the
    answer is the minimum s-t vertex cut over non-adjacent pairs, found
    with unit-capacity max-flow on the split digraph.
    """
    n = g.n
    if len(g.edges) == n * (n - 1) // 2:
        return n - 1
    best = n - 1
    for s in range(n):
        nbrs = set(g.adj[s])
        for t in range(s + 1, n):
            if t in nbrs:
                continue
            best = min(best, _vertex_maxflow(g, s, t, best))
    return best


def _vertex_maxflow(g: Graph, s: int, t: int, cap: int) -> int:
    """Max number of internally vertex-disjoint s-t paths, stopping at `cap`.

    Node splitting: in(v) = 2v, out(v) = 2v+1; internal arc capacity 1
    (unbounded for s and t); each edge contributes arcs out(u)->in(v) and
    out(v)->in(u) of effectively unbounded capacity.
    """
    big = g.n * 2
    res = {}

    def add(a, b, c):
        res.setdefault(a, {})[b] = res.get(a, {}).get(b, 0) + c
        res.setdefault(b, {}).setdefault(a, 0)

    for v in range(g.n):
        add(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges:
        add(2 * u + 1, 2 * v, big)
        add(2 * v + 1, 2 * u, big)
    src, snk = 2 * s + 1, 2 * t
    flow = 0
    while flow < cap:
        prev = {src: None}
        q = deque([src])
        while q and snk not in prev:
            x = q.popleft()
            for y, c in res[x].items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    q.append(y)
        if snk not in prev:
            break
        # unit augmentation is enough: every path has a capacity-1 arc
        y = snk
        while y != src:
            x = prev[y]
            res[x][y] -= 1
            res[y][x] += 1
            y = x
        flow += 1
    return flow


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product; vertex (v1, v2) gets id v1 * g2.n + v2."""
    n2 = g2.n
    edges = []
    for u, v in g1.edges:
        for w in range(n2):
            edges.append((u * n2 + w, v * n2 + w))
    for u, v in g2.edges:
        for w in range(g1.n):
            edges.append((w * n2 + u, w * n2 + v))
    return Graph(g1.n * n2, edges)


def product_costs(g1: Graph, g2: Graph, costs1, costs2):
    """Per-edge costs for cartesian_product(g1, g2).

    costs1/costs2 map factor edges (u,v) with u<v to an integer cost; an
    int is treated as a uniform cost.  Returns a dict on product edges.
    """

    def get(costs, e):
        if isinstance(costs, int):
            return costs
        return costs[e]

    n2 = g2.n
    out = {}
    for u, v in g1.edges:
        c = get(costs1, (u, v))
        for w in range(n2):
            out[(u * n2 + w, v * n2 + w)] = c
    for u, v in g2.edges:
        c = get(costs2, (u, v))
        for w in range(g1.n):
            a, b = w * n2 + u, w * n2 + v
            out[(a, b) if a < b else (b, a)] = c
    return out


def parse_graph(text: str) -> Graph:
    """Parse the plain edge-list format: first line "n m", then m lines "u v"."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidParameterError("empty graph description")
    head = lines[0].split()
    if len(head) != 2:
        raise InvalidParameterError(f"expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise InvalidParameterError(f"expected integer header 'n m', got {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise InvalidParameterError(f"header promises {m} edges, found {len(lines) - 1} lines")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidParameterError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidParameterError(f"bad edge line {ln!r}") from None
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {len(g.edges)}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"


def parse_distribution(text: str, n: int):
    """Parse n whitespace-separated non-negative pebble counts."""
    parts = text.split()
    if len(parts) != n:
        raise InvalidParameterError(f"expected {n} pebble counts, got {len(parts)}")
    try:
        counts = [int(p) for p in parts]
    except ValueError:
        raise InvalidParameterError("pebble counts must be integers") from None
    if any(c < 0 for c in counts):
        raise InvalidParameterError("pebble counts must be non-negative")
    return counts


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test (degree-pruned); fine for small graphs."""
    if g1.n != g2.n or len(g1.edges) != len(g2.edges):
        return False
    n = g1.n
    d1 = [len(g1.adj[v]) for v in range(n)]
    d2 = [len(g2.adj[v]) for v in range(n)]
    if sorted(d1) != sorted(d2):
        return False
    order = sorted(range(n), key=lambda v: -d1[v])
    adj2 = [set(a) for a in g2.adj]
    mapping = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        v = order[i]
        nbrs_v = set(g1.adj[v])
        for w in range(n):
            if used[w] or d1[v] != d2[w]:
                continue
            # edges and non-edges to already-placed vertices must agree
            if any((mapping[x] >= 0) and ((x in nbrs_v) != (mapping[x] in adj2[w]))
                   for x in range(n)):
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return extend(0)
