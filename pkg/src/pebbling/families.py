"""Named graph families and closed-form pebbling-number formulas.

Includes the tree formula computed from maximum path partitions, kept
deliberately independent of the exact search engine so the two can be
cross-checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .errors import InvalidParameterError, NotATreeError
from .graphs import Graph

_FAMILY_NAMES = ("path", "cycle", "complete", "star", "wheel", "hypercube",
                 "grid", "kneser", "petersen", "lemke", "foster_snevily", "wang")


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: tuple = ()

    def __post_init__(self):
        if self.name not in _FAMILY_NAMES:
            raise InvalidParameterError(f"unknown family {self.name!r}")
        object.__setattr__(self, "params", tuple(self.params))
        for x in self.params:
            if not isinstance(x, int):
                raise InvalidParameterError(f"family parameters must be ints: {self.params!r}")

    def __str__(self):
        if not self.params:
            return self.name
        return self.name + ":" + ",".join(str(x) for x in self.params)


def parse_family(text: str) -> FamilySpec:
    """Parse the CLI syntax, e.g. "cycle:7", "grid:2,1,1", "petersen"."""
    text = text.strip()
    name, _, rest = text.partition(":")
    if rest:
        try:
            params = tuple(int(x) for x in rest.split(","))
        except ValueError:
            raise InvalidParameterError(f"bad family parameters in {text!r}") from None
    else:
        params = ()
    return FamilySpec(name, params)


def _need_params(spec, count):
    if len(spec.params) != count:
        raise InvalidParameterError(
            f"family {spec.name!r} takes {count} parameter(s), got {len(spec.params)}")
    return spec.params if count != 1 else spec.params[0]


def grid_graph(dims, pbar=None):
    """Product of paths with dims[i] edges in dimension i.

    Returns (graph, costs) where costs maps each edge to the cost of its
    dimension (pbar[i], default 2).  Vertex ids are row-major: the last
    dimension varies fastest.
    """
    dims = tuple(dims)
    if not dims or any(not isinstance(d, int) or d < 1 for d in dims):
        raise InvalidParameterError(f"grid dimensions must be positive ints, got {dims!r}")
    if pbar is None:
        pbar = (2,) * len(dims)
    pbar = tuple(pbar)
    if len(pbar) != len(dims) or any(not isinstance(p, int) or p < 2 for p in pbar):
        raise InvalidParameterError(f"per-dimension costs {pbar!r} invalid for dims {dims!r}")
    sizes = [d + 1 for d in dims]
    strides = [0] * len(dims)
    acc = 1
    for i in reversed(range(len(dims))):
        strides[i] = acc
        acc *= sizes[i]
    n = acc
    edges = []
    costs = {}
    for flat in range(n):
        rem, coord = flat, []
        for i in range(len(dims)):
            coord.append(rem // strides[i])
            rem %= strides[i]
        for i in range(len(dims)):
            if coord[i] < dims[i]:
                e = (flat, flat + strides[i])
                edges.append(e)
                costs[e] = pbar[i]
    return Graph(n, edges), costs


def _subset_unrank(rank: int, t: int):
    """t-subset of the non-negative integers with the given colex rank."""
    out = []
    for j in range(t, 0, -1):
        c = j - 1
        while math.comb(c + 1, j) <= rank:
            c += 1
        out.append(c)
        rank -= math.comb(c, j)
    return tuple(reversed(out))


def subset_rank(subset) -> int:
    """Colex rank of a set of non-negative integers."""
    return sum(math.comb(c, j + 1) for j, c in enumerate(sorted(subset)))


def _lemke() -> Graph:
    # vertices a,b,c,d,w,x,y,z -> 0..7
    edges = [(0, 1), (0, 2), (0, 3)]
    edges += [(u, v) for u in (1, 2, 3) for v in (4, 7)]
    edges += [(4, 5), (5, 6), (6, 7), (7, 0)]
    return Graph(8, edges)


def _subdivide_at_zero(g: Graph, clique: bool) -> Graph:
    """Subdivide every edge incident with vertex 0; optionally join the new
    subdivision vertices into a clique."""
    nbrs = sorted(g.adj[0])
    edges = set(g.edges)
    fresh = []
    nxt = g.n
    for nb in nbrs:
        e = (0, nb)
        edges.discard(e)
        edges.add((0, nxt))
        edges.add((nb, nxt) if nb < nxt else (nxt, nb))
        fresh.append(nxt)
        nxt += 1
    if clique:
        edges.update(combinations(fresh, 2))
    return Graph(nxt, edges)


def generate(spec) -> Graph:
    """Build the canonical labeled graph for a family spec (or spec string)."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    name = spec.name
    if name == "path":
        v = _need_params(spec, 1)
        if v < 1:
            raise InvalidParameterError("path needs at least 1 vertex")
        return Graph(v, [(i, i + 1) for i in range(v - 1)])
    if name == "cycle":
        v = _need_params(spec, 1)
        if v < 3:
            raise InvalidParameterError("cycle needs at least 3 vertices")
        return Graph(v, [(i, (i + 1) % v) for i in range(v)])
    if name == "complete":
        n = _need_params(spec, 1)
        if n < 1:
            raise InvalidParameterError("complete graph needs at least 1 vertex")
        return Graph(n, combinations(range(n), 2))
    if name == "star":
        n = _need_params(spec, 1)
        if n < 2:
            raise InvalidParameterError("star needs at least 2 vertices")
        return Graph(n, [(0, i) for i in range(1, n)])
    if name == "wheel":
        n = _need_params(spec, 1)
        if n < 4:
            raise InvalidParameterError("wheel needs at least 4 vertices")
        rim = [(i, i % (n - 1) + 1) for i in range(1, n)]
        return Graph(n, rim + [(0, i) for i in range(1, n)])
    if name == "hypercube":
        m = _need_params(spec, 1)
        if m < 0:
            raise InvalidParameterError("hypercube dimension must be >= 0")
        if m == 0:
            return Graph(1, [])
        return grid_graph((1,) * m)[0]
    if name == "grid":
        if not spec.params:
            raise InvalidParameterError("grid needs at least one dimension")
        return grid_graph(spec.params)[0]
    if name == "kneser":
        n, t = _need_params(spec, 2)
        if t < 1 or n < 2 * t + 1:
            raise InvalidParameterError(f"kneser needs n >= 2t+1 >= 3, got ({n}, {t})")
        sets = [frozenset(_subset_unrank(r, t)) for r in range(math.comb(n, t))]
        edges = [(i, j) for i, j in combinations(range(len(sets)), 2)
                 if not (sets[i] & sets[j])]
        return Graph(len(sets), edges)
    if name == "petersen":
        _need_params(spec, 0)
        edges = [(i, (i + 1) % 5) for i in range(5)]
        edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        edges += [(i, 5 + i) for i in range(5)]
        return Graph(10, edges)
    if name == "lemke":
        _need_params(spec, 0)
        return _lemke()
    if name in ("foster_snevily", "wang"):
        k = _need_params(spec, 1)
        if k < 0:
            raise InvalidParameterError(f"{name} iteration count must be >= 0")
        g = _lemke()
        for _ in range(k):
            g = _subdivide_at_zero(g, clique=(name == "wang"))
        return g
    raise InvalidParameterError(f"unknown family {name!r}")


def formula(spec, pbar=None):
    """Closed-form pebbling number, or None for families without one."""
    if isinstance(spec, str):
        spec = parse_family(spec)
    if pbar is not None and spec.name != "grid":
        raise InvalidParameterError("per-dimension costs only apply to grid")
    if spec.name == "path":
        v = _need_params(spec, 1)
        return 2 ** (v - 1)
    if spec.name == "cycle":
        v = _need_params(spec, 1)
        if v % 2 == 0:
            return 2 ** (v // 2)
        k = (v - 1) // 2
        return 2 * (2 ** (k + 1) // 3) + 1
    if spec.name == "complete":
        return _need_params(spec, 1)
    if spec.name == "hypercube":
        return 2 ** _need_params(spec, 1)
    if spec.name == "grid":
        dims = spec.params
        if pbar is None:
            pbar = (2,) * len(dims)
        if len(pbar) != len(dims) or any(not isinstance(p, int) or p < 2 for p in pbar):
            raise InvalidParameterError(f"bad cost vector {pbar!r} for grid {dims!r}")
        out = 1
        for p, d in zip(pbar, dims):
            out *= p ** d
        return out
    return None


# ---------------------------------------------------------------------------
# tree path partitions and the tree pebbling formula


@dataclass(frozen=True)
class PathPartition:
    """Edge partition of a tree into simple paths, longest first.

    Each path is stored as its vertex sequence; lengths are edge counts.
    """

    paths: tuple

    @property
    def lengths(self):
        return tuple(len(p) - 1 for p in self.paths)


def _check_tree(g: Graph):
    if not g.is_tree():
        raise NotATreeError(f"graph with {g.n} vertices and {len(g.edges)} edges is not a tree")


def _rooted_partition(g: Graph, r: int) -> PathPartition:
    """Greedy maximum r-path partition: each path enters a vertex and leaves
    through the tallest child; remaining children start new paths (so every
    path starts at its vertex nearest the root)."""
    children = [[] for _ in range(g.n)]
    order = [r]
    seen = [False] * g.n
    seen[r] = True
    for v in order:
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                children[v].append(w)
                order.append(w)
    height = [0] * g.n
    for v in reversed(order):
        height[v] = 1 + max((height[c] for c in children[v]), default=-1)

    paths = []
    pending = []

    def extend(path, v):
        # run the path down through the tallest child; siblings start new
        # paths at their parent (the end nearest the root)
        while children[v]:
            kids = sorted(children[v], key=lambda c: (-height[c], c))
            for other in kids[1:]:
                pending.append((v, other))
            v = kids[0]
            path.append(v)
        paths.append(tuple(path))

    if g.n > 1:
        extend([r], r)
        while pending:
            top, child = pending.pop(0)
            extend([top, child], child)
    paths.sort(key=lambda p: (-(len(p) - 1), p))
    return PathPartition(tuple(paths))


def max_path_partition(g: Graph, r: int | None = None) -> PathPartition:
    """Majorization-maximum path partition of a tree.

    With r given, every path is well r-directed (its end nearest r is an
    endpoint).  Without r, the best rooted partition over all roots.
    """
    _check_tree(g)
    if r is not None:
        if not (isinstance(r, int) and 0 <= r < g.n):
            raise InvalidParameterError(f"root {r!r} out of range")
        return _rooted_partition(g, r)
    best = None
    for v in range(g.n):
        cand = _rooted_partition(g, v)
        if best is None or cand.lengths > best.lengths:
            best = cand
    return best


def tree_formula(g: Graph, r: int | None = None, k: int = 1) -> int:
    """Pebbling number of a tree from its maximum path partition:
    k*2^{q_1} + sum_{i>=2} 2^{q_i} - m + 1."""
    _check_tree(g)
    if not isinstance(k, int) or k < 1:
        raise InvalidParameterError(f"k must be a positive int, got {k!r}")
    if g.n == 1:
        return k
    if r is None:
        return max(tree_formula(g, v, k) for v in range(g.n))
    q = max_path_partition(g, r).lengths
    return k * 2 ** q[0] + sum(2 ** qi for qi in q[1:]) - len(q) + 1
