"""Pebbling reachability and pebbling numbers.

A move removes `cost` pebbles from one endpoint of an edge and places a
single pebble on the other endpoint.  A distribution is solvable for a
root when some move sequence accumulates k pebbles there.  Searches can
be restricted to greedy moves (strictly distance-decreasing), semi-greedy
moves (non-increasing), or tree moves (the set of traversed edges must
stay acyclic; re-traversing an edge is allowed).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from heapq import heappop, heappush

import numpy as np

from .errors import InternalInvariantError, InvalidParameterError, ResourceLimitError
from .graphs import Graph

_CHUNK = 4096
_MEMO_CAP = 4_000_000


class SolveMode(Enum):
    UNRESTRICTED = "unrestricted"
    GREEDY = "greedy"
    SEMI_GREEDY = "semi-greedy"
    TREE_SOLVABLE = "tree"

    @classmethod
    def from_string(cls, s: str) -> "SolveMode":
        key = s.strip().lower().replace("_", "-")
        aliases = {
            "unrestricted": cls.UNRESTRICTED,
            "greedy": cls.GREEDY,
            "semi-greedy": cls.SEMI_GREEDY,
            "semigreedy": cls.SEMI_GREEDY,
            "tree": cls.TREE_SOLVABLE,
            "tree-solvable": cls.TREE_SOLVABLE,
        }
        if key not in aliases:
            raise InvalidParameterError(f"unknown solve mode {s!r}")
        return aliases[key]


@dataclass(frozen=True)
class Move:
    """Remove `cost` pebbles from src, place one pebble on dst."""

    src: int
    dst: int
    cost: int


@dataclass(frozen=True)
class SolveResult:
    solvable: bool
    root: int
    moves: tuple | None  # witness move sequence when solvable and requested


def _validate_counts(g: Graph, counts):
    counts = tuple(counts)
    if len(counts) != g.n:
        raise InvalidParameterError(f"distribution has {len(counts)} entries for n={g.n}")
    for c in counts:
        if not isinstance(c, int) or c < 0:
            raise InvalidParameterError(f"pebble count {c!r} must be a non-negative int")
    return counts


def _edge_costs(g: Graph, p, costs):
    """Normalize per-edge costs to a dict keyed by (u, v) with u < v."""
    if costs is None:
        if not isinstance(p, int) or p < 2:
            raise InvalidParameterError(f"pebbling cost must be an int >= 2, got {p!r}")
        return {e: p for e in g.edges}
    out = {}
    for u, v in g.edges:
        c = costs.get((u, v), costs.get((v, u)))
        if c is None:
            raise InvalidParameterError(f"missing cost for edge ({u}, {v})")
        if not isinstance(c, int) or c < 2:
            raise InvalidParameterError(f"cost for edge ({u}, {v}) must be an int >= 2")
        out[(u, v)] = c
    for key in costs:
        a, b = key
        e = (a, b) if a < b else (b, a)
        if e not in out:
            raise InvalidParameterError(f"cost given for non-edge {key!r}")
    return out


def _mincosts(g: Graph, root: int, ecosts):
    """mincost[v] = min over v->root paths of the product of edge costs.

    Dijkstra works unchanged with multiplication because all costs are
    >= 2, so products only grow along a path.
    """
    best = [None] * g.n
    best[root] = 1
    heap = [(1, root)]
    while heap:
        d, v = heappop(heap)
        if d > best[v]:
            continue
        for w in g.adj[v]:
            e = (v, w) if v < w else (w, v)
            nd = d * ecosts[e]
            if best[w] is None or nd < best[w]:
                best[w] = nd
                heappush(heap, (nd, w))
    return best


def weight(g: Graph, counts, root: int, p: int = 2, costs=None) -> Fraction:
    """Root-weight of a distribution: sum of counts[v] / mincost(v, root).

    With the default uniform cost this is sum of counts[v] / 2**dist(v, root).
    Weight never increases under pebbling moves, and k pebbles on the root
    weigh k, so weight < k proves k-fold unsolvability.
    """
    counts = _validate_counts(g, counts)
    ecosts = _edge_costs(g, p, costs)
    mc = _mincosts(g, root, ecosts)
    return sum((Fraction(counts[v], mc[v]) for v in range(g.n)), Fraction(0))


def _hop_parents(g: Graph, root: int, prefer_max: bool):
    """Parent map of a BFS tree toward root; ties broken by vertex id."""
    dist = g.distance_matrix()[root]
    parents = [None] * g.n
    for v in range(g.n):
        if v == root:
            continue
        cands = [w for w in g.adj[v] if dist[w] == dist[v] - 1]
        parents[v] = max(cands) if prefer_max else min(cands)
    return parents


def _cascade(g, counts, root, parents, ecosts, want_moves):
    """Push everything toward the root along a fixed parent map.

    Returns (pebbles collected at root, move list or None).  Exact on
    trees; a reachability lower bound in general.  All emitted moves
    strictly decrease distance to root, so the witness is valid in every
    solve mode.
    """
    dist = g.distance_matrix()[root]
    order = sorted((v for v in range(g.n) if v != root), key=lambda v: -dist[v])
    avail = list(counts)
    moves = [] if want_moves else None
    for v in order:
        p = parents[v]
        e = (v, p) if v < p else (p, v)
        c = ecosts[e]
        x = avail[v] // c
        if x:
            avail[p] += x
            avail[v] -= x * c
            if want_moves:
                moves.extend([Move(v, p, c)] * x)
    return avail[root], moves


class _RootCtx:
    """Static per-root data shared by searches: distances, legal directed
    moves in the requested mode, integer weight coefficients, and a memo
    of states proven unsolvable (valid across start distributions)."""

    __slots__ = ("g", "root", "k", "mode", "ecosts", "dist", "moves",
                 "wint", "wtot", "target", "memo", "memo_full")

    def __init__(self, g, root, k, mode, ecosts):
        self.g = g
        self.root = root
        self.k = k
        self.mode = mode
        self.ecosts = ecosts
        self.dist = g.distance_matrix()[root]
        mc = _mincosts(g, root, ecosts)
        self.wtot = math.lcm(*mc)
        self.wint = [self.wtot // m for m in mc]
        self.target = k * self.wtot
        moves = []
        for u, v in g.edges:
            c = ecosts[(u, v)]
            for a, b in ((u, v), (v, u)):
                if mode is SolveMode.GREEDY and not self.dist[b] < self.dist[a]:
                    continue
                if mode is SolveMode.SEMI_GREEDY and not self.dist[b] <= self.dist[a]:
                    continue
                moves.append((a, b, c))
        # most progress toward the root first
        moves.sort(key=lambda m: (self.dist[m[1]] - self.dist[m[0]], self.dist[m[1]]))
        self.moves = tuple(moves)
        self.memo = set()
        self.memo_full = False


def _forest_joins(used, a, b):
    """True if a and b are already connected by the used edge set."""
    if not used:
        return False
    adj = {}
    for u, v in used:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if a not in adj or b not in adj:
        return False
    seen = {a}
    q = deque([a])
    while q:
        x = q.popleft()
        if x == b:
            return True
        for y in adj.get(x, ()):
            if y not in seen:
                seen.add(y)
                q.append(y)
    return False


def _search(ctx: _RootCtx, counts, budget, want_witness):
    """Depth-first reachability search.  Returns a move tuple when the
    root can collect k pebbles, else None.  `budget` is a single-element
    list of remaining expansions shared by the caller."""
    k, root, mode = ctx.k, ctx.root, ctx.mode
    tree_mode = mode is SolveMode.TREE_SOLVABLE
    target = ctx.target
    wint = ctx.wint
    memo = ctx.memo
    path = [] if want_witness else None

    def rec(state, used, wsum):
        if state[root] >= k:
            return True
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise ResourceLimitError("search budget exhausted")
        key = (state, used) if tree_mode else state
        if key in memo:
            return False
        for a, b, c in ctx.moves:
            if state[a] < c:
                continue
            nw = wsum - c * wint[a] + wint[b]
            if nw < target:
                continue
            if tree_mode:
                e = (a, b) if a < b else (b, a)
                if e in used:
                    nused = used
                elif _forest_joins(used, a, b):
                    continue
                else:
                    nused = used | {e}
            else:
                nused = used
            ns = list(state)
            ns[a] -= c
            ns[b] += 1
            if want_witness:
                path.append(Move(a, b, c))
            if rec(tuple(ns), nused, nw):
                return True
            if want_witness:
                path.pop()
        if not ctx.memo_full:
            memo.add(key)
            if len(memo) > _MEMO_CAP:
                ctx.memo_full = True
        return False

    w0 = sum(c * w for c, w in zip(counts, wint))
    if w0 < target:
        return None
    if rec(tuple(counts), frozenset(), w0):
        return tuple(path) if want_witness else ()
    return None


def solvable(g: Graph, counts, root: int, k: int = 1, p: int = 2,
             mode: SolveMode = SolveMode.UNRESTRICTED, costs=None,
             budget: int | None = None, want_witness: bool = True) -> SolveResult:
    """Decide whether the distribution can place k pebbles on the root."""
    counts = _validate_counts(g, counts)
    if not isinstance(root, int) or not (0 <= root < g.n):
        raise InvalidParameterError(f"root {root!r} out of range")
    if not isinstance(k, int) or k < 1:
        raise InvalidParameterError(f"k must be a positive int, got {k!r}")
    ecosts = _edge_costs(g, p, costs)
    if counts[root] >= k:
        return SolveResult(True, root, () if want_witness else None)
    if g.is_tree():
        # the four modes coincide on trees and the push-everything cascade
        # along tree edges is exactly optimal
        parents = _hop_parents(g, root, False)
        got, moves = _cascade(g, counts, root, parents, ecosts, want_witness)
        if got >= k:
            return SolveResult(True, root, tuple(moves) if want_witness else None)
        return SolveResult(False, root, None)
    for prefer_max in (False, True):
        parents = _hop_parents(g, root, prefer_max)
        got, moves = _cascade(g, counts, root, parents, ecosts, want_witness)
        if got >= k:
            return SolveResult(True, root, tuple(moves) if want_witness else None)
    ctx = _RootCtx(g, root, k, mode, ecosts)
    res = _search(ctx, counts, [budget] if budget is not None else None, want_witness)
    if res is None:
        return SolveResult(False, root, None)
    return SolveResult(True, root, res if want_witness else None)


def replay(g: Graph, counts, moves, root: int, k: int = 1, p: int = 2,
           mode: SolveMode = SolveMode.UNRESTRICTED, costs=None):
    """Apply a move sequence, validating every step; returns final counts.

    Raises InvalidParameterError on an illegal move (bad edge, wrong cost,
    not enough pebbles, or a mode violation).
    """
    counts = _validate_counts(g, counts)
    ecosts = _edge_costs(g, p, costs)
    dist = g.distance_matrix()[root]
    cur = list(counts)
    used = set()
    for i, mv in enumerate(moves):
        a, b, c = mv.src, mv.dst, mv.cost
        e = (a, b) if a < b else (b, a)
        if e not in g.edges:
            raise InvalidParameterError(f"move {i}: ({a}, {b}) is not an edge")
        if c != ecosts[e]:
            raise InvalidParameterError(f"move {i}: cost {c} != edge cost {ecosts[e]}")
        if cur[a] < c:
            raise InvalidParameterError(f"move {i}: only {cur[a]} pebbles at {a}, need {c}")
        if mode is SolveMode.GREEDY and not dist[b] < dist[a]:
            raise InvalidParameterError(f"move {i}: not strictly closer to root {root}")
        if mode is SolveMode.SEMI_GREEDY and not dist[b] <= dist[a]:
            raise InvalidParameterError(f"move {i}: moves away from root {root}")
        if mode is SolveMode.TREE_SOLVABLE and e not in used:
            if _forest_joins(used, a, b):
                raise InvalidParameterError(f"move {i}: traversed edges would contain a cycle")
            used.add(e)
        cur[a] -= c
        cur[b] += 1
    return cur


def verify_witness(g: Graph, counts, moves, root: int, k: int = 1, p: int = 2,
                   mode: SolveMode = SolveMode.UNRESTRICTED, costs=None) -> bool:
    """True when the move sequence is legal and leaves >= k pebbles on root."""
    try:
        final = replay(g, counts, moves, root, k=k, p=p, mode=mode, costs=costs)
    except InvalidParameterError:
        return False
    return final[root] >= k


# ---------------------------------------------------------------------------
# pebbling numbers: exact tree dynamic program


def _tree_children(g: Graph, root: int):
    """(children lists, BFS order from root) for a tree."""
    children = [[] for _ in range(g.n)]
    order = [root]
    seen = [False] * g.n
    seen[root] = True
    q = deque([root])
    while q:
        v = q.popleft()
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                children[v].append(w)
                order.append(w)
                q.append(w)
    return children, order


def _tree_max_unsolvable(g: Graph, root: int, k: int, ecosts):
    """Largest distribution from which the root can never collect k
    pebbles, by maximizing subtree content subject to delivery quotas.

    best(v, s) = most pebbles in v's subtree given that at most s pebbles
    can ever be forwarded from v to its parent.  v's bank is then at most
    B = c*s + c - 1 (c the parent edge cost), split between pebbles kept
    at v and deliveries bought from children.  Returns (size, counts).
    """
    children, _ = _tree_children(g, root)
    parent_cost = {}
    stack = [root]
    while stack:
        v = stack.pop()
        for w in children[v]:
            e = (v, w) if v < w else (w, v)
            parent_cost[w] = ecosts[e]
            stack.append(w)

    memo = {}
    pick = {}

    def best(v, s):
        if (v, s) in memo:
            return memo[(v, s)]
        c = parent_cost[v]
        B = c * s + c - 1
        val, quotas = _combine(v, B)
        memo[(v, s)] = B + val
        pick[(v, s)] = (B, quotas)
        return B + val

    def _combine(v, B):
        """max over child quotas with sum <= B of sum(best(child, x) - x)."""
        kids = children[v]
        H = [0] * (B + 1)
        arg = []
        for kid in kids:
            phi = [best(kid, x) - x for x in range(B + 1)]
            newH = [0] * (B + 1)
            amax = [0] * (B + 1)
            for b in range(B + 1):
                bv, bx = H[b] + phi[0], 0
                for x in range(1, b + 1):
                    cand = H[b - x] + phi[x]
                    if cand > bv:
                        bv, bx = cand, x
                newH[b] = bv
                amax[b] = bx
            H = newH
            arg.append(amax)
        quotas = []
        b = B
        for kid, amax in zip(reversed(kids), reversed(arg)):
            x = amax[b]
            quotas.append((kid, x))
            b -= x
        return H[B], quotas

    B0 = k - 1
    val, quotas = _combine(root, B0)
    size = B0 + val
    counts = [0] * g.n
    stack = [(root, B0, quotas)]
    while stack:
        v, B, qs = stack.pop()
        own = B
        for kid, x in qs:
            own -= x
            best(kid, x)  # ensure pick entry exists
            kb, kq = pick[(kid, x)]
            stack.append((kid, kb, kq))
        counts[v] = own
    if sum(counts) != size:
        raise InternalInvariantError("tree witness reconstruction mismatch")
    return size, tuple(counts)


# ---------------------------------------------------------------------------
# pebbling numbers: general scan over distribution sizes


def _capped_compositions(total, caps):
    """All length-len(caps) compositions of `total` with per-slot caps,
    first slot taking the largest feasible value first."""
    n = len(caps)
    suffix = [0] * (n + 1)
    for i in reversed(range(n)):
        suffix[i] = suffix[i + 1] + caps[i]
    cur = [0] * n

    def rec(i, rem):
        if i == n - 1:
            if rem <= caps[i]:
                cur[i] = rem
                yield tuple(cur)
            return
        hi = min(caps[i], rem)
        lo = max(0, rem - suffix[i + 1])
        for x in range(hi, lo - 1, -1):
            cur[i] = x
            yield from rec(i + 1, rem - x)

    if total <= suffix[0]:
        yield from rec(0, total)


class _RootScan:
    """Per-root state for the ascending-size scan."""

    __slots__ = ("root", "mc", "caps", "lo", "ctx", "order", "inv", "wint_o",
                 "carryA", "carryB", "done")

    def __init__(self, g, root, k, mode, ecosts):
        self.root = root
        self.mc = _mincosts(g, root, ecosts)
        self.caps = [k * m - 1 for m in self.mc]
        self.caps[root] = k - 1
        self.lo = max(g.n + k - 1, k * max(self.mc))
        self.ctx = _RootCtx(g, root, k, mode, ecosts)
        # enumerate far (expensive-to-deliver) vertices first
        self.order = sorted(range(g.n), key=lambda v: (-self.mc[v], v))
        self.inv = {v: i for i, v in enumerate(self.order)}
        self.wint_o = np.array([self.ctx.wint[v] for v in self.order], dtype=np.int64)
        dist = g.distance_matrix()[root]
        self.carryA = self._carry_plan(g, root, ecosts, dist, False)
        self.carryB = self._carry_plan(g, root, ecosts, dist, True)
        self.done = False

    def _carry_plan(self, g, root, ecosts, dist, prefer_max):
        parents = _hop_parents(g, root, prefer_max)
        plan = []
        for v in sorted((v for v in range(g.n) if v != root), key=lambda v: -dist[v]):
            p = parents[v]
            e = (v, p) if v < p else (p, v)
            plan.append((self.inv[v], self.inv[p], ecosts[e]))
        return plan


def _carry_chunk(chunk, plan, root_col, k):
    """Rows whose fixed-tree cascade already collects k pebbles are solvable."""
    avail = chunk.copy()
    for cv, cp, c in plan:
        avail[:, cp] += avail[:, cv] // c
    return avail[:, root_col] >= k


def _find_unsolvable(g, rs: _RootScan, t, k, budget):
    """First (in far-heavy order) size-t distribution unsolvable for rs.root,
    or None when every size-t distribution is solvable."""
    caps_o = [rs.caps[v] for v in rs.order]
    if sum(caps_o) < t:
        return None
    use_numpy = rs.ctx.wtot <= (1 << 52) // max(t, 1)
    root_col = rs.inv[rs.root]
    target = rs.ctx.target
    gen = _capped_compositions(t, caps_o)
    while True:
        rows = []
        for row in gen:
            rows.append(row)
            if len(rows) >= _CHUNK:
                break
        if not rows:
            return None
        chunk = np.array(rows, dtype=np.int64)
        if use_numpy:
            W = chunk @ rs.wint_o
            deficient = np.nonzero(W < target)[0]
            if deficient.size:
                # weight below k proves unsolvability outright
                row = rows[int(deficient[0])]
                return _to_graph_order(row, rs)
            keep = ~(_carry_chunk(chunk, rs.carryA, root_col, k)
                     | _carry_chunk(chunk, rs.carryB, root_col, k))
            survivors = (rows[int(i)] for i in np.nonzero(keep)[0])
        else:
            survivors = iter(rows)
        for row in survivors:
            counts = _to_graph_order(row, rs)
            if _search(rs.ctx, counts, budget, want_witness=False) is None:
                return counts


def _to_graph_order(row, rs: _RootScan):
    counts = [0] * len(row)
    for i, v in enumerate(rs.order):
        counts[v] = row[i]
    return tuple(counts)


def _construct_floor_witness(g, rs: _RootScan, t, k):
    """A size-t unsolvable distribution for t below the scan floor."""
    mc_star = max(rs.mc)
    if t < k * mc_star:
        v_star = rs.mc.index(mc_star)
        counts = [0] * g.n
        counts[v_star] = t  # weight t/mc < k
        return tuple(counts)
    # t <= n + k - 2: k-1 on the root and single pebbles elsewhere leave
    # every vertex below the cheapest move cost
    counts = [0] * g.n
    at_root = min(t, k - 1)
    counts[rs.root] = at_root
    rem = t - at_root
    if rem > g.n - 1:
        raise InternalInvariantError("witness construction out of range")
    for v in range(g.n):
        if v != rs.root and rem:
            counts[v] = 1
            rem -= 1
    return tuple(counts)


def _scan(g: Graph, roots, k, mode, ecosts, budget):
    """Least t such that every size-t distribution is solvable for every
    root in `roots`; also returns a size t-1 unsolvable witness."""
    budget_ref = [budget] if budget is not None else None
    scans = [_RootScan(g, r, k, mode, ecosts) for r in roots]
    t0 = max(rs.lo for rs in scans)
    witness = None  # (t, counts, root)
    t = t0
    while True:
        dirty = False
        for idx, rs in enumerate(scans):
            if rs.done:
                continue
            try:
                bad = _find_unsolvable(g, rs, t, k, budget_ref)
            except ResourceLimitError as e:
                raise ResourceLimitError(str(e), lo=t, hi=None) from None
            if bad is not None:
                witness = (t, bad, rs.root)
                dirty = True
                # a dirty root tends to stay dirty; try it first next time
                scans.insert(0, scans.pop(idx))
                break
            rs.done = True
        if not dirty:
            f = t
            break
        t += 1
    if witness is None or witness[0] != f - 1:
        rs = max(scans, key=lambda s: s.lo)
        witness = (f - 1, _construct_floor_witness(g, rs, f - 1, k), rs.root)
    return f, witness[1], witness[2]


def pebbling_number(g: Graph, root: int | None = None, k: int = 1, p: int = 2,
                    mode: SolveMode = SolveMode.UNRESTRICTED, costs=None,
                    budget: int | None = None) -> int:
    """Least t such that every size-t distribution is solvable (for the
    given root, or for every root when root is None)."""
    f, _, _ = _number_with_witness(g, root, k, p, mode, costs, budget)
    return f


def max_unsolvable(g: Graph, root: int | None = None, k: int = 1, p: int = 2,
                   mode: SolveMode = SolveMode.UNRESTRICTED, costs=None,
                   budget: int | None = None):
    """Largest unsolvable distribution size, a witness, and its root."""
    f, counts, r = _number_with_witness(g, root, k, p, mode, costs, budget)
    return f - 1, counts, r


def _number_with_witness(g, root, k, p, mode, costs, budget):
    if not isinstance(k, int) or k < 1:
        raise InvalidParameterError(f"k must be a positive int, got {k!r}")
    if root is not None and not (isinstance(root, int) and 0 <= root < g.n):
        raise InvalidParameterError(f"root {root!r} out of range")
    if not isinstance(mode, SolveMode):
        raise InvalidParameterError(f"mode must be a SolveMode, got {mode!r}")
    ecosts = _edge_costs(g, p, costs)
    roots = list(range(g.n)) if root is None else [root]
    if g.is_tree() and g.n > 1:
        # modes coincide on trees; the quota DP is exact
        best = None
        for r in roots:
            size, counts = _tree_max_unsolvable(g, r, k, ecosts)
            if best is None or size > best[0]:
                best = (size, counts, r)
        return best[0] + 1, best[1], best[2]
    if g.n == 1:
        return k, (k - 1,), 0
    f, counts, r = _scan(g, roots, k, mode, ecosts, budget)
    return f, counts, r
