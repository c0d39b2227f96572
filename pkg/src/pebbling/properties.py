"""Structural pebbling properties and conjecture checkers.

Covers the 2-pebbling property, Class 0 membership (with cheap sufficient
conditions used as fast paths), the product inequality comparison, and the
generalized-product bound for graphs joined by a bipartite edge set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import InvalidParameterError
from .graphs import Graph, cartesian_product, product_costs, structure
from .solve import (SolveMode, max_unsolvable, pebbling_number, solvable,
                    _carry_chunk, _edge_costs, _RootScan)


@dataclass(frozen=True)
class PropertyReport:
    holds: bool
    witness: tuple | None = None    # (counts, root) falsifying instance
    method: str = "exact"           # "exact" or "sufficient-condition"
    details: dict = field(default_factory=dict)


def _compositions_at_least_one(total, parts):
    """All compositions of `total` into `parts` positive ints, first part
    largest first (deterministic enumeration order)."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total - parts + 1, 0, -1):
        for rest in _compositions_at_least_one(total - head, parts - 1):
            yield (head,) + rest


def two_pebbling(g: Graph, budget: int | None = None) -> PropertyReport:
    """Check whether every distribution of size >= 2f(G)-q+1 (q = support
    size) can move two pebbles to every root.

    Only sizes t = 2f(G)-q+1 are enumerated: adding pebbles to a fixed
    support never breaks 2-fold solvability, so larger sizes follow.
    """
    n = g.n
    f = pebbling_number(g, budget=budget)
    ecosts = _edge_costs(g, 2, None)
    scans = [_RootScan(g, r, 2, SolveMode.UNRESTRICTED, ecosts) for r in range(n)]

    for q in range(n, 0, -1):
        t = 2 * f - q + 1
        for support in combinations(range(n), q):
            rows = []
            for comp in _compositions_at_least_one(t, q):
                counts = [0] * n
                for v, c in zip(support, comp):
                    counts[v] = c
                rows.append(counts)
            arr = np.array(rows, dtype=np.int64)
            for r in range(n):
                rs = scans[r]
                weights = arr @ rs.ctx.wint
                bad = np.nonzero(weights < rs.ctx.target)[0]
                if bad.size:
                    # total weight below 2 proves 2-fold failure outright
                    counts = tuple(int(x) for x in arr[bad[0]])
                    return PropertyReport(False, (counts, r), "exact",
                                          {"f": f, "q": q, "size": t})
                arr_o = arr[:, rs.order]
                col = rs.inv[r]
                ok = (arr[:, r] >= 2)
                ok |= _carry_chunk(arr_o, rs.carryA, col, 2)
                ok |= _carry_chunk(arr_o, rs.carryB, col, 2)
                for i in np.nonzero(~ok)[0]:
                    counts = tuple(int(x) for x in arr[i])
                    if not solvable(g, counts, r, k=2, budget=budget,
                                    want_witness=False).solvable:
                        return PropertyReport(False, (counts, r), "exact",
                                              {"f": f, "q": q, "size": t})
    return PropertyReport(True, None, "exact", {"f": f})


def class0_sufficient(g: Graph) -> bool:
    """Cheap sufficient conditions for f(G) = n: complete graphs, diameter 2
    with connectivity >= 3, or connectivity >= 2^(2*diam+3).  False is
    inconclusive."""
    st = structure(g)
    if st.diameter <= 1:
        return True
    if st.diameter == 2 and st.vertex_connectivity >= 3:
        return True
    return st.vertex_connectivity >= 2 ** (2 * st.diameter + 3)


def _cut_vertex_witness(g: Graph):
    """Size-n unsolvable distribution for a graph with a cut vertex: no
    pebbles on the root r and the cut vertex c, 3 on a vertex y separated
    from r by c, one everywhere else."""
    st = structure(g)
    c = st.cut_vertices[0]
    seen = {c}
    comp_of = {}
    for s in range(g.n):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in g.adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        for v in comp:
            comp_of[v] = s
    comps = sorted({comp_of[v] for v in range(g.n) if v != c})
    r = min(v for v in range(g.n) if comp_of.get(v) == comps[0])
    y = min(v for v in range(g.n) if comp_of.get(v) == comps[1])
    counts = [1] * g.n
    counts[r] = 0
    counts[c] = 0
    counts[y] = 3
    return tuple(counts), r


def class0(g: Graph, budget: int | None = None) -> PropertyReport:
    """Is f(G) = n(G)?  Uses sufficient conditions and cut-vertex / girth
    obstructions as fast paths before falling back to the exact solver."""
    n = g.n
    if class0_sufficient(g):
        return PropertyReport(True, None, "sufficient-condition")
    st = structure(g)
    if st.cut_vertices and n >= 3:
        counts, r = _cut_vertex_witness(g)
        return PropertyReport(False, (counts, r), "sufficient-condition",
                              {"cut_vertex": st.cut_vertices[0]})
    if (1 << st.diameter) > n:
        # f >= 2^diam, so a stack of 2^diam - 1 >= n pebbles at one end of a
        # diametral pair moves nothing onto the other end.  This is the sound
        # form of the girth obstruction (diam >= floor(girth/2)); the literal
        # "girth > 2 log2 n" test misfires on the 5-cycle, which is Class 0.
        r = max(range(n), key=g.eccentricity)
        y = max(range(n), key=lambda v: g.dist(r, v))
        counts = [0] * n
        counts[y] = (1 << st.diameter) - 1
        return PropertyReport(False, (tuple(counts), r), "sufficient-condition",
                              {"girth": st.girth, "diameter": st.diameter})
    f = pebbling_number(g, budget=budget)
    if f == n:
        return PropertyReport(True, None, "exact", {"f": f})
    size, counts, r = max_unsolvable(g, budget=budget)
    return PropertyReport(False, (counts, r), "exact", {"f": f, "size": size})


@dataclass(frozen=True)
class ProductComparison:
    lhs: int
    rhs: int
    holds: bool


def graham_check(g1: Graph, g2: Graph, p1: int = 2, p2: int = 2,
                 budget: int | None = None) -> ProductComparison:
    """Compare f(G1 x G2) against f(G1)*f(G2), with moves along a G1-edge
    costing p1 and along a G2-edge costing p2."""
    f1 = pebbling_number(g1, p=p1, budget=budget)
    f2 = pebbling_number(g2, p=p2, budget=budget)
    prod = cartesian_product(g1, g2)
    costs = product_costs(g1, g2, p1, p2)
    lhs = pebbling_number(prod, costs=costs, budget=budget)
    return ProductComparison(lhs, f1 * f2, lhs <= f1 * f2)


@dataclass(frozen=True)
class GenProdReport:
    fH: int
    bound: int
    holds: bool
    twopp: bool | None      # 2PP verdict for H, reported only on equality


def join_graphs(g1: Graph, g2: Graph, cross) -> Graph:
    """Disjoint union of g1 and g2 plus the cross edges (u in V1, v in V2)."""
    cross = list(cross)
    if not cross:
        raise InvalidParameterError("cross edge set must be nonempty")
    edges = list(g1.edges)
    edges += [(u + g1.n, v + g1.n) for u, v in g2.edges]
    for u, v in cross:
        if not (0 <= u < g1.n and 0 <= v < g2.n):
            raise InvalidParameterError(f"cross edge ({u},{v}) out of range")
        edges.append((u, g1.n + v))
    return Graph(g1.n + g2.n, edges)


def genprod_check(g1: Graph, g2: Graph, cross,
                  budget: int | None = None) -> GenProdReport:
    """Check f(H) <= f(G1) + f(G2) for H = (G1 + G2) joined by the bipartite
    edge set `cross`.  On equality the 2-pebbling verdict for H is included,
    since that is the regime where the bound is known to be tight."""
    h = join_graphs(g1, g2, cross)
    bound = pebbling_number(g1, budget=budget) + pebbling_number(g2, budget=budget)
    fh = pebbling_number(h, budget=budget)
    twopp = None
    if fh == bound:
        twopp = two_pebbling(h, budget=budget).holds
    return GenProdReport(fh, bound, fh <= bound, twopp)
