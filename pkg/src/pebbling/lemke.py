"""Zero-sum subset certificates via pebbling on a prime-power grid.

Given q numbers x_1..x_q, finds a nonempty index set I with q | sum(x_i)
and sum over I of gcd(x_i, q) <= q.  Each index starts as a pebble on the
grid of exponent vectors for q = prod p_i^{d_i}; pebbling moves merge p_i
pebbles into one while preserving the two well-placedness invariants that
make the final pebble at the origin a valid certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InternalInvariantError, InvalidParameterError, ResourceLimitError
from .families import grid_graph
from .solve import SolveMode, solvable


def factorize(q: int):
    """Prime factorization as (primes, exponents), ascending primes."""
    if q < 1:
        raise InvalidParameterError("q must be >= 1")
    primes, exps = [], []
    d = 2
    while d * d <= q:
        if q % d == 0:
            e = 0
            while q % d == 0:
                q //= d
                e += 1
            primes.append(d)
            exps.append(e)
        d += 1
    if q > 1:
        primes.append(q)
        exps.append(1)
    return tuple(primes), tuple(exps)


@dataclass(frozen=True)
class TrackedPebble:
    indices: tuple          # sorted 1-based indices into xs
    val: int                # sum of xs over indices
    gcdsum: int             # sum of gcd(x_j, q) over indices
    pos: tuple              # exponent vector


@dataclass(frozen=True)
class StepRecord:
    pos: tuple              # cell the merge happened at
    dim: int                # 1-based dimension index
    new_pos: tuple
    merged: tuple           # indices (1-based) of the merged pebble
    discarded: tuple        # indices of pebbles removed without merging


@dataclass(frozen=True)
class Certificate:
    q: int
    xs: tuple
    indices: tuple          # the set I, sorted, 1-based
    total: int
    gcd_total: int
    steps: tuple


class GridState:
    """Pebbles on the divisor grid of q."""

    def __init__(self, q, xs):
        self.q = q
        self.xs = tuple(xs)
        self.primes, self.dbar = factorize(q)
        self.cells = {}
        for j, x in enumerate(self.xs, start=1):
            g = math.gcd(x, q)
            ratio = q // g
            pos = []
            for p in self.primes:
                e = 0
                while ratio % p == 0:
                    ratio //= p
                    e += 1
                pos.append(e)
            if ratio != 1:
                raise InternalInvariantError("q/gcd must divide q")
            self._add(TrackedPebble((j,), x, g, tuple(pos)))

    def _add(self, pb):
        self._check(pb)
        self.cells.setdefault(pb.pos, []).append(pb)

    def _check(self, pb):
        rem = 1
        for p, d, c in zip(self.primes, self.dbar, pb.pos):
            if not 0 <= c <= d:
                raise InternalInvariantError(f"position {pb.pos} outside grid")
            rem *= p ** (d - c)
        if pb.val % rem:
            raise InternalInvariantError(
                f"pebble at {pb.pos} has value {pb.val} not divisible by {rem}")
        if pb.gcdsum > rem:
            raise InternalInvariantError(
                f"pebble at {pb.pos} has gcd-sum {pb.gcdsum} > {rem}")

    def select_and_step(self, pos, dim) -> StepRecord:
        """Merge p_i of the pebbles at `pos` into one pebble a step closer to
        the origin along `dim` (0-based); the rest of the selected group is
        discarded.  Selection keeps the smallest gcd-sums, and the merged
        subgroup is a consecutive run whose value sum gains a factor p_i."""
        p = self.primes[dim]
        here = self.cells.get(pos, [])
        if pos[dim] < 1:
            raise InvalidParameterError(f"cell {pos} cannot move along dim {dim}")
        if len(here) < p:
            raise InvalidParameterError(f"cell {pos} has {len(here)} < {p} pebbles")
        here.sort(key=lambda pb: (pb.gcdsum, pb.indices))
        group = here[:p]
        del here[:p]
        if not here:
            del self.cells[pos]

        # unit = p^{b-1} divides every value in the cell; a zero prefix sum or
        # an equal pair of prefix sums (mod p) marks a run divisible by p^b
        unit = p ** (self.dbar[dim] - pos[dim])
        residues = [(pb.val // unit) % p for pb in group]
        seen = {0: 0}
        acc = 0
        lo = hi = None
        for idx, r in enumerate(residues, start=1):
            acc = (acc + r) % p
            if acc in seen:
                lo, hi = seen[acc], idx
                break
            seen[acc] = idx
        if lo is None:
            raise InternalInvariantError("pigeonhole failed over prefix sums")
        chosen = group[lo:hi]
        dropped = group[:lo] + group[hi:]
        new_pos = tuple(c - (i == dim) for i, c in enumerate(pos))
        merged = TrackedPebble(
            tuple(sorted(j for pb in chosen for j in pb.indices)),
            sum(pb.val for pb in chosen),
            sum(pb.gcdsum for pb in chosen),
            new_pos)
        self._add(merged)
        return StepRecord(pos, dim + 1, new_pos, merged.indices,
                          tuple(sorted(j for pb in dropped for j in pb.indices)))

    def at_origin(self):
        origin = (0,) * len(self.primes)
        return sorted(self.cells.get(origin, []), key=lambda pb: pb.indices)


def _unflatten(flat, dims):
    pos = []
    for d in reversed(dims):
        pos.append(flat % (d + 1))
        flat //= (d + 1)
    return tuple(reversed(pos))


def solve(xs, q: int) -> Certificate:
    """Find I (nonempty) with q | sum_{i in I} x_i and
    sum_{i in I} gcd(x_i, q) <= q."""
    xs = tuple(xs)
    if len(xs) != q:
        raise InvalidParameterError(f"need exactly q={q} values, got {len(xs)}")
    if any(not isinstance(x, int) or x < 1 for x in xs):
        raise InvalidParameterError("values must be positive ints")
    state = GridState(q, xs)
    steps = []
    if not state.at_origin():
        primes, dbar = state.primes, state.dbar
        grid, costs = grid_graph(dbar, primes)
        counts = [0] * grid.n
        for pb in (p for cell in state.cells.values() for p in cell):
            flat = 0
            for c, d in zip(pb.pos, dbar):
                flat = flat * (d + 1) + c
            counts[flat] += 1
        res = solvable(grid, tuple(counts), 0, mode=SolveMode.GREEDY, costs=costs)
        if not res.solvable:
            raise InternalInvariantError("grid distribution of size q must be solvable")
        for mv in res.moves:
            u = _unflatten(mv.src, dbar)
            v = _unflatten(mv.dst, dbar)
            dims = [i for i in range(len(dbar)) if u[i] != v[i]]
            if len(dims) != 1 or u[dims[0]] - v[dims[0]] != 1:
                raise InternalInvariantError("witness move not a unit step to origin")
            steps.append(state.select_and_step(u, dims[0]))
    winners = state.at_origin()
    if not winners:
        raise InternalInvariantError("no pebble reached the origin")
    best = winners[0]
    cert = Certificate(q, xs, best.indices, best.val, best.gcdsum, tuple(steps))
    verify(cert)
    return cert


def verify(cert: Certificate):
    """Independent arithmetic check of a certificate's index set."""
    if not cert.indices:
        raise InternalInvariantError("empty index set")
    if sorted(set(cert.indices)) != list(cert.indices):
        raise InternalInvariantError("index set not sorted/unique")
    total = sum(cert.xs[j - 1] for j in cert.indices)
    gcds = sum(math.gcd(cert.xs[j - 1], cert.q) for j in cert.indices)
    if total != cert.total or gcds != cert.gcd_total:
        raise InternalInvariantError("certificate totals do not match xs")
    if total % cert.q:
        raise InternalInvariantError(f"sum {total} not divisible by q={cert.q}")
    if gcds > cert.q:
        raise InternalInvariantError(f"gcd-sum {gcds} exceeds q={cert.q}")


def replay(cert: Certificate):
    """Re-run the recorded steps on a fresh grid with every well-placedness
    invariant checked, confirming the step log reproduces the same I."""
    state = GridState(cert.q, cert.xs)
    for step in cert.steps:
        got = state.select_and_step(step.pos, step.dim - 1)
        if got != step:
            raise InternalInvariantError(f"replayed step {got} != recorded {step}")
    winners = state.at_origin()
    if not winners or winners[0].indices != cert.indices:
        raise InternalInvariantError("replay did not reproduce the certificate")
    return True


def brute_force(xs, q: int):
    """Lexicographically least nonempty index set satisfying both bounds, or
    None.  Exponential; guarded to q <= 20."""
    xs = tuple(xs)
    if len(xs) != q:
        raise InvalidParameterError(f"need exactly q={q} values")
    if q > 20:
        raise ResourceLimitError("brute force limited to q <= 20")

    def ok(idxs):
        return (sum(xs[j - 1] for j in idxs) % q == 0
                and sum(math.gcd(xs[j - 1], q) for j in idxs) <= q)

    def dfs(prefix, start):
        for j in range(start, q + 1):
            cand = prefix + (j,)
            if ok(cand):
                return cand
            found = dfs(cand, j + 1)
            if found:
                return found
        return None

    return dfs((), 1)
