"""Bounded multiset lattices: colex segments, shadows, and shadow bounds.

A bounded multiset over symbols 1..n with bound b is stored as a tuple of
multiplicities (m_1, ..., m_s), trimmed so the last entry is positive.  The
colex key sum(m_i * (b+1)^(i-1)) orders each weight level; initial segments
of that order minimize shadows (Clements–Lindstrom), which drives every
bound checked here.  All probabilities are exact rationals.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import InternalInvariantError, InvalidParameterError, ResourceLimitError

log = logging.getLogger(__name__)

# ---------------------------------------------------------------------------
# counting tables


def bin_count(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def mul_count(n: int, w: int) -> int:
    """Multisets of weight w over n symbols, unbounded multiplicity."""
    if w < 0:
        return 0
    if w == 0:
        return 1
    if n <= 0:
        return 0
    return math.comb(n + w - 1, w)


@lru_cache(maxsize=None)
def bmul_count(n: int, w: int, b: int) -> int:
    """Multisets of weight w over n symbols with multiplicities <= b."""
    if b < 1:
        raise InvalidParameterError("bound b must be >= 1")
    if w < 0:
        return 0
    return sum((-1) ** i * bin_count(n, i) * mul_count(n, w - i * (b + 1))
               for i in range(w // (b + 1) + 1))


def _bin_real(x: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= (x - j) / (j + 1)
    return out


def _mul_real(x: float, w: int) -> float:
    if w < 0:
        return 0.0
    out = 1.0
    for j in range(w):
        out *= (x + j) / (j + 1)
    return out


def bmul_real(x: float, w: int, b: int) -> float:
    """bmul with a real first argument (used to invert f = bmul[x,w,b])."""
    if b < 1:
        raise InvalidParameterError("bound b must be >= 1")
    if w < 0:
        return 0.0
    return sum((-1) ** i * _bin_real(x, i) * _mul_real(x, w - i * (b + 1))
               for i in range(w // (b + 1) + 1))


def solve_x(f: int, w: int, b: int, tol: float = 1e-9) -> float:
    """The real x with bmul[x,w,b] = f, taken in the monotone region.

    Scans integers for a bracket first (returning exact integer hits), then
    bisects."""
    if f < 1:
        raise InvalidParameterError("f must be >= 1")
    if w == 0:
        if f != 1:
            raise InvalidParameterError("weight 0 has a single multiset")
        return 0.0
    prev = bmul_real(0.0, w, b)
    k = 0
    while True:
        k += 1
        cur = bmul_real(float(k), w, b)
        if cur >= f and cur > prev:
            break
        prev = cur
        if k > w + f + 2:
            raise InternalInvariantError("no monotone bracket found")
    if bmul_count(k, w, b) == f:
        return float(k)
    lo, hi = float(k - 1), float(k)
    for _ in range(200):
        mid = (lo + hi) / 2
        if bmul_real(mid, w, b) < f:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol:
            break
    return (lo + hi) / 2


# ---------------------------------------------------------------------------
# multisets, ranks, segments


def _trim(ms) -> tuple:
    ms = list(ms)
    while ms and ms[-1] == 0:
        ms.pop()
    return tuple(ms)


def _weight(ms) -> int:
    return sum(ms)


def colex_key(ms, b: int) -> int:
    if any(m < 0 or m > b for m in ms):
        raise InvalidParameterError(f"multiplicities {ms!r} outside [0,{b}]")
    return sum(m * (b + 1) ** i for i, m in enumerate(ms))


def rank(ms, b: int) -> int:
    """0-based colex rank of a bounded multiset within its weight level."""
    ms = _trim(ms)
    if any(m < 0 or m > b for m in ms):
        raise InvalidParameterError(f"multiplicities {ms!r} outside [0,{b}]")
    total = 0
    w = _weight(ms)
    for j in range(len(ms), 0, -1):
        for c in range(ms[j - 1]):
            total += bmul_count(j - 1, w - c, b)
        w -= ms[j - 1]
    return total


def unrank(r: int, w: int, b: int) -> tuple:
    """Inverse of rank over all multisets of weight w (symbols as needed)."""
    if r < 0 or w < 0:
        raise InvalidParameterError("rank and weight must be non-negative")
    if w == 0:
        if r != 0:
            raise InvalidParameterError("weight 0 has a single multiset")
        return ()
    s = 1
    while bmul_count(s, w, b) <= r:
        s += 1
    out = [0] * s
    rem_w, rem_r = w, r
    for j in range(s, 0, -1):
        c = 0
        while True:
            below = bmul_count(j - 1, rem_w - c, b)
            if rem_r < below:
                break
            rem_r -= below
            c += 1
            if c > min(b, rem_w):
                raise InternalInvariantError("unrank digit overflow")
        out[j - 1] = c
        rem_w -= c
    if rem_w or rem_r:
        raise InternalInvariantError("unrank did not consume rank")
    return _trim(out)


def first_f(f: int, w: int, b: int):
    """The first f multisets of weight w in colex order."""
    return tuple(unrank(r, w, b) for r in range(f))


def shadow_member(ms):
    """All multisets reached by decrementing one multiplicity."""
    out = []
    for i, m in enumerate(ms):
        if m:
            nxt = list(ms)
            nxt[i] -= 1
            out.append(_trim(nxt))
    return out


def shadow(family, b: int):
    """Union of member shadows, sorted by colex key."""
    seen = {}
    for ms in family:
        for sm in shadow_member(ms):
            seen[colex_key(sm, b)] = sm
    return tuple(sm for _, sm in sorted(seen.items()))


def _check_family(family, b):
    members = [_trim(ms) for ms in family]
    if not members:
        raise InvalidParameterError("family must be nonempty")
    ws = {_weight(ms) for ms in members}
    if len(ws) != 1:
        raise InvalidParameterError(f"family mixes weights {sorted(ws)}")
    keys = {colex_key(ms, b) for ms in members}
    if len(keys) != len(members):
        raise InvalidParameterError("family contains duplicates")
    return members, ws.pop()


# ---------------------------------------------------------------------------
# the col cascade and its shadow bound


def decompose(f: int, w: int, b: int) -> tuple:
    """The boundary vector v of the first f multisets: f = col[v,w,b]."""
    if f < 1:
        raise InvalidParameterError("f must be >= 1")
    return unrank(f - 1, w, b)


def col(vbar, w: int, b: int) -> int:
    """Size of the colex segment encoded by v at weight w (= weight of v),
    or of its shadow at weight w-1.  Other weights are not defined."""
    vbar = _trim(vbar)
    wt = _weight(vbar)
    if any(m < 0 or m > b for m in vbar):
        raise InvalidParameterError(f"vector {vbar!r} outside bound {b}")
    if w == wt:
        drop = 0
    elif w == wt - 1:
        drop = 1
    else:
        raise InvalidParameterError(f"col defined at weights {wt} and {wt - 1}, got {w}")
    total = 0
    wj = wt
    for j in range(len(vbar), 0, -1):
        for i in range(1, vbar[j - 1] + 1):
            total += bmul_count(j - 1, wj + 1 - i - drop, b)
        wj -= vbar[j - 1]
    return total + (1 - drop)


@dataclass(frozen=True)
class ShadowBound:
    shad_actual: int
    shad_bound: int
    holds: bool
    vbar: tuple = ()


def cl_check(family, b: int) -> ShadowBound:
    """Clements–Lindstrom: |Shad F| is at least the shadow of the colex
    segment of the same size."""
    members, w = _check_family(family, b)
    if w < 1:
        raise InvalidParameterError("shadow needs weight >= 1")
    vbar = decompose(len(members), w, b)
    bound = col(vbar, w - 1, b)
    actual = len(shadow(members, b))
    return ShadowBound(actual, bound, actual >= bound, vbar)


@dataclass(frozen=True)
class LovaszBound:
    x: float
    bound: float
    shad_actual: int
    holds: bool


def genlov_check(family, b: int) -> LovaszBound:
    """|Shad F| >= bmul[x, w-1, b] where bmul[x,w,b] = |F|.  A theorem for
    b=1; for b>1 the bound is only conjectured, so a violation is logged
    loudly rather than raised.

    Known caveat: for w > b the conjectured bound fails on initial segments
    smaller than the first nonzero full level (|F| < bmul[2,w,b]), where the
    interpolating root x drops below 2 and the real bound overshoots the
    integer shadow by a fractional amount.  Those violations are genuine
    consequences of reading the bound literally at tiny |F|, not solver bugs.
    """
    members, w = _check_family(family, b)
    if w < 1:
        raise InvalidParameterError("shadow needs weight >= 1")
    x = solve_x(len(members), w, b)
    bound = bmul_real(x, w - 1, b)
    actual = len(shadow(members, b))
    holds = actual >= bound - 1e-9
    if not holds:
        if b == 1:
            raise InternalInvariantError(
                f"Lovasz bound violated: |F|={len(members)}, w={w}, "
                f"x={x!r}, bound={bound!r}, shadow={actual}")
        log.warning(
            "generalized Lovasz bound violated: |F|=%d, w=%d, b=%d, "
            "x=%r, bound=%r, shadow=%d", len(members), w, b, x, bound, actual)
    return LovaszBound(x, bound, actual, holds)


def lovasz_check(family) -> LovaszBound:
    return genlov_check(family, 1)


# ---------------------------------------------------------------------------
# normality and the supernormality gap


def level(n: int, w: int, b: int):
    """Every weight-w multiset over symbols 1..n with multiplicities <= b."""
    if n * b < w:
        return ()
    out = []
    for ms in product(range(b + 1), repeat=n):
        if sum(ms) == w:
            out.append(_trim(ms))
    return tuple(sorted(out, key=lambda m: colex_key(m, b)))


def min_shadow_size(f: int, w: int, u: int, b: int) -> int:
    """Minimum size at level u of the (w-u)-fold shadow of any size-f family
    at level w: iterate the colex-segment shadow."""
    if not 0 <= u <= w:
        raise InvalidParameterError("need 0 <= u <= w")
    size = f
    for cur in range(w, u, -1):
        size = col(decompose(size, cur, b), cur - 1, b)
    return size


def normal_check(n: int, b: int, u: int, w: int) -> bool:
    """Normalized matching downward: for every family size f at level w,
    the minimal level-u shadow closure has density >= f / |level w|."""
    if not 0 < u < w or w > n * b:
        raise InvalidParameterError("need 0 < u < w <= n*b")
    lw = bmul_count(n, w, b)
    lu = bmul_count(n, u, b)
    if lw > 1 << 20:
        raise ResourceLimitError(f"level size {lw} too large")
    for f in range(1, lw + 1):
        fu = min(min_shadow_size(f, w, u, b), lu)
        if Fraction(fu, lu) < Fraction(f, lw):
            return False
    return True


def supernormal_gap(n: int, b: int, s: int) -> Fraction:
    """p(F)^(b-1) - p(Shad F)^b for F = the full weight-b level on the first
    s of n symbols; positive for 2 <= s < n, witnessing that density can
    drop under shadows faster than supernormality would allow.  Evaluated
    from the closed forms and cross-checked against explicit families."""
    if not (2 <= s < n) or b < 2:
        raise InvalidParameterError("need 2 <= s < n and b >= 2")
    size_f = math.comb(s + b - 1, b)
    size_shad = math.comb(s + b - 2, b - 1)
    p_f = Fraction(size_f, math.comb(n + b - 1, b))
    p_shad = Fraction(size_shad, math.comb(n + b - 2, b - 1))
    gap = p_f ** (b - 1) - p_shad ** b

    fam = first_f(size_f, b, b)
    if any(len(ms) > s for ms in fam):
        raise InternalInvariantError("segment escapes the first s symbols")
    shad = shadow(fam, b)
    p_f2 = Fraction(len(fam), bmul_count(n, b, b))
    p_shad2 = Fraction(len(shad), bmul_count(n, b - 1, b))
    gap2 = p_f2 ** (b - 1) - p_shad2 ** b
    if gap != gap2:
        raise InternalInvariantError(f"gap mismatch: {gap} vs {gap2}")
    return gap


def lym_gap_sequence(n_list, b: int, u: int, w: int,
                     density: Fraction = Fraction(1, 2)):
    """p(F_u)^w - p(F_w)^u for the minimal shadow closure of a family
    occupying about `density` of level w, for each n.  Reported for
    inspection; the convergence itself is an asymptotic statement."""
    out = []
    for n in n_list:
        lw = bmul_count(n, w, b)
        f = max(1, int(lw * density))
        fu = min(min_shadow_size(f, w, u, b), bmul_count(n, u, b))
        p_u = Fraction(fu, bmul_count(n, u, b))
        p_w = Fraction(f, lw)
        out.append((n, p_u ** w - p_w ** u))
    return out
