"""Monte Carlo estimation of pebbling thresholds.

Distributions are sampled uniformly from all weak compositions of t pebbles
over n vertices; solvability (for every root) is tested with O(n) family
predicates where we have them, falling back to the exact engine for small
graphs.  All randomness is derived from per-trial seed sequences, so results
are independent of chunking/parallel schedule.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import NormalDist

import numpy as np

from .errors import InvalidParameterError, ResourceLimitError
from .families import FamilySpec, generate, parse_family
from .graphs import Graph
from .solve import solvable


@dataclass(frozen=True)
class TrialConfig:
    trials: int
    seed: int
    confidence: float = 0.95

    def __post_init__(self):
        if self.trials < 1:
            raise InvalidParameterError("trials must be >= 1")
        if not 0 < self.confidence < 1:
            raise InvalidParameterError("confidence must be in (0,1)")


@dataclass(frozen=True)
class CurveRow:
    n: int
    t: int
    trials: int
    successes: int
    phat: float
    ci_lo: float
    ci_hi: float
    undecided: int = 0


CSV_HEADER = "n,t,trials,successes,phat,ci_lo,ci_hi"


def rows_to_csv(rows) -> str:
    out = [CSV_HEADER]
    for r in rows:
        out.append(f"{r.n},{r.t},{r.trials},{r.successes},"
                   f"{r.phat:.6f},{r.ci_lo:.6f},{r.ci_hi:.6f}")
    return "\n".join(out) + "\n"


def wilson_interval(successes: int, trials: int, confidence: float = 0.95):
    """Wilson score interval for a binomial proportion."""
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    p = successes / trials
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(0.0, center - half), min(1.0, center + half)


def sample_distribution(n: int, t: int, seed) -> tuple:
    """One uniform weak composition of t pebbles over n vertices."""
    if n < 1 or t < 0:
        raise InvalidParameterError("need n >= 1 and t >= 0")
    return tuple(int(x) for x in _sample(n, t, _seed_key(seed) + (0,)))


def _seed_key(seed):
    if isinstance(seed, (tuple, list)):
        return tuple(int(s) & 0xFFFFFFFFFFFFFFFF for s in seed)
    return (int(seed) & 0xFFFFFFFFFFFFFFFF,)


def _sample(n, t, key):
    # stars and bars: a uniform (n-1)-subset of the t+n-1 slots marks the bars
    if n == 1:
        return np.array([t], dtype=np.int64)
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(key)))
    bars = np.sort(rng.choice(t + n - 1, size=n - 1, replace=False))
    edges = np.concatenate(([-1], bars, [t + n - 1]))
    return np.diff(edges) - 1


def _sample_block(n, t, seed, lo, hi):
    rows = np.empty((hi - lo, n), dtype=np.int64)
    base = _seed_key(seed) + (n, t)
    for i in range(lo, hi):
        rows[i - lo] = _sample(n, t, base + (i,))
    return rows


# ---------------------------------------------------------------------------
# solvability backends (solvable for EVERY root)


def _clique_ok(arr):
    return (arr.max(axis=1) >= 2) | (arr.min(axis=1) >= 1)


def _star_ok(arr):
    hub = arr[:, 0]
    leaves = arr[:, 1:]
    hub_root = (hub >= 1) | (leaves.max(axis=1) >= 2)
    pool = hub + (leaves // 2).sum(axis=1)
    leaf_roots = (leaves.min(axis=1) >= 1) | (pool >= 2)
    return hub_root & leaf_roots


def _path_ok(arr):
    m, n = arr.shape
    left = np.zeros((m, n), dtype=np.int64)
    right = np.zeros((m, n), dtype=np.int64)
    for i in range(1, n):
        left[:, i] = (left[:, i - 1] + arr[:, i - 1]) // 2
        j = n - 1 - i
        right[:, j] = (right[:, j + 1] + arr[:, j + 1]) // 2
    return (arr + left + right).min(axis=1) >= 1


_PREDICATES = {"complete": _clique_ok, "star": _star_ok, "path": _path_ok}


class _Backend:
    """Resolves a target (Graph, FamilySpec, or spec string) to a batch
    solvability test."""

    def __init__(self, target):
        self.spec = None
        self.graph = None
        if isinstance(target, Graph):
            self.graph = target
        else:
            self.spec = target if isinstance(target, FamilySpec) else parse_family(target)
            if self.spec.name in _PREDICATES:
                self.n = self.spec.params[0]
                self.fast = _PREDICATES[self.spec.name]
                if self.spec.name == "star" and self.n < 2:
                    raise InvalidParameterError("star predicate needs n >= 2")
                return
            self.graph = generate(self.spec)
        self.n = self.graph.n
        self.fast = None

    def count(self, arr, budget):
        """(successes, undecided) over the sampled block."""
        if self.fast is not None:
            return int(self.fast(arr).sum()), 0
        good = 0
        undecided = 0
        for row in arr:
            counts = tuple(int(x) for x in row)
            try:
                if all(solvable(self.graph, counts, r, budget=budget,
                                want_witness=False).solvable
                       for r in range(self.n)):
                    good += 1
            except ResourceLimitError:
                undecided += 1
        return good, undecided


def estimate(target, t: int, cfg: TrialConfig, budget: int | None = None,
             jobs: int = 1) -> CurveRow:
    """Estimate the probability that a uniform size-t distribution is
    solvable for every root."""
    backend = _Backend(target)
    n = backend.n
    successes = 0
    undecided = 0
    jobs = max(1, jobs)
    bounds = [cfg.trials * j // jobs for j in range(jobs + 1)]
    chunks = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]

    def work(chunk):
        lo, hi = chunk
        arr = _sample_block(n, t, cfg.seed, lo, hi)
        return backend.count(arr, budget)

    if len(chunks) <= 1:
        results = [work(c) for c in chunks]
    else:
        # per-trial substreams make chunk results schedule-independent;
        # ex.map keeps the reduction order fixed regardless of completion
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(work, chunks))
    for good, und in results:
        successes += good
        undecided += und
    lo_ci, hi_ci = wilson_interval(successes, cfg.trials, cfg.confidence)
    return CurveRow(n, t, cfg.trials, successes, successes / cfg.trials,
                    lo_ci, hi_ci, undecided)


def clique_solvable_probability(n: int, t: int) -> Fraction:
    """Exact probability that a uniform size-t distribution on K_n is
    solvable for every root: unsolvable iff t < n and every count <= 1."""
    if t >= n:
        return Fraction(1)
    return 1 - Fraction(math.comb(n, t), math.comb(t + n - 1, n - 1))


@dataclass(frozen=True)
class ScanResult:
    rows: tuple            # every probe, ordered by (n, probe order)
    t_half: tuple          # (n, t) pairs
    exponent: float
    nonmonotone: bool

    def summary_csv(self) -> str:
        out = ["n,t_half"]
        out += [f"{n},{t}" for n, t in self.t_half]
        return "\n".join(out) + "\n"


def _pava(ts, phats, weights):
    """Weighted isotonic (nondecreasing) fit via pool-adjacent-violators."""
    blocks = [[p, w, [i]] for i, (p, w) in enumerate(zip(phats, weights))]
    out = []
    for b in blocks:
        out.append(b)
        while len(out) > 1 and out[-2][0] > out[-1][0] + 1e-15:
            p2, w2, i2 = out.pop()
            p1, w1, i1 = out.pop()
            w = w1 + w2
            out.append([(p1 * w1 + p2 * w2) / w, w, i1 + i2])
    fitted = [0.0] * len(ts)
    for p, _, idxs in out:
        for i in idxs:
            fitted[i] = p
    return fitted


def threshold_scan(family, n_list, target: float = 0.5,
                   cfg: TrialConfig | None = None, budget: int | None = None,
                   jobs: int = 1) -> ScanResult:
    """Locate t_half(n) where solvability probability crosses `target` for
    each n, then fit the slope of log t_half against log n."""
    if cfg is None:
        raise InvalidParameterError("threshold_scan needs a TrialConfig")
    if isinstance(family, FamilySpec):
        family = family.name
    if not 0 < target < 1:
        raise InvalidParameterError("target probability must be in (0,1)")
    all_rows = []
    t_half = []
    nonmono = False
    for n in n_list:
        spec = FamilySpec(family, (n,))
        probes = {}

        def probe(t):
            if t not in probes:
                probes[t] = estimate(spec, t, cfg, budget=budget, jobs=jobs)
            return probes[t]

        t_hi = 1
        lo = 0
        while probe(t_hi).phat < target:
            lo = t_hi
            t_hi *= 2
            if t_hi > 1 << 40:
                raise ResourceLimitError(f"no crossing found for n={n}")
        while t_hi - lo > 1:
            mid = (t_hi + lo) // 2
            if probe(mid).phat < target:
                lo = mid
            else:
                t_hi = mid
        rows = [probes[t] for t in sorted(probes)]
        all_rows += rows
        fitted = _pava([r.t for r in rows], [r.phat for r in rows],
                       [r.trials for r in rows])
        half = next((r.t for r, p in zip(rows, fitted) if p >= target), t_hi)
        t_half.append((n, half))
        # raw curve decreasing beyond CI widths counts as non-monotone noise
        for i, a in enumerate(rows):
            for b in rows[i + 1:]:
                if a.ci_lo > b.ci_hi:
                    nonmono = True
    xs = np.log([n for n, _ in t_half])
    ys = np.log([max(1, t) for _, t in t_half])
    exponent = float(np.polyfit(xs, ys, 1)[0]) if len(t_half) > 1 else float("nan")
    return ScanResult(tuple(all_rows), tuple(t_half), exponent, nonmono)
