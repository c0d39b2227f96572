from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import pytest
from scipy import stats

from pebbling.errors import InvalidParameterError
from pebbling.families import FamilySpec, generate
from pebbling.solve import solvable
from pebbling.thresholds import (CSV_HEADER, TrialConfig, CurveRow,
                                 _clique_ok, _path_ok, _sample_block,
                                 _star_ok, clique_solvable_probability,
                                 estimate, rows_to_csv, sample_distribution,
                                 threshold_scan, wilson_interval)


def _compositions(n, t):
    for spots in combinations_with_replacement(range(n), t):
        counts = [0] * n
        for v in spots:
            counts[v] += 1
        yield tuple(counts)


def test_sampler_shape_and_determinism():
    d = sample_distribution(6, 10, 42)
    assert len(d) == 6 and sum(d) == 10 and min(d) >= 0
    assert d == sample_distribution(6, 10, 42)
    assert sample_distribution(6, 10, 43) != d  # astronomically unlikely tie
    assert sample_distribution(1, 7, 0) == (7,)
    with pytest.raises(InvalidParameterError):
        sample_distribution(0, 3, 1)


@pytest.mark.parametrize("n, t", [(3, 3), (4, 2)])
def test_sampler_uniform_over_compositions(n, t):
    # stars and bars must hit each composition equally often
    cells = list(_compositions(n, t))
    counts = dict.fromkeys(cells, 0)
    block = _sample_block(n, t, seed=123, lo=0, hi=60000)
    for row in block:
        counts[tuple(int(x) for x in row)] += 1
    _, p = stats.chisquare(list(counts.values()))
    assert p > 1e-3, f"chi-square rejects uniformity: p={p}"


def test_sample_block_is_trial_addressed():
    # chunk boundaries must not change what any single trial produces
    whole = _sample_block(5, 7, seed=9, lo=0, hi=40)
    parts = np.vstack([_sample_block(5, 7, seed=9, lo=0, hi=13),
                       _sample_block(5, 7, seed=9, lo=13, hi=40)])
    assert (whole == parts).all()


@pytest.mark.parametrize("family, fast", [
    ("complete", _clique_ok), ("star", _star_ok), ("path", _path_ok)])
@pytest.mark.parametrize("n", (4, 5))
def test_fast_predicates_match_exact_engine(family, fast, n):
    g = generate(f"{family}:{n}")
    for t in range(0, 7):
        rows = list(_compositions(n, t))
        got = fast(np.array(rows, dtype=np.int64))
        for counts, verdict in zip(rows, got):
            truth = all(
                solvable(g, counts, r, want_witness=False).solvable
                for r in range(n))
            assert bool(verdict) == truth, (family, counts)


def test_wilson_interval():
    lo, hi = wilson_interval(260, 2000)
    assert round(lo, 6) == 0.115967 and round(hi, 6) == 0.145451
    lo, hi = wilson_interval(0, 2000)
    assert lo >= 0.0 and round(hi, 6) == 0.001917
    lo, hi = wilson_interval(2000, 2000)
    assert hi == pytest.approx(1.0) and lo < 1.0
    # wider at lower confidence
    assert wilson_interval(50, 100, 0.5)[0] > wilson_interval(50, 100, 0.99)[0]


@pytest.mark.parametrize("n", range(2, 6))
@pytest.mark.parametrize("t", range(0, 5))
def test_clique_probability_closed_form(n, t):
    rows = list(_compositions(n, t))
    good = sum(1 for c in rows if max(c) >= 2 or min(c) >= 1)
    # uniform over compositions, so the closed form is a ratio of counts
    assert clique_solvable_probability(n, t) == Fraction(good, len(rows))


def test_estimate_row_and_jobs_determinism():
    cfg = TrialConfig(trials=500, seed=17)
    row1 = estimate(FamilySpec("star", (16,)), 8, cfg, jobs=1)
    row4 = estimate(FamilySpec("star", (16,)), 8, cfg, jobs=4)
    assert row1 == row4
    assert isinstance(row1, CurveRow)
    assert row1.n == 16 and row1.t == 8 and row1.trials == 500
    assert row1.phat == row1.successes / 500
    assert row1.ci_lo <= row1.phat <= row1.ci_hi


def test_estimate_exact_backend_on_graph():
    # targets without a fast predicate go through the exact solver
    cfg = TrialConfig(trials=60, seed=3)
    row = estimate(generate("cycle:5"), 5, cfg)
    assert row.trials == 60 and row.undecided == 0
    truth = estimate(FamilySpec("cycle", (5,)), 5, cfg)
    assert row == truth


def test_estimate_interval_covers_exact_value():
    cfg = TrialConfig(trials=2000, seed=11)
    row = estimate(FamilySpec("complete", (20,)), 4, cfg)
    p = float(clique_solvable_probability(20, 4))
    assert row.ci_lo <= p <= row.ci_hi


def test_csv_format():
    assert CSV_HEADER == "n,t,trials,successes,phat,ci_lo,ci_hi"
    cfg = TrialConfig(trials=200, seed=7)
    row = estimate(FamilySpec("complete", (4,)), 1, cfg)
    text = rows_to_csv([row])
    assert text.splitlines()[0] == CSV_HEADER
    assert text.splitlines()[1] == "4,1,200,0,0.000000,0.000000,0.018845"


def test_threshold_scan():
    cfg = TrialConfig(trials=300, seed=5)
    res = threshold_scan("complete", [4, 8, 16], cfg=cfg)
    ns = [n for n, _ in res.t_half]
    assert ns == [4, 8, 16]
    halves = [t for _, t in res.t_half]
    assert halves == sorted(halves)          # larger graphs need more pebbles
    assert all(r.trials == 300 for r in res.rows)
    assert res.summary_csv().splitlines()[0] == "n,t_half"
    assert isinstance(res.exponent, float)
    # the scan is reproducible
    again = threshold_scan("complete", [4, 8, 16], cfg=cfg)
    assert again == res


def test_config_validation():
    with pytest.raises(InvalidParameterError):
        TrialConfig(trials=0, seed=1)
    with pytest.raises(InvalidParameterError):
        TrialConfig(trials=10, seed=1, confidence=1.5)
    with pytest.raises(InvalidParameterError):
        threshold_scan("complete", [4], cfg=None)
    with pytest.raises(InvalidParameterError):
        threshold_scan("complete", [4], target=1.2,
                       cfg=TrialConfig(trials=10, seed=1))
