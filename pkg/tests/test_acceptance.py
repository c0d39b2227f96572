"""Acceptance checks: one test and one verdict line per criterion.

Each test drives the matching block of `pebbling.repro` and registers its
PASS/FAIL line; the lines are printed together in the terminal summary.

Criterion 8 is an expected failure.  Its generalized Lovász clause is
refuted by three tiny initial segments — families smaller than the first
nonzero full level, where the real-valued interpolant exceeds the integer
shadow (the exact set is pinned in test_lattice.py).  The test asserts the
failure is precisely the documented one, then xfails: the suite stays
green without pretending the clause holds.

Set PEBBLING_HEAVY=1 to run the long variants (full product number instead
of the witness-only check).
"""

import os

import pytest

from pebbling import repro

SEED = repro.SEED_DEFAULT
HEAVY = bool(os.environ.get("PEBBLING_HEAVY"))


@pytest.fixture(scope="module")
def threshold_run():
    # criterion 7's scans double as criterion 9's jobs=1 artifacts
    return repro.criterion_7(SEED, jobs=1)


def test_criterion_1_exact_numbers(record_criterion):
    res = record_criterion(repro.criterion_1())
    print(res.line())
    assert res.ok, res.detail


def test_criterion_2_tree_formula(record_criterion):
    res = record_criterion(repro.criterion_2())
    print(res.line())
    assert res.ok, res.detail


def test_criterion_3_counterexamples(record_criterion):
    res = record_criterion(repro.criterion_3())
    print(res.line())
    assert res.ok, res.detail


def test_criterion_4_structural_laws(record_criterion):
    res = record_criterion(repro.criterion_4())
    print(res.line())
    assert res.ok, res.detail


def test_criterion_5_products(record_criterion):
    res = record_criterion(repro.criterion_5(skip_heavy=not HEAVY))
    print(res.line())
    assert res.ok, res.detail


def test_criterion_6_zero_sum_solver(record_criterion):
    res = record_criterion(repro.criterion_6(SEED))
    print(res.line())
    assert res.ok, res.detail


def test_criterion_7_threshold_statistics(record_criterion, threshold_run):
    res, _ = threshold_run
    record_criterion(res)
    print(res.line())
    assert res.ok, res.detail


def test_criterion_8_lattice_bounds(record_criterion):
    res = record_criterion(repro.criterion_8())
    print(res.line())
    if not res.ok:
        # only the documented refutation is tolerated; anything else is a bug
        assert "3 documented subcritical segments" in res.detail, res.detail
        pytest.xfail("generalized Lovász clause fails on the three known "
                     "subcritical segments; all other lattice clauses hold")


def test_criterion_9_deterministic_artifacts(record_criterion, threshold_run):
    _, arts = threshold_run
    res, final_arts = repro.criterion_9(SEED, arts_jobs1=arts)
    record_criterion(res)
    print(res.line())
    assert res.ok, res.detail
    assert len(final_arts) == 7
