"""Bounded-multiset lattice: counting, colex ranking, shadows, and bounds.

The generalized Lovász clause is pinned to its three known violations —
initial segments below the first nonzero level, where the real-valued
interpolant exceeds the integer shadow.  See the shipped warning in
`genlov_check`; these are properties of the bound itself, not solver bugs.
"""

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from pebbling.errors import InvalidParameterError
from pebbling.lattice import (bin_count, bmul_count, bmul_real, cl_check,
                              col, colex_key, decompose, first_f,
                              genlov_check, level, lovasz_check,
                              lym_gap_sequence, min_shadow_size, mul_count,
                              normal_check, rank, shadow, shadow_member,
                              solve_x, supernormal_gap, unrank)
from pebbling.repro import GENLOV_KNOWN_VIOLATIONS


def test_counting_functions():
    for n in range(1, 7):
        for w in range(0, 7):
            assert bin_count(n, w) == math.comb(n, w)
            assert mul_count(n, w) == math.comb(n + w - 1, w) if w else 1
            # b = 1 collapses to sets, b >= w to unbounded multisets
            assert bmul_count(n, w, 1) == bin_count(n, w)
            assert bmul_count(n, w, max(w, 1)) == mul_count(n, w)
    assert bmul_count(3, 3, 2) == 7


def test_bmul_matches_enumeration():
    for n in range(1, 6):
        for b in range(1, 5):
            for w in range(0, 7):
                assert bmul_count(n, w, b) == len(level(n, w, b))


def test_bmul_complement_symmetry():
    # capping multiplicities at b makes the lattice self-dual
    for n in range(1, 6):
        for b in range(1, 5):
            for w in range(0, n * b + 1):
                assert bmul_count(n, w, b) == bmul_count(n, n * b - w, b)


def test_level_contents():
    lvl = level(3, 3, 2)
    assert len(lvl) == 7
    for ms in lvl:
        assert sum(ms) == 3 and max(ms) <= 2 and len(ms) <= 3
    keys = [colex_key(ms, 2) for ms in lvl]
    assert keys == sorted(keys)


def test_rank_unrank_roundtrip():
    for b in range(1, 5):
        for w in range(1, 7):
            for n in range(1, 6):
                lvl = level(n, w, b)
                # the first |level(n,w,b)| colex multisets live on n symbols
                for r, ms in enumerate(lvl):
                    assert rank(ms, b) == r
                    assert unrank(r, w, b) == ms


def test_colex_order_examples():
    # sets (b=1), weight 2: {1,2} < {1,3} < {2,3} < {1,4}
    assert [unrank(r, 2, 1) for r in range(4)] == [
        (1, 1), (1, 0, 1), (0, 1, 1), (1, 0, 0, 1)]
    # bounded multisets, b=2, weight 2: {1,1} < {1,2} < {2,2} < {1,3}
    assert [unrank(r, 2, 2) for r in range(4)] == [
        (2,), (1, 1), (0, 2), (1, 0, 1)]


def test_shadow_member():
    # {2,2,3} drops to {2,3} and {2,2}
    assert set(shadow_member((0, 2, 1))) == {(0, 1, 1), (0, 2)}
    # multiplicities collapse: {1,1} -> {1}
    assert set(shadow_member((2,))) == {(1,)}
    assert shadow((), 2) == ()


def test_shadow_of_segment():
    fam = first_f(3, 3, 2)
    shad = shadow(fam, 2)
    # colex-sorted tuple of the union of member shadows
    assert shad == ((2,), (1, 1), (0, 2), (1, 0, 1))
    assert [colex_key(ms, 2) for ms in shad] == sorted(
        colex_key(ms, 2) for ms in shad)


def test_decompose_col_identity():
    # |Shad(first f)| is exactly col(decompose(f))
    for b in (1, 2, 3):
        for w in (1, 2, 3, 4):
            for f in range(1, bmul_count(4, w, b) + 1):
                vbar = decompose(f, w, b)
                assert col(vbar, w, b) == f          # decompose inverts col
                assert len(shadow(first_f(f, w, b), b)) == col(vbar, w - 1, b)


def test_cl_check_on_random_families():
    rng = random.Random(2)
    for n, w, b in ((4, 3, 2), (5, 2, 1), (3, 4, 3)):
        lvl = level(n, w, b)
        for _ in range(30):
            f = rng.randint(1, len(lvl))
            fam = rng.sample(lvl, f)
            rep = cl_check(fam, b)
            assert rep.holds and rep.shad_actual >= rep.shad_bound
        seg = first_f(3, w, b)
        rep = cl_check(seg, b)
        assert rep.shad_actual == rep.shad_bound     # segments are tight


def test_cl_check_validation():
    with pytest.raises(InvalidParameterError):
        cl_check([(1,), (2,)], 1)       # mixed weights
    with pytest.raises(InvalidParameterError):
        cl_check([], 2)
    with pytest.raises(InvalidParameterError):
        cl_check([(3,)], 2)             # multiplicity beyond the cap


def test_min_shadow_size_iterates():
    assert min_shadow_size(1, 3, 0, 2) == 1
    f = 5
    step = col(decompose(f, 3, 2), 2, 2)
    assert min_shadow_size(f, 3, 1, 2) == col(decompose(step, 2, 2), 1, 2)
    with pytest.raises(InvalidParameterError):
        min_shadow_size(3, 2, 3, 2)


def test_lovasz_bound_is_theorem_for_sets():
    # b = 1: holds for every family, not just segments
    rng = random.Random(5)
    for w in (2, 3, 4):
        lvl = level(6, w, 1)
        for _ in range(50):
            fam = rng.sample(lvl, rng.randint(1, len(lvl)))
            rep = lovasz_check(fam)
            assert rep.holds and rep.shad_actual >= rep.bound - 1e-9
    # x recovers binomial sizes exactly
    assert solve_x(math.comb(6, 3), 3, 1) == pytest.approx(6.0)
    assert bmul_real(5.5, 2, 1) == pytest.approx(5.5 * 4.5 / 2)


def test_genlov_known_violations_exactly(caplog):
    violations = []
    with caplog.at_level("WARNING", logger="pebbling.lattice"):
        for b in (2, 3):
            for w in range(1, 5):
                for f in range(1, bmul_count(5, w, b) + 1):
                    rep = genlov_check(first_f(f, w, b), b)
                    if not rep.holds:
                        violations.append((b, w, f))
    assert tuple(violations) == GENLOV_KNOWN_VIOLATIONS
    assert len(caplog.records) == len(violations)
    # every violation sits below the first nonzero full level
    for b, w, f in violations:
        assert f < bmul_count(2, w, b)


def test_genlov_numbers_of_first_violation():
    rep = genlov_check(first_f(1, 3, 2), 2)
    assert rep.x == pytest.approx(math.sqrt(7) - 1)
    assert rep.bound == pytest.approx((7 - math.sqrt(7)) / 2)
    assert rep.shad_actual == 2 and not rep.holds


def test_supernormal_gap():
    assert supernormal_gap(3, 2, 2) == Fraction(1, 18)
    for n, b, s in ((4, 2, 2), (5, 3, 3), (8, 6, 2), (6, 4, 5)):
        gap = supernormal_gap(n, b, s)
        assert isinstance(gap, Fraction) and gap > 0
    with pytest.raises(InvalidParameterError):
        supernormal_gap(3, 2, 3)    # needs s < n
    with pytest.raises(InvalidParameterError):
        supernormal_gap(4, 1, 2)    # needs b >= 2


def test_normal_check():
    assert normal_check(3, 2, 1, 2)
    assert normal_check(2, 3, 2, 4)
    with pytest.raises(InvalidParameterError):
        normal_check(3, 2, 2, 2)


def test_lym_gap_sequence():
    out = lym_gap_sequence([4, 6, 8], 2, 1, 2)
    assert [n for n, _ in out] == [4, 6, 8]
    assert all(isinstance(gap, Fraction) for _, gap in out)


def test_exhaustive_shadow_minimality_tiny():
    # colex segments really do minimize the shadow at (n,w,b) = (3,3,2)
    lvl = level(3, 3, 2)
    for f in range(1, len(lvl) + 1):
        best = min(len(shadow(fam, 2)) for fam in combinations(lvl, f))
        assert len(shadow(first_f(f, 3, 2), 2)) == best
