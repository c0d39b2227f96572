from fractions import Fraction
from itertools import combinations_with_replacement, product
import random

import pytest

from pebbling.errors import InvalidParameterError, ResourceLimitError
from pebbling.families import generate
from pebbling.solve import (SolveMode, max_unsolvable, pebbling_number,
                            replay, solvable, verify_witness, weight)

# frozen exact pebbling numbers; cycles use the closed forms
# 2^(v/2) (even) and 2*floor(2^((v+1)/2)/3) + 1 (odd)
CYCLE_F = {3: 3, 4: 4, 5: 5, 6: 8, 7: 11, 8: 16, 9: 21}


@pytest.mark.parametrize("n", range(2, 8))
def test_complete_graphs(n):
    assert pebbling_number(generate(f"complete:{n}")) == n


@pytest.mark.parametrize("v", range(2, 7))
def test_paths(v):
    assert pebbling_number(generate(f"path:{v}")) == 2 ** (v - 1)


@pytest.mark.parametrize("v, f", sorted(CYCLE_F.items()))
def test_cycles(v, f):
    assert pebbling_number(generate(f"cycle:{v}")) == f


def test_cube_and_named_graphs():
    assert pebbling_number(generate("hypercube:3")) == 8
    assert pebbling_number(generate("lemke")) == 8


@pytest.mark.heavy
def test_petersen_number():
    assert pebbling_number(generate("petersen")) == 10


def test_stars():
    # K_{1,m} needs m+2 pebbles once m >= 2: m-1 singleton leaves plus
    # three on another leaf fail for a leaf root
    for n in range(3, 7):
        assert pebbling_number(generate(f"star:{n}")) == n + 1


@pytest.mark.parametrize("n", range(3, 6))
@pytest.mark.parametrize("k", (1, 2, 3))
def test_kfold_complete(n, k):
    # k-fold number of K_n: stack 2k-1 on one vertex, 1 on all but the root
    assert pebbling_number(generate(f"complete:{n}"), k=k) == 2 * k + n - 2


@pytest.mark.parametrize("p", (2, 3, 4))
def test_p_ary_numbers(p):
    # with moves costing p: cliques need (n-1)(p-1)+1, paths p^(v-1)
    for n in range(2, 5):
        assert pebbling_number(generate(f"complete:{n}"), p=p) == (n - 1) * (p - 1) + 1
    for v in range(2, 5):
        assert pebbling_number(generate(f"path:{v}"), p=p) == p ** (v - 1)


def test_weight_is_exact():
    g = generate("cycle:6")
    counts = [0] * 6
    counts[3] = 1
    assert weight(g, counts, 0) == Fraction(1, 8)
    counts[3] = 9
    assert weight(g, counts, 0) == Fraction(9, 8)
    assert weight(g, counts, 0, p=3) == Fraction(9, 27)


def test_single_pebble_cases():
    g = generate("cycle:5")
    assert solvable(g, (1, 0, 0, 0, 0), 0).solvable
    assert not solvable(g, (0, 1, 0, 0, 0), 0).solvable
    res = solvable(g, (0, 2, 0, 0, 0), 0)
    assert res.solvable and list(res.moves) != []


def test_witnesses_replay(tmp_path=None):
    rng = random.Random(9)
    g = generate("lemke")
    for _ in range(120):
        counts = tuple(rng.randrange(4) for _ in range(8))
        root = rng.randrange(8)
        res = solvable(g, counts, root)
        if res.solvable:
            assert verify_witness(g, counts, res.moves, root)
            final = replay(g, counts, res.moves, root)
            assert final[root] >= 1
        else:
            # solvability must not depend on asking for the witness
            assert not solvable(g, counts, root, want_witness=False).solvable


def test_mode_hierarchy_on_c5():
    # greedy => semi-greedy => unrestricted, tree-solvable => unrestricted,
    # exhaustively over all small distributions
    g = generate("cycle:5")
    for t in range(1, 7):
        for spots in combinations_with_replacement(range(5), t):
            counts = [0] * 5
            for v in spots:
                counts[v] += 1
            for root in range(5):
                un = solvable(g, counts, root, want_witness=False).solvable
                gr = solvable(g, counts, root, mode=SolveMode.GREEDY,
                              want_witness=False).solvable
                sg = solvable(g, counts, root, mode=SolveMode.SEMI_GREEDY,
                              want_witness=False).solvable
                ts = solvable(g, counts, root, mode=SolveMode.TREE_SOLVABLE,
                              want_witness=False).solvable
                assert (not gr or sg) and (not sg or un) and (not ts or un)


def test_modes_coincide_on_trees():
    # on a tree every solvable distribution is also greedily and
    # tree-solvably solvable
    for spec in ("path:4", "star:5"):
        g = generate(spec)
        n = g.n
        for t in range(1, 6):
            for spots in combinations_with_replacement(range(n), t):
                counts = [0] * n
                for v in spots:
                    counts[v] += 1
                verdicts = {
                    mode: solvable(g, counts, 0, mode=mode,
                                   want_witness=False).solvable
                    for mode in SolveMode
                }
                assert len(set(verdicts.values())) == 1, (spec, counts, verdicts)


def test_canonical_greedy_gap():
    g = generate("cycle:5")
    assert solvable(g, (0, 0, 3, 2, 0), 0).solvable
    assert not solvable(g, (0, 0, 3, 2, 0), 0, mode=SolveMode.GREEDY).solvable


def test_adding_pebbles_preserves_solvability():
    rng = random.Random(4)
    g = generate("cycle:6")
    for _ in range(60):
        counts = [rng.randrange(3) for _ in range(6)]
        root = rng.randrange(6)
        if solvable(g, counts, root, want_witness=False).solvable:
            bumped = list(counts)
            bumped[rng.randrange(6)] += 1
            assert solvable(g, bumped, root, want_witness=False).solvable


def test_twofold_implies_onefold():
    rng = random.Random(11)
    g = generate("cycle:6")
    for _ in range(60):
        counts = [rng.randrange(4) for _ in range(6)]
        root = rng.randrange(6)
        if solvable(g, counts, root, k=2, want_witness=False).solvable:
            assert solvable(g, counts, root, k=1, want_witness=False).solvable


def test_max_unsolvable_matches_number():
    g = generate("cycle:6")
    size, counts, root = max_unsolvable(g)
    assert size == 7 and sum(counts) == 7
    assert not solvable(g, counts, root, want_witness=False).solvable


def test_mode_aliases():
    assert SolveMode.from_string("tree-solvable") is SolveMode.TREE_SOLVABLE
    assert SolveMode.from_string("tree_solvable") is SolveMode.TREE_SOLVABLE
    assert SolveMode.from_string("semi-greedy") is SolveMode.SEMI_GREEDY
    assert SolveMode.from_string("GREEDY") is SolveMode.GREEDY
    with pytest.raises(InvalidParameterError):
        SolveMode.from_string("eager")


def test_input_validation():
    g = generate("cycle:5")
    with pytest.raises(InvalidParameterError):
        solvable(g, (1, 0, 0), 0)           # wrong length
    with pytest.raises(InvalidParameterError):
        solvable(g, (1, 0, 0, 0, -1), 0)    # negative count
    with pytest.raises(InvalidParameterError):
        solvable(g, (1, 0, 0, 0, 0), 5)     # root out of range
    with pytest.raises(InvalidParameterError):
        solvable(g, (1, 0, 0, 0, 0), 0, k=0)
    with pytest.raises(InvalidParameterError):
        pebbling_number(g, p=1)


def test_budget_exhaustion_reports_partial_bounds():
    with pytest.raises(ResourceLimitError) as exc:
        pebbling_number(generate("petersen"), budget=1)
    assert exc.value.lo == 10  # trivial lower bound already known
