"""Enumeration oracles and helpers behind the acceptance runner."""

from itertools import combinations

from pebbling.families import generate, tree_formula
from pebbling.graphs import are_isomorphic
from pebbling.repro import (CriterionResult, connected_graph_classes,
                            find_unsolvable_of_size, kl_csv, kl_instances,
                            moews_rooted, tree_classes)
from pebbling.solve import pebbling_number, solvable

# unlabeled tree / connected graph counts, n = 1, 2, 3, ...
TREE_COUNTS = (1, 1, 1, 2, 3, 6, 11, 23)
CONNECTED_COUNTS = (1, 1, 2, 6, 21, 112)


def test_tree_classes_counts():
    trees = tree_classes(8)
    assert len(trees) == 47
    by_n = {}
    for g in trees:
        assert g.is_tree()
        by_n[g.n] = by_n.get(g.n, 0) + 1
    assert [by_n[n] for n in range(2, 9)] == list(TREE_COUNTS[1:])


def test_tree_classes_pairwise_distinct():
    trees = [g for g in tree_classes(7)]
    for g1, g2 in combinations(trees, 2):
        if g1.n == g2.n:
            assert not are_isomorphic(g1, g2)


def test_connected_graph_classes_counts():
    graphs = connected_graph_classes(6)
    assert len(graphs) == 143
    by_n = {}
    for g in graphs:
        by_n[g.n] = by_n.get(g.n, 0) + 1
    assert [by_n[n] for n in range(1, 7)] == list(CONNECTED_COUNTS)


def test_connected_graph_classes_pairwise_distinct():
    graphs = [g for g in connected_graph_classes(5)]
    for g1, g2 in combinations(graphs, 2):
        if g1.n == g2.n:
            assert not are_isomorphic(g1, g2)


def test_rooted_recursion_matches_formula_and_solver():
    for g in tree_classes(6):
        for r in range(g.n):
            for k in (1, 2):
                got = moews_rooted(g, r, k)
                assert got == tree_formula(g, r, k)
                assert got == pebbling_number(g, root=r, k=k)


def test_rooted_recursion_recombination():
    # the subtree maxima recombine as (sum of unsolvable sizes) + 1, so the
    # middle of a 3-path needs 3 pebbles, not 4
    p3 = generate("path:3")
    assert moews_rooted(p3, 1, 1) == 3
    star = generate("star:4")
    assert moews_rooted(star, 0, 1) == 4
    assert moews_rooted(star, 1, 1) == pebbling_number(star, root=1) == 5


def test_find_unsolvable_of_size():
    g = generate("cycle:6")
    found = find_unsolvable_of_size(g, 7)
    assert found is not None
    counts, root = found
    assert sum(counts) == 7
    assert not solvable(g, counts, root, want_witness=False).solvable
    assert find_unsolvable_of_size(g, 8) is None   # f(C6) = 8


def test_kl_instances_deterministic():
    a = kl_instances(seed=42, count=20)
    assert a == kl_instances(seed=42, count=20)
    assert a != kl_instances(seed=43, count=20)
    for _, q, xs in a:
        assert 2 <= q <= 60 and len(xs) == q
        assert all(1 <= x <= 10 ** 6 for x in xs)
    text = kl_csv(seed=42, count=20)
    lines = text.strip().splitlines()
    assert lines[0] == "idx,q,total,gcd_total,set_size,members"
    assert len(lines) == 21


def test_criterion_result_lines():
    assert CriterionResult(3, True, "fine").line() == "criterion 3: PASS — fine"
    assert CriterionResult(8, False, "bad").line() == "criterion 8: FAIL — bad"
