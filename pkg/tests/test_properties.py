import pytest

from pebbling.errors import InvalidParameterError
from pebbling.families import generate
from pebbling.graphs import Graph
from pebbling.properties import (class0, class0_sufficient, genprod_check,
                                 graham_check, join_graphs, two_pebbling)
from pebbling.repro import connected_graph_classes
from pebbling.solve import pebbling_number, solvable


@pytest.mark.parametrize("spec", ["complete:4", "cycle:5", "cycle:6",
                                  "path:4", "star:5"])
def test_two_pebbling_holds(spec):
    assert two_pebbling(generate(spec)).holds


def test_two_pebbling_fails_on_lemke():
    rep = two_pebbling(generate("lemke"))
    assert not rep.holds
    counts, root = rep.witness
    g = generate("lemke")
    f = pebbling_number(g)
    q = sum(1 for c in counts if c)
    assert sum(counts) == 2 * f - q + 1
    assert not solvable(g, counts, root, k=2, want_witness=False).solvable
    # the search lands on the classic failing distribution
    assert (counts, root) == ((8, 1, 1, 1, 0, 0, 0, 1), 5)


def test_class0_sufficient():
    assert class0_sufficient(generate("complete:5"))
    assert class0_sufficient(generate("petersen"))
    assert not class0_sufficient(generate("cycle:5"))   # true but not cheap
    assert not class0_sufficient(generate("path:3"))


def test_class0_verdicts():
    rep = class0(generate("petersen"))
    assert rep.holds and rep.method == "sufficient-condition"

    # C5 is Class 0 (f = 5 = n) but no fast path applies
    rep = class0(generate("cycle:5"))
    assert rep.holds and rep.method == "exact"

    # so is the 8-vertex graph whose 2-pebbling property fails
    rep = class0(generate("lemke"))
    assert rep.holds and rep.method == "exact"

    rep = class0(generate("path:3"))
    assert not rep.holds and rep.method == "sufficient-condition"
    assert rep.witness == ((0, 0, 3), 0)


def test_class0_witnesses_are_valid():
    for spec in ("cycle:6", "path:4", "star:4"):
        g = generate(spec)
        rep = class0(g)
        assert not rep.holds
        counts, root = rep.witness
        assert sum(counts) >= g.n
        assert not solvable(g, counts, root, want_witness=False).solvable


def test_class0_agrees_with_exact_on_all_small_graphs():
    # regression: the literal girth fast path misclassified C5
    for g in connected_graph_classes(6):
        assert class0(g).holds == (pebbling_number(g) == g.n), g.edges


def test_graham_products():
    k2 = generate("complete:2")
    cmp = graham_check(k2, k2)
    assert (cmp.lhs, cmp.rhs, cmp.holds) == (4, 4, True)

    c3 = generate("cycle:3")
    cmp = graham_check(c3, c3)
    assert (cmp.lhs, cmp.rhs, cmp.holds) == (9, 9, True)

    # C4 x K2 is the 3-cube: equality again
    cmp = graham_check(generate("cycle:4"), k2)
    assert (cmp.lhs, cmp.rhs, cmp.holds) == (8, 8, True)


def test_graham_with_mixed_costs():
    # edge costs follow their dimension: f splits multiplicatively here
    cmp = graham_check(generate("path:2"), generate("path:3"), p1=3, p2=2)
    assert (cmp.lhs, cmp.rhs, cmp.holds) == (12, 12, True)


@pytest.mark.heavy
def test_graham_path_star():
    cmp = graham_check(generate("path:3"), generate("star:4"))
    assert (cmp.lhs, cmp.rhs, cmp.holds) == (18, 20, True)


def test_join_graphs_layout():
    h = join_graphs(generate("path:2"), generate("path:3"), [(1, 0)])
    assert h.n == 5
    assert (1, 2) in h.edges          # cross edge, offset applied
    with pytest.raises(InvalidParameterError):
        join_graphs(generate("path:2"), generate("path:2"), [])
    with pytest.raises(InvalidParameterError):
        join_graphs(generate("path:2"), generate("path:2"), [(0, 5)])


def test_genprod_bridge_cases():
    # a single cross edge is a bridge: the additive bound fails badly
    k2 = generate("complete:2")
    rep = genprod_check(k2, k2, [(0, 0)])
    assert (rep.fH, rep.bound, rep.holds) == (8, 4, False)
    k3 = generate("complete:3")
    rep = genprod_check(k3, k3, [(0, 0)])
    assert (rep.fH, rep.bound, rep.holds) == (10, 6, False)


def test_genprod_petersen_equality():
    # pentagon + pentagram + perfect matching: additive bound holds with
    # equality, and the joined graph has the 2-pebbling property
    pent = Graph(5, [(i, (i + 2) % 5) for i in range(5)])
    rep = genprod_check(generate("cycle:5"), pent, [(i, i) for i in range(5)])
    assert (rep.fH, rep.bound, rep.holds) == (10, 10, True)
    assert rep.twopp is True
