from fractions import Fraction

from hypothesis import given

from conftest import graphs
from fasp.generators import cycle_chain, d3, diamond_chain, directed_clique, fig4
from fasp.heuristics import (
    count_cycles,
    effective_weights,
    greedy_cut,
    greedy_cut_resolve,
    hybrid_strategy,
    lower_bounds,
    phi,
    theta,
)
from fasp.oracle import enumerate_elementary_cycles, fas_optimum


def test_d3_counts_and_bounds():
    g = d3()
    assert theta(g, 0) == 2 and phi(g, 0) == 4 and count_cycles(g) == 5
    b = lower_bounds(g)
    assert (b.mu, b.upsilon, b.upper) == (3, 2, 3)
    assert b.xi_max == Fraction(2) and b.eta_max == Fraction(4)
    assert b.best == 3


def test_chain_bounds():
    # mu = ceil(n / 2) on the chains
    assert lower_bounds(cycle_chain(5)).mu == 3
    assert lower_bounds(cycle_chain(1)).mu == 1


def test_diamond_bounds():
    b = lower_bounds(diamond_chain(3))
    assert b.cycles == 8 and b.theta_max == 8 and b.mu == 1


def test_budget_exhaustion_drops_mu_only():
    b = lower_bounds(directed_clique(5), budget=10)
    assert b.mu is None and b.cycles is None
    assert b.upsilon == 2 and b.best == 2


def test_acyclic_graph_has_zero_bounds():
    b = lower_bounds(diamond_chain(2).remove_arcs([4]))
    assert (b.mu, b.upsilon, b.upper) == (0, 0, 0)


def test_effective_weights_divide_by_weight():
    g = fig4()
    w = effective_weights(g, "eta")
    assert w[1] == Fraction(phi(g, 1), 5)


def test_greedy_on_d3_is_certified():
    r = greedy_cut(d3())
    assert r.weight == 3 and len(r.solution) == 3
    assert r.certified_optimal and r.bounds == (3, 2)


def test_greedy_without_bounds_is_not_certified():
    r = greedy_cut(d3(), bounds=False)
    assert not r.certified_optimal and r.bounds is None


def test_hybrid_on_resolvable_graph():
    r = hybrid_strategy(diamond_chain(3))
    assert r.weight == 1 and r.stats["forbidden"] == 0


@given(graphs(max_arcs=9))
def test_bounds_below_optimum(g):
    b = lower_bounds(g)
    opt = fas_optimum(g)
    assert b.upsilon <= opt and b.mu <= opt <= b.upper
    assert b.cycles == len(enumerate_elementary_cycles(g).enumerated_cycles)


@given(graphs(max_arcs=9))
def test_greedy_solutions_are_feasible(g):
    for r in (greedy_cut(g), greedy_cut(g, "eta"), greedy_cut_resolve(g), hybrid_strategy(g),
              hybrid_strategy(g, "fvs")):
        r.check(g)
        assert r.weight >= fas_optimum(g)
        if r.certified_optimal:
            assert r.weight == fas_optimum(g)


@given(graphs(max_arcs=9, max_weight=1))
def test_unit_greedy_takes_at_most_half(g):
    assert len(greedy_cut(g).solution) <= g.num_arcs // 2


def test_theta_matches_enumeration_on_d3():
    # each arc of D3 lies on one 2-cycle and one 3-cycle
    from fasp.oracle import cycles_through

    g = d3()
    assert [theta(g, e) for e in g.arc_ids] == [len(cycles_through(g, e)) for e in g.arc_ids] == [2] * 6


def test_theta_on_diamond_spine():
    # arc 4 joins the first diamond to the next one; every cycle uses it
    g = diamond_chain(3)
    assert theta(g, 4) == 8 and theta(g, 0) == 4


def test_phi_counts_elementary_subgraph_arcs():
    from fasp.generators import fig3

    # f1 sees its 2-cycle with e1 and the backbone f1, f3, f2
    assert phi(fig3(), 10) == 4
    assert phi(diamond_chain(1).remove_arcs([4]), 0) == 0
