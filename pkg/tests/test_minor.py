import pytest
from hypothesis import given

from conftest import g_of, graphs
from fasp.generators import cycle_chain, d3, diamond_chain, fig3
from fasp.graph import GraphError, is_acyclic
from fasp.minor import MinorTrace, contract_gamma, essential_minor, lift_solution, merge_phi
from fasp.oracle import fas_optimum


def test_gamma_keeps_cheapest_arc_of_a_path():
    g = g_of([(1, 2, 5), (2, 3, 2), (3, 4, 7), (4, 1, 1), (4, 2, 3)])
    t = contract_gamma(g)
    # vertices 1 and 3 are branch-free; each path keeps only its cheapest arc
    assert t.minor.arc_ids == (1, 3, 4)
    assert t.minor.ends(1) == (2, 4) and t.minor.weight[1] == 2
    assert t.minor.ends(3) == (4, 2) and t.minor.weight[3] == 1
    assert t.kappa[1] == frozenset({1}) and t.kappa[3] == frozenset({3})


def test_phi_sums_parallel_class():
    g = g_of([(1, 2, 3), (1, 2, 4), (2, 1, 1)])
    t = merge_phi(g)
    assert t.minor.arc_ids == (0, 2)
    assert t.minor.weight[0] == 7 and t.kappa[0] == frozenset({0, 1})


def test_pure_cycle_becomes_forced():
    g = g_of([(1, 2, 4), (2, 3, 2), (3, 1, 6)])
    t = essential_minor(g)
    assert t.minor.is_empty()
    assert t.forced == frozenset({1}) and t.forced_weight == 2


def test_d3_is_already_essential():
    t = essential_minor(d3())
    assert t.minor.num_arcs == 6 and not t.forced


def test_diamond_chain_collapses_to_one_forced_arc():
    # each diamond becomes a doubled arc, the ring then closes into one cycle
    t = essential_minor(diamond_chain(4))
    assert t.minor.is_empty() and t.forced_weight == 1
    assert fas_optimum(t.minor) + t.forced_weight == fas_optimum(diamond_chain(4))


def test_fig3_minor():
    # the f4 gadget is a pure cycle after contraction and gets forced
    t = essential_minor(fig3())
    assert t.minor.num_arcs == 5


def test_chain_minor_keeps_optimum():
    for n in range(1, 6):
        g = cycle_chain(n)
        t = essential_minor(g)
        assert fas_optimum(t.minor) + t.forced_weight == (n + 1) // 2


def test_lift_rejects_unknown_arc():
    t = MinorTrace.identity(g_of([(1, 2), (2, 1)]))
    with pytest.raises(GraphError):
        lift_solution(t, [7])


def test_minor_of_minor_composes_kappa():
    g = g_of([(1, 2), (2, 3), (3, 4), (4, 1), (4, 2), (2, 4)])
    once = contract_gamma(g)
    twice = essential_minor(once)
    assert twice.origin is g
    assert set().union(*twice.kappa.values()) | twice.forced <= set(g.arc_ids)


@given(graphs(max_arcs=9))
def test_minor_preserves_optimum_and_lifts(g):
    t = essential_minor(g)
    assert fas_optimum(t.minor) + t.forced_weight == fas_optimum(g)
    best = fas_optimum(t.minor)
    from fasp.oracle import brute_force_fasp

    sol = brute_force_fasp(t.minor).all_optimal_sets[0]
    lifted = lift_solution(t, sol)
    assert is_acyclic(g.remove_arcs(lifted.arcs))
    assert lifted.weight == best + t.forced_weight


@given(graphs(max_arcs=9))
def test_minor_is_a_fixpoint(g):
    t = essential_minor(g)
    again = essential_minor(t.minor)
    assert again.minor.num_arcs == t.minor.num_arcs and not again.forced


def test_lift_takes_whole_parallel_class_and_one_path_arc():
    # 0,1 parallel 1->2; 2->3->1 is a branch-free path (arcs 2, 3)
    g = g_of([(1, 2, 1), (1, 2, 2), (2, 3, 4), (3, 1, 3), (2, 1, 9)])
    merged = merge_phi(g)
    assert lift_solution(merged, [0]).arcs == {0, 1}
    path = contract_gamma(g)
    assert path.kappa[3] == frozenset({3})
    assert lift_solution(path, [3]).arcs == {3}
