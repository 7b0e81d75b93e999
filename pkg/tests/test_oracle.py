import pytest
from hypothesis import given

from conftest import g_of, graphs
from fasp.generators import cycle_chain, d3, diamond_chain, fig4
from fasp.graph import is_acyclic
from fasp.oracle import (
    OracleRefusal,
    brute_force_fasp,
    brute_force_fvsp,
    cycles_through,
    enumerate_elementary_cycles,
    fas_optimum,
    ordering_optimum,
)


def test_d3_optimum_and_all_optima():
    r = brute_force_fasp(d3(), all_optima=True)
    assert r.optimum == 3
    # one optimum per vertex order: the backward arcs of each of the 3! orders
    assert len(r.all_optimal_sets) == 6
    assert all(is_acyclic(d3().remove_arcs(s)) for s in r.all_optimal_sets)


def test_fig4_optima():
    r = brute_force_fasp(fig4(), all_optima=True)
    assert r.optimum == 7
    assert set(r.all_optimal_sets) == {frozenset({1, 4}), frozenset({1, 6}), frozenset({4, 7, 8})}


def test_diamond_cycle_count():
    for d in range(1, 6):
        assert len(enumerate_elementary_cycles(diamond_chain(d)).enumerated_cycles) == 2 ** d


def test_chain_cycle_count_and_optimum():
    for n in range(1, 8):
        g = cycle_chain(n)
        assert len(enumerate_elementary_cycles(g).enumerated_cycles) == n
        assert ordering_optimum(g) == (n + 1) // 2


def test_guards():
    with pytest.raises(OracleRefusal):
        brute_force_fasp(diamond_chain(5))
    big = g_of([(i, i + 1) for i in range(1, 18)] + [(18, 1)])
    with pytest.raises(OracleRefusal):
        brute_force_fvsp(big)
    with pytest.raises(OracleRefusal):
        enumerate_elementary_cycles(diamond_chain(8), budget=10)


def test_fvs_of_d3():
    r = brute_force_fvsp(d3(), all_optima=True)
    assert r.optimum == 2 and len(r.all_optimal_sets) == 3


def test_cycles_through_parallel_arcs():
    g = g_of([(1, 2), (1, 2), (2, 1)])
    assert sorted(map(sorted, cycles_through(g, 2))) == [[0, 2], [1, 2]]


@given(graphs(max_arcs=10))
def test_two_oracles_agree(g):
    assert fas_optimum(g) == ordering_optimum(g)


@given(graphs(max_arcs=10))
def test_acyclic_exactly_when_no_cycles_enumerated(g):
    assert is_acyclic(g) == (not enumerate_elementary_cycles(g).enumerated_cycles)
