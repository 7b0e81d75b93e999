import pytest
from hypothesis import given

from conftest import graphs
from fasp.exact import omega
from fasp.generators import d3, diamond_chain, fig4
from fasp.graph import GraphError, find_cycle
from fasp.meta import (
    arc_sensitive,
    frontier_tree,
    global_m,
    is_tree_component,
    meta_cycle_dim,
    meta_graph,
    relative_subgraph,
    relative_weight_general,
    sensitive_arcs,
)
from fasp.oracle import cycles_through


def test_d3_sensitivity():
    # arcs: 0=1->2 1=1->3 2=2->1 3=2->3 4=3->1 5=3->2
    g = d3()
    assert sensitive_arcs(g, 0) == [2, 3, 4]
    assert arc_sensitive(g, 2, 0)
    assert not arc_sensitive(g, 1, 0)
    with pytest.raises(GraphError):
        arc_sensitive(g, 0, 0)


def test_d3_meta_graph_layers():
    m = meta_graph(d3(), [0, 3])
    assert dict(m.layers) == {0: 0, 3: 0, 2: 1, 4: 1, 5: 1, 1: 2}
    assert len(m.edges) == 8
    assert meta_cycle_dim(m, 3, 0) == 1
    assert not is_tree_component(m, 0, 3)


def test_frontier_tree_spans_the_component():
    m = meta_graph(d3(), [0, 3])
    comp = m.component(0, without=3)
    tree = frontier_tree(m, comp, 0)
    assert len(tree) == len(comp) - 1
    assert set().union(*tree) == comp
    assert tree <= m.edges


def test_fig4_relative_weight_and_subgraph():
    g = fig4()
    m = meta_graph(g, [1, 2, 4, 3])
    sigma = relative_weight_general(g, m, 3, 4, omega)
    assert sigma[1] == 3
    assert sigma.capacities()[1] == 3
    assert relative_subgraph(g, 3, 4).arc_ids == (1, 3, 7, 8)


def test_global_m_of_diamond_chains_is_zero():
    for d in range(1, 6):
        assert global_m(diamond_chain(d)) == 0


def test_meta_cycle_dim_rejects_foreign_arc():
    m = meta_graph(d3(), [0, 3])
    with pytest.raises(GraphError):
        meta_cycle_dim(m, 99)


@given(graphs(max_arcs=9))
def test_sensitivity_matches_cycle_enumeration(g):
    for e in g.arc_ids:
        through = {a for c in cycles_through(g, e) for a in c}
        rest = g.remove_arcs([e])
        on_rest = {a for f in rest.arc_ids for c in cycles_through(rest, f) for a in c}
        assert set(sensitive_arcs(g, e)) == (through & on_rest) - {e}


@given(graphs(max_arcs=9))
def test_meta_graph_contains_seed_and_is_layered(g):
    c = find_cycle(g)
    if c is None:
        return
    m = meta_graph(g, c)
    assert set(c) <= m.nodes
    for edge in m.edges:
        a, b = tuple(edge)
        assert abs(m.layers[a] - m.layers[b]) <= 1


@given(graphs(max_arcs=9))
def test_relative_weights_touch_only_sensitive_arcs(g):
    c = find_cycle(g)
    if c is None or len(set(c)) < 2:
        return
    m = meta_graph(g, c)
    e, f = c[0], c[1]
    sigma = relative_weight_general(g, m, e, f, omega)
    keep = set(sensitive_arcs(g.remove_arcs([f]), e))
    for a in g.arc_ids:
        if a not in keep:
            assert sigma[a] == g.weight[a]
        else:
            assert sigma[a] <= g.weight[a]


def test_fig4_sensitivity_table():
    g = fig4()
    table = {e: sensitive_arcs(g, e) for e in g.arc_ids}
    assert table == {
        1: [3, 4, 5], 2: [1, 3, 4, 5], 3: [1, 2, 4, 6, 7, 8, 9], 4: [1, 3, 5], 5: [1, 2, 4, 6, 7, 8, 9],
        6: [3, 4, 5], 7: [1, 3, 5], 8: [1, 3, 5], 9: [1, 3, 4, 5],
    }


def test_isolated_seed_keeps_weights():
    from conftest import g_of

    g = g_of([(1, 2, 3), (2, 3, 4), (3, 1, 5)])
    m = meta_graph(g, [0, 1, 2])
    assert not m.edges
    assert dict(relative_weight_general(g, m, 0, 1, omega).sigma) == dict(g.weight)


@given(graphs(max_arcs=9))
def test_general_equals_tree_sweep_on_trees(g):
    from fasp.meta import relative_weight_tree

    c = find_cycle(g)
    if c is None:
        return
    m = meta_graph(g, c)
    for e in set(c):
        for f in set(c) - {e}:
            if is_tree_component(m, e, f):
                a = relative_weight_tree(g, m, e, f, omega).sigma
                assert dict(relative_weight_general(g, m, e, f, omega).sigma) == dict(a)


def test_global_m_within_cycle_space_on_random_graphs():
    import random

    from fasp.generators import random_instance
    from fasp.graph import cycle_space_dim

    rng = random.Random(1)
    for _ in range(150):
        g = random_instance(rng)
        assert 0 <= global_m(g) <= cycle_space_dim(g)


def test_dense_graph_exceeds_cycle_space_bound():
    # cross edges between sensitivity layers make this meta graph denser
    # than the cycle space of the graph itself
    from conftest import g_of
    from fasp.graph import cycle_space_dim

    g = g_of([(1, 4), (2, 1), (2, 4), (3, 1), (3, 2), (4, 1), (4, 3), (1, 2)])
    assert cycle_space_dim(g) == 5
    assert global_m(g) == 6
