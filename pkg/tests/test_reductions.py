from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from fasp.exact import solve_exact
from fasp.generators import d3
from fasp.graph import WeightedMultiDigraph, is_acyclic
from fasp.oracle import brute_force_fasp, brute_force_fvsp
from fasp.reductions import fasp_to_fvsp, fvsp_to_fasp, gadget_arcs


def test_d3_expansion_sizes():
    t = fvsp_to_fasp(d3())
    assert t.transformed.num_vertices == 6 + 2 * 3
    assert t.transformed.num_arcs == 3 + 2 * 6
    assert gadget_arcs(t) == {1: 0, 2: 1, 3: 2}


def test_rim_arcs_are_never_cut():
    t = fvsp_to_fasp(d3())
    sol = solve_exact(t.transformed)
    assert sol.arcs <= set(gadget_arcs(t).values())
    assert t.pulled_weight(sol.arcs) == 2


def test_line_graph_round_trip_on_d3():
    t = fasp_to_fvsp(d3())
    r = brute_force_fvsp(t.transformed)
    assert r.optimum == 3
    assert t.pull_back(r.all_optimal_sets[0]) == set(r.all_optimal_sets[0])


def _vertex_weighted(draw_graph, gammas):
    g = draw_graph
    gamma = {v: gammas[i % len(gammas)] for i, v in enumerate(g.vertices)}
    return WeightedMultiDigraph(g.vertices, g.arcs(), None, gamma)


@given(graphs(max_arcs=8, max_weight=1), st.lists(st.integers(1, 5), min_size=1, max_size=6), st.booleans())
def test_vertex_expansion_round_trip(g, gammas, literal):
    g = _vertex_weighted(g, gammas)
    t = fvsp_to_fasp(g, literal=literal)
    sol = solve_exact(t.transformed)
    verts = t.pull_back(sol.arcs)
    assert is_acyclic(g.remove_vertices(verts))
    assert t.pulled_weight(sol.arcs) == sol.weight == brute_force_fvsp(g).optimum


@given(graphs(max_arcs=8))
def test_line_graph_round_trip(g):
    t = fasp_to_fvsp(g, g.weight)
    r = brute_force_fvsp(t.transformed)
    assert r.optimum == brute_force_fasp(g).optimum
    assert is_acyclic(g.remove_arcs(t.pull_back(r.all_optimal_sets[0])))


@given(graphs(max_arcs=10))
def test_expansion_size_bounds(g):
    t = fvsp_to_fasp(g).transformed
    assert t.num_vertices == g.num_arcs + 2 * g.num_vertices
    assert t.num_arcs <= (g.max_degree() + 1) * g.num_vertices


def test_two_cycle_picks_lighter_vertex():
    g = WeightedMultiDigraph([1, 2], [(0, 1, 2), (1, 2, 1)], None, {1: 1, 2: 2})
    t = fvsp_to_fasp(g)
    sol = solve_exact(t.transformed)
    assert sol.arcs == {gadget_arcs(t)[1]} and t.pull_back(sol.arcs) == {1}
