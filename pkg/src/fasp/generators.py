"""Instance generators and the fixed fixture graphs.

Fixture weights follow the worked examples where those print numbers;
graphs whose drawings carry no weights are structure-only with unit
weights. Vertices are 1..n in all fixtures.
"""

from __future__ import annotations

import random
from typing import Dict, Tuple

from .graph import WeightedMultiDigraph


def random_instance(rng: random.Random, vertices: Tuple[int, int] = (3, 7), arcs: Tuple[int, int] = (4, 12),
                    weights: Tuple[int, int] = (1, 9)) -> WeightedMultiDigraph:
    """Loop-free multi-digraph with uniform sizes and weights (bounds inclusive)."""
    n = rng.randint(*vertices)
    m = rng.randint(*arcs)
    edges = []
    while len(edges) < m:
        u, v = rng.randint(1, n), rng.randint(1, n)
        if u != v:
            edges.append((u, v, rng.randint(*weights)))
    return WeightedMultiDigraph(range(1, n + 1), [(i, u, v) for i, (u, v, _) in enumerate(edges)],
                                {i: w for i, (_, _, w) in enumerate(edges)})


def random_vertex_instance(rng: random.Random, vertices: Tuple[int, int] = (2, 6), arcs: Tuple[int, int] = (2, 12),
                           weights: Tuple[int, int] = (1, 5)) -> WeightedMultiDigraph:
    """Random graph with vertex weights, for feedback vertex set instances."""
    g = random_instance(rng, vertices, arcs, (1, 1))
    gamma = {v: rng.randint(*weights) for v in g.vertices}
    return WeightedMultiDigraph(g.vertices, g.arcs(), None, gamma)


def diamond_chain(d: int, weight: int = 1) -> WeightedMultiDigraph:
    """``d`` diamonds joined in a ring: 4d vertices, 5d arcs, 2**d elementary cycles.

    Diamond i is s -> l, s -> r, l -> t, r -> t; its sink t feeds the source
    of the next diamond.
    """
    if d < 1:
        raise ValueError("need at least one diamond")
    arcs = []
    for i in range(d):
        s, l, r, t = 4 * i + 1, 4 * i + 2, 4 * i + 3, 4 * i + 4
        nxt = 4 * ((i + 1) % d) + 1
        arcs += [(s, l), (s, r), (l, t), (r, t), (t, nxt)]
    return WeightedMultiDigraph.from_edges([(u, v, weight) for u, v in arcs])


def directed_clique(n: int = 3, weight: int = 1) -> WeightedMultiDigraph:
    """Both arcs between every vertex pair; n = 3 gives the smallest graph without isolated cycles."""
    arcs = [(u, v, weight) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    return WeightedMultiDigraph.from_edges(arcs)


def d3(weight: int = 1) -> WeightedMultiDigraph:
    return directed_clique(3, weight)


def cycle_chain(n: int) -> WeightedMultiDigraph:
    """Unit-weight cycles c_0..c_{n-1}; consecutive cycles share one arc, no other overlaps.

    Shared arc s_i = a_i -> b_i lies on c_{i-1} and c_i; cycle c_i closes
    with the private arcs b_i -> a_{i+1} and b_{i+1} -> a_i. The graph has
    exactly n elementary cycles and optimum ceil(n / 2).
    """
    if n < 1:
        raise ValueError("need at least one cycle")
    if n == 1:
        return WeightedMultiDigraph.from_edges([(1, 2), (2, 1)])
    a = {i: 2 * i - 1 for i in range(1, n)}
    b = {i: 2 * i for i in range(1, n)}
    arcs = [(a[i], b[i]) for i in range(1, n)]
    arcs.append((b[1], a[1]))
    for i in range(1, n - 1):
        arcs += [(b[i], a[i + 1]), (b[i + 1], a[i])]
    arcs.append((b[n - 1], a[n - 1]))
    return WeightedMultiDigraph.from_edges(arcs)


def fig2() -> WeightedMultiDigraph:
    """Three vertices a, b, c with e=(a,b), f=(b,c), g=(b,c), h=(c,b), i=(c,a); structure-only."""
    return WeightedMultiDigraph.from_edges([(1, 2), (2, 3), (2, 3), (3, 2), (3, 1)])


# Arc ids start at 1. Roles: 1 = e1 (w 5), 2 = e2, 3 = e3 (w 6), 4 = d3 (w 2),
# 5 = d1 (w 2); the cycle 1, 2, 4, 3 is the seed cycle. Pinned by: optimum 7
# attained by {d3, e1}; the best solution containing e3 is {e3, d1} of
# weight 8; relative weight of e1 against the pair (e3, d3) is 3 and the
# pairwise score s(e3, d3) is 1; not resolvable, resolvable with unit weights.
_FIG4 = [(1, 2, 5), (2, 4, 6), (3, 1, 6), (4, 3, 2), (3, 1, 2), (1, 4, 2), (2, 3, 3), (2, 3, 2), (2, 4, 7)]

# Arc ids 1..9 are e1..e9, ids 10..14 are f1..f5. Isolated cycles:
# {e1,f1}, {e2,f3}, {e3,f3}, {e4,f4}, {e5,e6,e7,f5,f4}, {e5,e8,e9,e7,f5,f4};
# the isolating arcs are exactly f1, f3, f4 and the backbone f1 f3 f2 keeps
# e1, e2, e3 from being isolating. Weights are not pinned by anything and
# were chosen so one resolution pass solves the graph (optimum 5).
_FIG3 = [(2, 1, 2), (3, 2, 1), (3, 2, 2), (4, 3, 3), (4, 5, 2), (5, 6, 4), (6, 8, 3), (5, 7, 2), (7, 6, 3),
         (1, 2, 1), (3, 1, 4), (2, 3, 2), (3, 4, 2), (8, 3, 3)]


def fig3() -> WeightedMultiDigraph:
    """Graph with three isolating arcs, resolvable in one pass."""
    return WeightedMultiDigraph.from_edges(_FIG3, start=1)


def fig4() -> WeightedMultiDigraph:
    """Not resolvable with these weights, resolvable with unit weights."""
    return WeightedMultiDigraph.from_edges(_FIG4, start=1)


FIXTURES = {
    "fig2": fig2,
    "fig3": fig3,
    "fig4": fig4,
    "d3": d3,
}


def fixture_suite() -> Dict[str, WeightedMultiDigraph]:
    """Named fixtures plus diamond chains D=1..8 and cycle chains of length 1..10."""
    out = {name: fn() for name, fn in FIXTURES.items()}
    for d in range(1, 9):
        out[f"diamond{d}"] = diamond_chain(d)
    for n in range(1, 11):
        out[f"chain{n}"] = cycle_chain(n)
    return out


def write_fixtures(directory: str) -> Dict[str, str]:
    """Write the fixture suite as ``<name>.fas`` files; returns name -> path."""
    import os

    from .io import format_instance

    os.makedirs(directory, exist_ok=True)
    out = {}
    for name, g in fixture_suite().items():
        path = os.path.join(directory, f"{name}.fas")
        with open(path, "w") as fh:
            fh.write(format_instance(g, comments=[name]))
        out[name] = path
    return out
