"""Translations between feedback arc and feedback vertex set instances.

Arcs become vertices through the line graph. Vertices become arcs through
the bipartite expansion of the natural hypergraph: vertex v splits into an
in-collector and an out-emitter joined by the gadget arc, every arc e=(u,v)
becomes a node x_e on the path u_out -> x_e -> v_in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Literal, Mapping, Optional, Set

from .graph import ArcId, Vertex, WeightedMultiDigraph, line_graph

Direction = Literal["fas-to-fvs", "fvs-to-fas"]


@dataclass(frozen=True)
class ReductionTrace:
    direction: Direction
    source: WeightedMultiDigraph
    transformed: WeightedMultiDigraph
    # transformed element (vertex for fas-to-fvs, arc for fvs-to-fas) -> original element
    pullback: Mapping[Hashable, Hashable]

    def pull_back(self, elements: Iterable[Hashable]) -> Set[Hashable]:
        return {self.pullback[x] for x in elements if x in self.pullback}

    def pulled_weight(self, elements: Iterable[Hashable]) -> int:
        got = self.pull_back(elements)
        if self.direction == "fas-to-fvs":
            return self.source.total_weight(got)
        gamma = _gamma(self.source)
        return sum(gamma[v] for v in got)


def _gamma(g: WeightedMultiDigraph, gamma: Optional[Mapping[Vertex, int]] = None) -> Dict[Vertex, int]:
    if gamma is not None:
        return {v: gamma[v] for v in g.vertices}
    if g.vertex_weight is not None:
        return dict(g.vertex_weight)
    return {v: 1 for v in g.vertices}


def fasp_to_fvsp(g: WeightedMultiDigraph, weight: Optional[Mapping[ArcId, int]] = None) -> ReductionTrace:
    """Line graph; vertex weights are the arc weights, vertex ids the arc ids."""
    lg = line_graph(g)
    if weight is not None:
        lg = WeightedMultiDigraph(lg.vertices, lg.arcs(), lg.weight, {a: weight[a] for a in g.arc_ids}, check=False)
    return ReductionTrace("fas-to-fvs", g, lg, {a: a for a in g.arc_ids})


def fvsp_to_fasp(g: WeightedMultiDigraph, gamma: Optional[Mapping[Vertex, int]] = None,
                 *, literal: bool = False) -> ReductionTrace:
    """Gadget expansion G*; a FAS of G* pulls back to a FVS of ``g`` of equal weight.

    Gadget arcs carry gamma(v). Rim arcs weigh 1 + sum(gamma) by default so
    they are never worth cutting. With ``literal`` they carry the gamma of
    the gadget they touch instead and pull back to that vertex.
    """
    gm = _gamma(g, gamma)
    big = 1 + sum(gm.values())
    verts = [("in", v) for v in g.vertices] + [("out", v) for v in g.vertices] + [("arc", a) for a in g.arc_ids]
    arcs, weight, back = [], {}, {}
    k = 0

    def add(u, v, w, origin):
        nonlocal k
        arcs.append((k, u, v))
        weight[k] = w
        if origin is not None:
            back[k] = origin
        k += 1

    for v in g.vertices:
        add(("in", v), ("out", v), gm[v], v)
    for a, u, v in g.arcs():
        add(("out", u), ("arc", a), gm[u] if literal else big, u if literal else None)
        add(("arc", a), ("in", v), gm[v] if literal else big, v if literal else None)
    star = WeightedMultiDigraph(verts, arcs, weight, check=False)
    return ReductionTrace("fvs-to-fas", g, star, back)


def gadget_arcs(trace: ReductionTrace) -> Dict[Vertex, ArcId]:
    """Vertex -> its gadget arc h*_v in the expansion."""
    t = trace.transformed
    return {t.tail(a)[1]: a for a in t.arc_ids if t.tail(a)[0] == "in"}
