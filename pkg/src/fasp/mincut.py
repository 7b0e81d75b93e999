"""Dinic max-flow / min-cut on multi-digraphs and the anchored local FASP."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Set

from .cycles import elementary_subgraph
from .graph import ArcId, ArcSet, GraphError, Vertex, WeightedMultiDigraph, is_acyclic


@dataclass(frozen=True)
class FlowNetwork:
    graph: WeightedMultiDigraph
    source: Vertex
    sink: Vertex
    capacity: Optional[Mapping[ArcId, int]] = None

    def __post_init__(self) -> None:
        if self.source == self.sink:
            raise GraphError("source and sink must differ")

    def cap(self, a: ArcId) -> int:
        return (self.capacity if self.capacity is not None else self.graph.weight)[a]


@dataclass(frozen=True)
class CutResult:
    cut: ArcSet
    flow: int
    source_side: frozenset


class _Dinic:
    # residual edges live in flat lists; edge i and i ^ 1 are partners
    def __init__(self, n: int) -> None:
        self.n = n
        self.head: List[int] = []
        self.cap: List[int] = []
        self.adj: List[List[int]] = [[] for _ in range(n)]

    def add(self, u: int, v: int, c: int) -> int:
        idx = len(self.head)
        self.head += [v, u]
        self.cap += [c, 0]
        self.adj[u].append(idx)
        self.adj[v].append(idx + 1)
        return idx

    def _levels(self, s: int, t: int) -> Optional[List[int]]:
        level = [-1] * self.n
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for i in self.adj[u]:
                if self.cap[i] > 0 and level[self.head[i]] < 0:
                    level[self.head[i]] = level[u] + 1
                    q.append(self.head[i])
        return level if level[t] >= 0 else None

    def _augment(self, s: int, t: int, level: List[int], it: List[int]) -> int:
        # iterative blocking-flow search along level-increasing edges
        path: List[int] = []
        u = s
        while True:
            if u == t:
                push = min(self.cap[i] for i in path)
                for i in path:
                    self.cap[i] -= push
                    self.cap[i ^ 1] += push
                return push
            adj = self.adj[u]
            while it[u] < len(adj):
                i = adj[it[u]]
                v = self.head[i]
                if self.cap[i] > 0 and level[v] == level[u] + 1:
                    break
                it[u] += 1
            else:
                if not path:
                    return 0
                level[u] = -1
                i = path.pop()
                u = self.head[i ^ 1]
                it[u] += 1
                continue
            path.append(adj[it[u]])
            u = self.head[adj[it[u]]]

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, it)
                if not pushed:
                    break
                total += pushed

    def residual_reach(self, s: int) -> Set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for i in self.adj[u]:
                v = self.head[i]
                if self.cap[i] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def max_flow_min_cut(n: FlowNetwork) -> CutResult:
    g = n.graph
    index = {v: i for i, v in enumerate(g.vertices)}
    for v in (n.source, n.sink):
        if v not in index:
            index[v] = len(index)
    d = _Dinic(len(index))
    edge_of: Dict[ArcId, int] = {}
    for a, u, v in g.arcs():
        c = n.cap(a)
        if c < 0:
            raise GraphError(f"arc {a} has negative capacity {c}")
        edge_of[a] = d.add(index[u], index[v], c)
    flow = d.max_flow(index[n.source], index[n.sink])
    reach = d.residual_reach(index[n.source])
    side = frozenset(v for v, i in index.items() if i in reach)
    cut = [a for a, u, v in g.arcs() if u in side and v not in side]
    cap = {a: n.cap(a) for a in cut}
    result = ArcSet.of(cut, cap)
    assert result.weight == flow
    return CutResult(result, flow, side)


def min_st_cut(n: FlowNetwork) -> ArcSet:
    """Minimum-capacity arc set separating source from sink (source-side cut)."""
    return max_flow_min_cut(n).cut


def anchor_cut(g: WeightedMultiDigraph, e: ArcId, weight: Optional[Mapping[ArcId, int]] = None) -> ArcSet:
    """Cheapest arc set meeting every elementary cycle through ``e``.

    Either ``e`` itself is cut, or every path from head(e) back to tail(e)
    inside G_el(e); the lighter option wins, the anchor on ties. Arcs
    parallel to ``e`` never lie on such a path.
    """
    w = g.weight if weight is None else weight
    sub = elementary_subgraph(g, e).arcs
    if not sub:
        return ArcSet(frozenset(), 0)
    par = set(g.parallel(e))
    u, v = g.ends(e)
    rest = g.restrict(a for a in sub if a not in par)
    cut = min_st_cut(FlowNetwork(rest, v, u, {a: w[a] for a in rest.arc_ids}))
    anchor = ArcSet.of([e], w)
    return anchor if anchor.weight <= cut.weight else cut


def local_fas(g: WeightedMultiDigraph, e: ArcId, weight: Optional[Mapping[ArcId, int]] = None) -> ArcSet:
    """An optimal feedback arc set of G_el(e).

    When every cycle of G_el(e) runs through ``e`` the anchored min-cut is
    exact. Otherwise G_el(e) holds cycles avoiding the
    anchor and the exact solver handles the (strictly smaller) subgraph.
    """
    w = g.weight if weight is None else weight
    sub = elementary_subgraph(g, e).arcs
    if not sub:
        return ArcSet(frozenset(), 0)
    local = g.restrict(sub)
    if is_acyclic(local.remove_arcs([e])):
        return anchor_cut(g, e, w)
    from .exact import solve_exact

    return solve_exact(local, {a: w[a] for a in local.arc_ids})
