"""Subgraphs induced by all elementary or simple cycles through an arc.

Convention: a cycle through ``e = (u, v)`` is ``e`` followed by a path from
``head(e) = v`` back to ``tail(e) = u``. Every search below therefore runs
from the head of the anchor to its tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Literal, Optional, Set, Tuple, Union

from .graph import ArcId, GraphError, Vertex, WeightedMultiDigraph, coreachable, line_graph, reachable

Kind = Literal["walk", "elementary", "simple"]


@dataclass(frozen=True)
class CycleSubgraph:
    base: WeightedMultiDigraph
    arcs: FrozenSet[ArcId]
    anchor: Union[ArcId, Tuple[Vertex, Vertex]]
    kind: Kind
    # arcs parallel to the anchor; their cycles use exactly the same paths
    parallels: FrozenSet[ArcId] = frozenset()

    @property
    def graph(self) -> WeightedMultiDigraph:
        return self.base.restrict(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    def __bool__(self) -> bool:
        return bool(self.arcs)


def _walk_arcs(g: WeightedMultiDigraph, u: Vertex, v: Vertex, banned: Set[ArcId] = frozenset()) -> Set[ArcId]:
    fwd = reachable(g, u, banned)
    if v not in fwd:
        return set()
    bwd = coreachable(g, v, banned)
    return {a for a, x, y in g.arcs() if a not in banned and x in fwd and y in bwd}


def reachable_subgraph(g: WeightedMultiDigraph, u: Vertex, v: Vertex) -> CycleSubgraph:
    """G(u, v): arcs on some directed walk from u to v."""
    return CycleSubgraph(g, frozenset(_walk_arcs(g, u, v)), (u, v), "walk")


def filter_elementary(g: WeightedMultiDigraph, s: Vertex, t: Vertex, banned: Set[ArcId] = frozenset()) -> Set[ArcId]:
    """Cheap path filter for G_el(s, t), repeated until stable.

    Starting from G(s, t), an arc f = (x, y) is dropped when y cannot be
    reached from s once every other arc entering y is removed (so no
    elementary prefix ends with f), or symmetrically when t cannot be
    reached from x once every other arc leaving x is removed. The result
    contains G_el(s, t) but can be strictly larger: deciding membership
    exactly is as hard as the directed two-disjoint-paths problem.
    """
    arcs = _walk_arcs(g, s, t, banned)
    while True:
        sub = g.restrict(arcs)
        drop = set()
        for f in arcs:
            x, y = sub.ends(f)
            if y == s or x == t:
                drop.add(f)
                continue
            others_in = set(sub.in_arcs(y)) - {f}
            if y not in reachable(sub, s, others_in):
                drop.add(f)
                continue
            others_out = set(sub.out_arcs(x)) - {f}
            if x not in coreachable(sub, t, others_out):
                drop.add(f)
        if not drop:
            return arcs
        arcs = _walk_arcs(sub, s, t, drop)


def _witness(g: WeightedMultiDigraph, s: Vertex, t: Vertex, f: ArcId) -> Optional[List[ArcId]]:
    """An elementary s->t path through ``f``, or None (exhaustive search)."""
    x, y = g.ends(f)
    visited = {s}
    path: List[ArcId] = []

    def finish() -> Optional[List[ArcId]]:
        # prefix s..x is fixed; need y -> t avoiding it
        banned_v = set(visited)
        if y in banned_v:
            return None
        if y == t:
            return path + [f]
        suffix = _bfs_path(g, y, t, banned_v)
        return None if suffix is None else path + [f] + suffix

    def dfs(v: Vertex) -> Optional[List[ArcId]]:
        if v == x:
            return finish()
        for a in g.out_arcs(v):
            w = g.head(a)
            if w in visited or w == y or w == t:
                continue
            if x not in reachable(g, w, banned_vertices=visited | {y, t}):
                continue
            visited.add(w)
            path.append(a)
            found = dfs(w)
            if found is not None:
                return found
            path.pop()
            visited.discard(w)
        return None

    if s == y or x == t:
        return None
    return dfs(s)


def _bfs_path(g: WeightedMultiDigraph, u: Vertex, v: Vertex, banned_v: Set[Vertex]) -> Optional[List[ArcId]]:
    pred = {}
    seen = {u}
    frontier = [u]
    while frontier:
        nxt = []
        for a_v in frontier:
            for a in g.out_arcs(a_v):
                w = g.head(a)
                if w in seen or w in banned_v:
                    continue
                seen.add(w)
                pred[w] = a
                if w == v:
                    out = []
                    while w != u:
                        out.append(pred[w])
                        w = g.tail(pred[w])
                    return out[::-1]
                nxt.append(w)
        frontier = nxt
    return None


def elementary_path_arcs(g: WeightedMultiDigraph, s: Vertex, t: Vertex, banned: Set[ArcId] = frozenset(),
                         exact: bool = True) -> Set[ArcId]:
    """Arcs of G_el(s, t): the union of all elementary s->t paths."""
    if s == t:
        raise GraphError("elementary paths need distinct endpoints")
    candidates = filter_elementary(g, s, t, banned)
    if not exact or not candidates:
        return candidates
    sub = g.restrict(candidates)
    confirmed: Set[ArcId] = set()
    for f in sorted(candidates):
        if f in confirmed:
            continue
        p = _witness(sub, s, t, f)
        if p is not None:
            confirmed.update(p)
    return confirmed


@lru_cache(maxsize=200_000)
def _el_cached(g: WeightedMultiDigraph, e: ArcId, exact: bool) -> FrozenSet[ArcId]:
    u, v = g.ends(e)
    paths = elementary_path_arcs(g, v, u, set(g.parallel(e)), exact)
    return frozenset(paths | {e}) if paths else frozenset()


def elementary_subgraph(g: WeightedMultiDigraph, e: ArcId, *, exact: bool = True) -> CycleSubgraph:
    """G_el(e): the union of all elementary cycles through ``e``.

    With ``exact=False`` only the polynomial filter runs, which may keep arcs
    that lie on no elementary cycle through ``e``.
    """
    arcs = _el_cached(g, e, exact)
    par = frozenset(g.parallel(e)) - {e} if arcs else frozenset()
    return CycleSubgraph(g, arcs, e, "elementary", par)


def on_some_cycle(g: WeightedMultiDigraph, e: ArcId) -> bool:
    u, v = g.ends(e)
    return u in reachable(g, v)


def simple_subgraph(g: WeightedMultiDigraph, e: ArcId) -> CycleSubgraph:
    """G_si(e): the union of all simple (arc-distinct) cycles through ``e``.

    Simple cycles of ``g`` are elementary cycles of its line graph, so the
    answer is the vertex set of the line-graph cycles through vertex ``e``.
    """
    g.ends(e)
    lg = line_graph(g)
    arcs: Set[ArcId] = set()
    for a in lg.out_arcs(e):
        sub = elementary_subgraph(lg, a)
        for b in sub.arcs:
            arcs.update(lg.ends(b))
    par = frozenset(g.parallel(e)) - {e} if arcs else frozenset()
    return CycleSubgraph(g, frozenset(arcs), e, "simple", par)
