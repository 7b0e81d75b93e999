"""Arc sensitivity, meta graphs and relative weights.

The meta graph of a seed cycle records which arcs can still be hit by other
cycles once one arc is cut. Relative weights fold the cost of those other
cycles back onto the arcs of the seed cycle so that a local comparison
between two arcs of the seed reproduces the global cost difference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Set, Tuple

from .cycles import elementary_subgraph, on_some_cycle
from .graph import ArcId, GraphError, WeightedMultiDigraph, cycle_closure

OmegaFn = Callable[[WeightedMultiDigraph, Mapping[ArcId, int]], int]


def arc_sensitive(g: WeightedMultiDigraph, f: ArcId, e: ArcId) -> bool:
    """f depends on e: f lies in G_el(e) and stays on a cycle once e is gone."""
    if e == f:
        raise GraphError("sensitivity needs two distinct arcs")
    if f not in g or e not in g:
        return False
    if f not in elementary_subgraph(g, e).arcs:
        return False
    return on_some_cycle(g.remove_arcs([e]), f)


def sensitive_arcs(g: WeightedMultiDigraph, e: ArcId) -> List[ArcId]:
    """All arcs sensitive to ``e``, ascending."""
    if e not in g:
        return []
    el = elementary_subgraph(g, e).arcs
    if not el:
        return []
    rest = cycle_closure(g.remove_arcs([e]))
    return sorted(f for f in el if f != e and f in rest)


@dataclass(frozen=True)
class MetaGraph:
    nodes: FrozenSet[ArcId]
    edges: FrozenSet[FrozenSet[ArcId]]
    seed_cycle: Tuple[ArcId, ...]
    layers: Mapping[ArcId, int] = field(default_factory=dict)

    def neighbours(self, h: ArcId) -> List[ArcId]:
        return sorted(x for edge in self.edges if h in edge for x in edge if x != h)

    def adjacency(self, nodes: Optional[Set[ArcId]] = None) -> Dict[ArcId, Set[ArcId]]:
        keep = self.nodes if nodes is None else nodes
        adj: Dict[ArcId, Set[ArcId]] = {h: set() for h in keep}
        for edge in self.edges:
            a, b = tuple(edge)
            if a in adj and b in adj:
                adj[a].add(b)
                adj[b].add(a)
        return adj

    def component(self, start: ArcId, without: Optional[ArcId] = None) -> Set[ArcId]:
        """Nodes connected to ``start`` once ``without`` is deleted."""
        adj = self.adjacency(set(self.nodes) - ({without} if without is not None else set()))
        if start not in adj:
            return set()
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def restricted(self, nodes: Set[ArcId]) -> "MetaGraph":
        edges = frozenset(e for e in self.edges if e <= nodes)
        return MetaGraph(frozenset(nodes), edges, self.seed_cycle, {h: self.layers.get(h, 0) for h in nodes})


def meta_graph(g: WeightedMultiDigraph, cycle: Sequence[ArcId]) -> MetaGraph:
    """Breadth-first sensitivity layers grown from the arcs of ``cycle``.

    Layer 0 is the seed cycle. Layer k collects arcs sensitive to a layer
    k-1 arc h once the earlier layers (except h) are deleted; the first
    expansion runs on the full graph so that arcs of the seed may depend on
    each other. Nodes enter a single layer only.
    """
    for a in cycle:
        g.ends(a)
    layers: Dict[ArcId, int] = {a: 0 for a in cycle}
    edges: Set[FrozenSet[ArcId]] = set()
    frontier = list(dict.fromkeys(cycle))
    seen: Set[ArcId] = set(frontier)
    removed: Set[ArcId] = set()
    k = 0
    while frontier:
        k += 1
        new: List[ArcId] = []
        for h in frontier:
            sub = g.remove_arcs(removed - {h}) if removed else g
            for f in sensitive_arcs(sub, h):
                edges.add(frozenset((h, f)))
                if f not in seen:
                    seen.add(f)
                    layers[f] = k
                    new.append(f)
        # arcs of the new layer may be sensitive to each other
        if new:
            sub = g.remove_arcs(removed | set(frontier))
            new_set = set(new)
            for h in new:
                for f in sensitive_arcs(sub, h):
                    if f in new_set:
                        edges.add(frozenset((h, f)))
        removed |= set(frontier)
        frontier = new
    return MetaGraph(frozenset(seen), frozenset(edges), tuple(cycle), layers)


def meta_cycle_dim(m: MetaGraph, f: ArcId, anchor: Optional[ArcId] = None) -> int:
    """m(c, f): cycle-space rank of the piece of M minus f that holds the anchor.

    Without an explicit anchor the component of the lowest seed arc other
    than ``f`` is used.
    """
    if f not in m.nodes:
        raise GraphError(f"arc {f} is not a meta node")
    if anchor is None:
        rest = [a for a in m.seed_cycle if a != f]
        if not rest:
            return 0
        anchor = min(rest)
    comp = m.component(anchor, without=f)
    n_edges = sum(1 for e in m.edges if e <= comp)
    return n_edges - len(comp) + 1 if comp else 0


def is_tree_component(m: MetaGraph, e: ArcId, f: ArcId) -> bool:
    return meta_cycle_dim(m, f, e) == 0


@dataclass(frozen=True)
class RelativeWeight:
    sigma: Mapping[ArcId, int]
    cycle: Tuple[ArcId, ...]
    anchor: ArcId
    excluded: ArcId

    def __getitem__(self, a: ArcId) -> int:
        return self.sigma[a]

    def capacities(self) -> Dict[ArcId, int]:
        """Non-negative weights for the sub-solves (negative credits clamp to 0)."""
        return {a: max(0, s) for a, s in self.sigma.items()}


def _leaves(adj: Dict[ArcId, Set[ArcId]], root: ArcId) -> List[ArcId]:
    return sorted(h for h, nb in adj.items() if h != root and len(nb) <= 1)


def tree_sweep(
    g: WeightedMultiDigraph,
    nodes: Set[ArcId],
    adj_edges: Set[FrozenSet[ArcId]],
    root: ArcId,
    excluded: ArcId,
    sigma: Dict[ArcId, int],
    omega: OmegaFn,
) -> Dict[ArcId, int]:
    """Leaf-to-root credit sweep over a tree of meta nodes (updates ``sigma``)."""
    g1 = g.remove_arcs([excluded]) if excluded in g else g
    alive = set(nodes)
    while True:
        adj: Dict[ArcId, Set[ArcId]] = {h: set() for h in alive}
        for edge in adj_edges:
            a, b = tuple(edge)
            if a in alive and b in alive:
                adj[a].add(b)
                adj[b].add(a)
        leaves = _leaves(adj, root)
        if not leaves:
            return sigma
        inner = alive - set(leaves)
        gh = g1.remove_arcs(inner)
        # leaves of one round are solved against the weights of the previous round
        before = {a: max(0, x) for a, x in sigma.items()}
        for h in leaves:
            if h not in gh:
                continue
            sub = elementary_subgraph(gh, h).arcs
            if sub:
                local = gh.restrict(sub)
                sigma[h] = sigma[h] - omega(local, {a: before[a] for a in local.arc_ids})
        alive = inner


def relative_weight_tree(g: WeightedMultiDigraph, m: MetaGraph, e: ArcId, f: ArcId, omega: OmegaFn) -> RelativeWeight:
    comp = m.component(e, without=f)
    edges = {x for x in m.edges if x <= comp}
    if len(edges) != len(comp) - 1:
        raise GraphError("meta component is not a tree")
    sigma = dict(g.weight)
    tree_sweep(g, comp, edges, e, f, sigma, omega)
    return _finish(g, m, e, f, sigma)


def _finish(g: WeightedMultiDigraph, m: MetaGraph, e: ArcId, f: ArcId, sigma: Dict[ArcId, int]) -> RelativeWeight:
    g1 = g.remove_arcs([f])
    keep = set(sensitive_arcs(g1, e))
    final = {a: (sigma[a] if a in keep else g.weight[a]) for a in g.arc_ids}
    return RelativeWeight(final, m.seed_cycle, e, f)


def frontier_tree(m: MetaGraph, nodes: Set[ArcId], root: ArcId) -> Set[FrozenSet[ArcId]]:
    """Spanning tree of ``nodes`` that cuts every meta cycle where it first closes.

    Nodes are reached breadth-first from ``root``; a node at distance k keeps
    only the edge to its lowest-id neighbour at distance k-1, and edges inside
    one distance layer are dropped. Repeating the truncation of the frontier
    nodes layer by layer gives this tree in a single sweep.
    """
    adj = m.adjacency(nodes)
    dist = {root: 0}
    order = [root]
    for v in order:
        for w in sorted(adj[v]):
            if w not in dist:
                dist[w] = dist[v] + 1
                order.append(w)
    tree: Set[FrozenSet[ArcId]] = set()
    for v in order[1:]:
        parent = min(w for w in adj[v] if dist.get(w) == dist[v] - 1)
        tree.add(frozenset((parent, v)))
    return tree


def relative_weight_general(g: WeightedMultiDigraph, m: MetaGraph, e: ArcId, f: ArcId, omega: OmegaFn) -> RelativeWeight:
    """Relative weight for any meta graph; tree components use the plain sweep.

    Meta cycles are broken at the frontier where they close first, seen from
    ``e``, and the credit sweep runs over the resulting tree. On components
    with cycles this is a heuristic reading: the credits of arcs that share
    further cycles need not add up, so the identity checked by
    ``bellman_gap`` may fail there.
    """
    comp = m.component(e, without=f)
    edges = {x for x in m.edges if x <= comp}
    tree = edges if len(edges) == len(comp) - 1 else frontier_tree(m, comp, e)
    sigma = dict(g.weight)
    tree_sweep(g, comp, tree, e, f, sigma, omega)
    return _finish(g, m, e, f, sigma)


def relative_subgraph(g: WeightedMultiDigraph, e: ArcId, f: ArcId) -> WeightedMultiDigraph:
    """H_{e,f}: the cycles of G_el(e) that avoid ``f``."""
    sub = elementary_subgraph(g, e).arcs
    return cycle_closure(g.restrict(sub).remove_arcs([f]))


def global_m(g: WeightedMultiDigraph) -> int:
    """Largest meta-cycle rank over a decomposition of the cycles of ``g``.

    Works on the essential minor: branch-free paths and parallel classes do
    not add choices, and leaving them in would create meta cycles that only
    repeat the same decision. Seeds are taken one at a time from what is
    left after deleting the arcs of earlier meta graphs.
    """
    from .graph import find_cycle
    from .minor import essential_minor

    rest = essential_minor(g).minor
    best = 0
    while True:
        rest = cycle_closure(rest)
        c = find_cycle(rest)
        if c is None:
            return best
        mg = meta_graph(rest, c)
        for f in c:
            for e in c:
                if e != f:
                    best = max(best, meta_cycle_dim(mg, f, e))
        rest = rest.remove_arcs(mg.nodes)
