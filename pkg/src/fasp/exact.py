"""Exact feedback arc sets for small or well-structured subproblems.

Used by the relative-weight sweeps and as the fallback wherever a local
shortcut does not apply. Zero weights are allowed here (clamped credits).

Strategy: drop free arcs, close under cycles, split into strongly connected
pieces, reduce each piece to its essential minor, take the min-cut shortcut
when one arc class meets every cycle, and otherwise branch on the arcs of a
shortest cycle: Omega(G) = min over k on the cycle of w(k) + Omega(G - k).
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from .graph import (
    ArcId,
    ArcSet,
    WeightedMultiDigraph,
    cycle_closure,
    is_acyclic,
    shortest_path,
    strongly_connected_components,
)

_Key = FrozenSet[Tuple[ArcId, object, object, int]]
_memo: Dict[_Key, Tuple[int, FrozenSet[ArcId]]] = {}
_MEMO_LIMIT = 500_000


def clear_cache() -> None:
    _memo.clear()


def solve_exact(g: WeightedMultiDigraph, weight: Optional[Mapping[ArcId, int]] = None) -> ArcSet:
    """Minimum-weight feedback arc set of ``g`` under ``weight`` (default: g's own)."""
    w = dict(g.weight if weight is None else {a: weight[a] for a in g.arc_ids})
    free = frozenset(a for a, x in w.items() if x <= 0)
    rest = g.remove_arcs(free) if free else g
    rest = WeightedMultiDigraph(rest.vertices, rest.arcs(), {a: w[a] for a in rest.arc_ids}, check=False)
    value, arcs = _solve(rest)
    chosen = frozenset(arcs) | (free & frozenset(_cyclic(g)))
    return ArcSet(chosen, value)


def omega(g: WeightedMultiDigraph, weight: Optional[Mapping[ArcId, int]] = None) -> int:
    return solve_exact(g, weight).weight


def _cyclic(g: WeightedMultiDigraph):
    return cycle_closure(g).arc_ids


def _key(g: WeightedMultiDigraph) -> _Key:
    return frozenset((a, u, v, g.weight[a]) for a, u, v in g.arcs())


def _solve(g: WeightedMultiDigraph) -> Tuple[int, FrozenSet[ArcId]]:
    g = cycle_closure(g)
    if g.is_empty():
        return 0, frozenset()
    key = _key(g)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    comps = [c for c in strongly_connected_components(g) if len(c) > 1]
    if len(comps) > 1:
        total, arcs = 0, frozenset()
        for comp in comps:
            members = set(comp)
            part = g.restrict(a for a, u, v in g.arcs() if u in members and v in members)
            val, sol = _solve(part)
            total += val
            arcs |= sol
        result = (total, arcs)
    else:
        result = _solve_strong(g)
    if len(_memo) > _MEMO_LIMIT:
        _memo.clear()
    _memo[key] = result
    return result


def _solve_strong(g: WeightedMultiDigraph) -> Tuple[int, FrozenSet[ArcId]]:
    from .minor import essential_minor

    t = essential_minor(g)
    if t.minor.num_arcs < g.num_arcs or t.forced:
        val, sol = _solve(t.minor) if not t.minor.is_empty() else (0, frozenset())
        lifted = set(t.forced)
        for a in sol:
            lifted |= t.kappa[a]
        return val + t.forced_weight, frozenset(lifted)
    shortcut = _single_class(g)
    if shortcut is not None:
        return shortcut
    cycle = _shortest_cycle(g)
    best: Optional[Tuple[int, FrozenSet[ArcId]]] = None
    for k in sorted(cycle, key=lambda a: (g.weight[a], a)):
        if best is not None and g.weight[k] >= best[0]:
            continue
        val, sol = _solve(g.remove_arcs([k]))
        val += g.weight[k]
        if best is None or val < best[0]:
            best = (val, sol | {k})
    assert best is not None
    return best


def _single_class(g: WeightedMultiDigraph) -> Optional[Tuple[int, FrozenSet[ArcId]]]:
    """If removing one parallel class leaves g acyclic, solve by min-cut."""
    from .mincut import FlowNetwork, min_st_cut

    seen = set()
    for a in g.arc_ids:
        par = g.parallel(a)
        if par[0] in seen:
            continue
        seen.add(par[0])
        rest = g.remove_arcs(par)
        if not is_acyclic(rest):
            continue
        u, v = g.ends(a)
        anchor = ArcSet.of(par, g.weight)
        if v not in rest.vertices or u not in rest.vertices:
            return anchor.weight, anchor.arcs
        cut = min_st_cut(FlowNetwork(rest, v, u))
        best = anchor if anchor.weight <= cut.weight else cut
        return best.weight, best.arcs
    return None


def _shortest_cycle(g: WeightedMultiDigraph):
    best = None
    for a, u, v in g.arcs():
        p = shortest_path(g, v, u)
        if p is not None and (best is None or len(p) + 1 < len(best)):
            best = [a] + p
            if len(best) == 2:
                break
    return best
