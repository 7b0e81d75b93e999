"""Essential minor: contract branch-free paths, merge parallel arcs, repeat.

Both rewrites keep the optimal feedback length. A contracted path is cut at
its cheapest arc, so it keeps the minimum weight; a merged parallel class
has to be cut completely, so it keeps the summed weight. ``kappa`` maps
each minor arc back to the original arcs it stands for.

Minor arcs reuse the smallest original id in their kappa image, which keeps
ids unique and stable when minors of minors are taken.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Set, Tuple

from .graph import ArcId, ArcSet, GraphError, Vertex, WeightedMultiDigraph, cycle_closure


@dataclass(frozen=True)
class MinorTrace:
    minor: WeightedMultiDigraph
    kappa: Mapping[ArcId, FrozenSet[ArcId]]
    origin: WeightedMultiDigraph
    # original arcs that every optimal solution may take: cheapest arc of a
    # cycle whose inner vertices all have one in- and one out-arc
    forced: FrozenSet[ArcId] = frozenset()

    @property
    def forced_weight(self) -> int:
        return self.origin.total_weight(self.forced)

    @classmethod
    def identity(cls, g: WeightedMultiDigraph) -> "MinorTrace":
        return cls(g, {a: frozenset([a]) for a in g.arc_ids}, g)


class _Work:
    """Mutable arc table used while rewriting."""

    def __init__(self, t: MinorTrace) -> None:
        g = t.minor
        self.ends: Dict[ArcId, Tuple[Vertex, Vertex]] = {a: (u, v) for a, u, v in g.arcs()}
        self.weight: Dict[ArcId, int] = dict(g.weight)
        self.kappa: Dict[ArcId, FrozenSet[ArcId]] = {a: t.kappa[a] for a in g.arc_ids}
        self.vertices: List[Vertex] = list(g.vertices)
        self.forced: Set[ArcId] = set(t.forced)
        self.origin = t.origin

    def degrees(self) -> Tuple[Dict[Vertex, List[ArcId]], Dict[Vertex, List[ArcId]]]:
        out: Dict[Vertex, List[ArcId]] = {}
        inc: Dict[Vertex, List[ArcId]] = {}
        for a in sorted(self.ends):
            u, v = self.ends[a]
            out.setdefault(u, []).append(a)
            inc.setdefault(v, []).append(a)
        return out, inc

    def trace(self) -> MinorTrace:
        used = {v for uv in self.ends.values() for v in uv}
        verts = [v for v in self.vertices if v in used]
        arcs = [(a, *self.ends[a]) for a in sorted(self.ends)]
        g = WeightedMultiDigraph(verts, arcs, self.weight, check=False)
        return MinorTrace(g, dict(self.kappa), self.origin, frozenset(self.forced))


def _cheaper(w: _Work, a: ArcId, b: ArcId) -> ArcId:
    """argmin of the weight, lowest original id on ties."""
    ka, kb = (w.weight[a], min(w.kappa[a])), (w.weight[b], min(w.kappa[b]))
    return a if ka <= kb else b


def _gamma_pass(w: _Work) -> bool:
    changed = False
    while True:
        out, inc = w.degrees()
        target = None
        for v in w.vertices:
            if len(out.get(v, ())) == 1 and len(inc.get(v, ())) == 1:
                target = v
                break
        if target is None:
            return changed
        changed = True
        a, b = inc[target][0], out[target][0]
        u, _ = w.ends[a]
        _, x = w.ends[b]
        keep = _cheaper(w, a, b)
        weight, kappa = w.weight[keep], w.kappa[keep]
        for y in (a, b):
            del w.ends[y], w.weight[y], w.kappa[y]
        w.vertices.remove(target)
        if u == x:
            # the path closed into a loop: it carries exactly one cycle
            w.forced |= kappa
            continue
        new = min(kappa)
        w.ends[new] = (u, x)
        w.weight[new] = weight
        w.kappa[new] = kappa


def _phi_pass(w: _Work) -> bool:
    classes: Dict[Tuple[Vertex, Vertex], List[ArcId]] = {}
    for a in sorted(w.ends):
        classes.setdefault(w.ends[a], []).append(a)
    changed = False
    for (u, v), arcs in classes.items():
        if len(arcs) < 2:
            continue
        changed = True
        total = sum(w.weight[a] for a in arcs)
        kappa = frozenset().union(*(w.kappa[a] for a in arcs))
        for a in arcs:
            del w.ends[a], w.weight[a], w.kappa[a]
        new = min(kappa)
        w.ends[new] = (u, v)
        w.weight[new] = total
        w.kappa[new] = kappa
    return changed


def _close(w: _Work) -> bool:
    t = w.trace()
    closed = cycle_closure(t.minor)
    if closed.num_arcs == t.minor.num_arcs:
        return False
    for a in set(w.ends) - set(closed.arc_ids):
        del w.ends[a], w.weight[a], w.kappa[a]
    return True


def _as_trace(g) -> MinorTrace:
    return g if isinstance(g, MinorTrace) else MinorTrace.identity(g)


def contract_gamma(g) -> MinorTrace:
    """Replace every vertex with one in-arc and one out-arc by a single arc."""
    w = _Work(_as_trace(g))
    _gamma_pass(w)
    return w.trace()


def merge_phi(t) -> MinorTrace:
    """Collapse each parallel class into one arc carrying the summed weight."""
    w = _Work(_as_trace(t))
    _phi_pass(w)
    return w.trace()


def essential_minor(g) -> MinorTrace:
    """Cycle closure, then contraction and merging until nothing changes.

    Accepts a graph or a trace; a trace is refined further with its kappa
    composed, so minors of minors still map to the original arcs.
    """
    w = _Work(_as_trace(g))
    _close(w)
    while True:
        changed = _gamma_pass(w)
        changed |= _phi_pass(w)
        changed |= _close(w)
        if not changed:
            return w.trace()


def lift_solution(t: MinorTrace, sol: Iterable[ArcId], include_forced: bool = True) -> ArcSet:
    """Original arcs standing for ``sol`` (plus the forced arcs by default)."""
    out: Set[ArcId] = set(t.forced) if include_forced else set()
    for a in sol:
        if a not in t.kappa:
            raise GraphError(f"arc {a} is not an arc of the minor")
        out |= t.kappa[a]
    return ArcSet.of(out, t.origin.weight)
