"""Isolated cycles and the polynomial resolution of resolvable graphs.

A cycle through ``e`` is isolated when none of its other arcs lies on a
cycle avoiding ``e``. If ``e`` is no heavier than the cheapest way to break
its isolated cycles, some optimal solution contains ``e``: any solution can
swap its arcs on those cycles for ``e`` without getting heavier. Resolution
commits such arcs, re-reduces to the essential minor and repeats.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Set

from .cycles import CycleSubgraph, elementary_subgraph
from .graph import ArcId, ArcSet, WeightedMultiDigraph, cycle_closure
from .mincut import anchor_cut
from .minor import MinorTrace, essential_minor
from .report import FeedbackReport


def isolated_subgraph(g: WeightedMultiDigraph, e: ArcId) -> CycleSubgraph:
    """G_I(e): the union of the isolated cycles through ``e``."""
    el = elementary_subgraph(g, e).arcs
    if not el:
        return CycleSubgraph(g, frozenset(), e, "elementary")
    elsewhere = set(cycle_closure(g.remove_arcs([e])).arc_ids)
    keep = [a for a in el if a not in elsewhere]
    arcs = elementary_subgraph(g.restrict(keep), e).arcs if e in keep else frozenset()
    return CycleSubgraph(g, arcs, e, "elementary")


def isolating_arcs(g: WeightedMultiDigraph) -> List[ArcId]:
    return [e for e in g.arc_ids if isolated_subgraph(g, e)]


@dataclass(frozen=True)
class Stage:
    trace: MinorTrace
    committed: FrozenSet[ArcId]  # arcs of ``trace.minor`` removed at this stage


@dataclass(frozen=True)
class ResolveTrace:
    resolved: WeightedMultiDigraph
    committed: ArcSet
    minor_stack: List[Stage] = field(default_factory=list)

    @property
    def resolvable(self) -> bool:
        return self.resolved.is_empty()

    @property
    def final(self) -> MinorTrace:
        return self.minor_stack[-1].trace

    def lift(self, arcs) -> ArcSet:
        """Original arcs for a solution of ``resolved``, plus everything committed."""
        t = self.final
        out: Set[ArcId] = set(self.committed.arcs)
        for a in arcs:
            out |= t.kappa[a]
        return ArcSet.of(out, t.origin.weight)


def _commit_pass(g: WeightedMultiDigraph) -> List[ArcId]:
    """Commit isolating arcs in id order, re-examining after each removal."""
    taken: List[ArcId] = []
    for e in sorted(g.arc_ids):
        if e not in g:
            continue
        gi = isolated_subgraph(g, e)
        if not gi:
            continue
        local = gi.graph
        if g.weight[e] <= anchor_cut(local, e).weight:
            taken.append(e)
            g = g.remove_arcs([e])
    return taken


def resolve(g, *, max_stages: Optional[int] = None) -> ResolveTrace:
    """Alternate essential minors and isolated-arc commits until stable."""
    trace = essential_minor(g)
    origin = trace.origin
    committed: Set[ArcId] = set(trace.forced)
    stack: List[Stage] = []
    stages = 0
    while True:
        cur = trace.minor
        taken = _commit_pass(cur)
        stack.append(Stage(trace, frozenset(taken)))
        if not taken:
            break
        for e in taken:
            committed |= trace.kappa[e]
        stages += 1
        if max_stages is not None and stages >= max_stages:
            rest = cur.remove_arcs(taken)
            trace = MinorTrace(rest, {a: trace.kappa[a] for a in rest.arc_ids}, origin)
            stack.append(Stage(trace, frozenset()))
            break
        rest = cur.remove_arcs(taken)
        base = MinorTrace(rest, {a: trace.kappa[a] for a in rest.arc_ids}, origin)
        trace = essential_minor(base)
        committed |= trace.forced
        trace = MinorTrace(trace.minor, trace.kappa, origin)
    return ResolveTrace(trace.minor, ArcSet.of(committed, origin.weight), stack)


def solve_resolvable(g: WeightedMultiDigraph) -> Optional[FeedbackReport]:
    """Optimal solution when ``g`` resolves completely, else None."""
    start = time.perf_counter()
    rt = resolve(g)
    if not rt.resolvable:
        return None
    stats = {"stages": len(rt.minor_stack), "wall_ms": 1000 * (time.perf_counter() - start)}
    return FeedbackReport(rt.committed, "resolvable", True, stats=stats)
