"""Exact solvers CUT and CUT & RESOLVE.

Both repeatedly pick a cycle and cut the arc k of that cycle minimising
w(k) + Omega(G - k); that arc extends to an optimal solution. The choice is
made with pairwise scores

    s(e, h) = (w(e) - Omega(H_eh, sigma_e)) - (w(h) - Omega(H_he, sigma_h))

built from relative weights. When one of the two meta components involved
has a cycle, the relative weights are not exact, and the score is taken
from the cost difference (w(e) + Omega(G - e)) - (w(h) + Omega(G - h)) with
both terms from the exact solver instead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .cycles import elementary_subgraph, on_some_cycle
from .exact import omega as exact_omega
from .graph import ArcId, ArcSet, WeightedMultiDigraph, cyclic_arcs, shortest_path
from .meta import MetaGraph, global_m, is_tree_component, meta_graph, relative_subgraph, relative_weight_general
from .report import FeedbackReport
from .resolve import resolve

DEFAULT_M_BUDGET = 20


class BudgetExceeded(RuntimeError):
    """The meta-cycle parameter exceeds the configured budget."""


def _omega(g: WeightedMultiDigraph, w) -> int:
    return exact_omega(g, w)


@dataclass
class _Stats:
    relative: int = 0
    fallback: int = 0
    sigma_evaluations: int = 0

    def as_dict(self) -> Dict[str, int]:
        return {"relative_scores": self.relative, "fallback_scores": self.fallback,
                "sigma_evaluations": self.sigma_evaluations}


def relative_score(g: WeightedMultiDigraph, m: MetaGraph, e: ArcId, h: ArcId) -> int:
    """s(e, h) from relative weights only (no global solves)."""
    se = relative_weight_general(g, m, e, h, _omega)
    sh = relative_weight_general(g, m, h, e, _omega)
    a = _omega(relative_subgraph(g, e, h), se.capacities())
    b = _omega(relative_subgraph(g, h, e), sh.capacities())
    return (g.weight[e] - a) - (g.weight[h] - b)


def cost_difference(g: WeightedMultiDigraph, e: ArcId, h: ArcId) -> int:
    """(w(e) + Omega(G - e)) - (w(h) + Omega(G - h)), exactly."""
    return (g.weight[e] + exact_omega(g.remove_arcs([e]))) - (g.weight[h] + exact_omega(g.remove_arcs([h])))


def pairwise_score(g: WeightedMultiDigraph, c: Sequence[ArcId], e: ArcId, h: ArcId,
                   m: Optional[MetaGraph] = None, stats: Optional[_Stats] = None) -> int:
    """Score of ``e`` against ``h`` on cycle ``c``; negative means e is the better cut."""
    if e == h:
        return 0
    m = meta_graph(g, c) if m is None else m
    if is_tree_component(m, e, h) and is_tree_component(m, h, e):
        if stats is not None:
            stats.relative += 1
            stats.sigma_evaluations += 2
        return relative_score(g, m, e, h)
    if stats is not None:
        stats.fallback += 1
    return cost_difference(g, e, h)


def select_arc(g: WeightedMultiDigraph, c: Sequence[ArcId], stats: Optional[_Stats] = None) -> ArcId:
    """The arc of ``c`` that is minimal in the score preorder (lowest id on ties)."""
    m = meta_graph(g, c)
    arcs = sorted(set(c))
    best = arcs[0]
    for h in arcs[1:]:
        if pairwise_score(g, c, h, best, m, stats) < 0:
            best = h
    return best


def _cycle_through(g: WeightedMultiDigraph, e: ArcId) -> Optional[List[ArcId]]:
    u, v = g.ends(e)
    p = shortest_path(g, v, u)
    return None if p is None else [e] + p


def _check_budget(g: WeightedMultiDigraph, budget: Optional[int]) -> int:
    if budget is None:
        return -1
    m = global_m(g)
    if m > budget:
        raise BudgetExceeded(f"meta-cycle parameter {m} exceeds budget {budget}; use the greedy heuristics")
    return m


def _cut_loop(g: WeightedMultiDigraph, stats: _Stats) -> Tuple[WeightedMultiDigraph, List[ArcId]]:
    chosen: List[ArcId] = []
    while True:
        cyc = cyclic_arcs(g)
        if not cyc:
            return g, chosen
        f = min(cyc)
        work = sorted(elementary_subgraph(g, f).arcs)
        while True:
            e = next((a for a in work if a in g and on_some_cycle(g, a)), None)
            if e is None:
                break
            c = _cycle_through(g, e)
            k = select_arc(g, c, stats)
            chosen.append(k)
            g = g.remove_arcs([k])


def cut(g: WeightedMultiDigraph, *, m_budget: Optional[int] = DEFAULT_M_BUDGET) -> FeedbackReport:
    start = time.perf_counter()
    m = _check_budget(g, m_budget)
    stats = _Stats()
    _, chosen = _cut_loop(g, stats)
    sol = ArcSet.of(chosen, g.weight)
    info = {"m": m, **stats.as_dict(), "wall_ms": 1000 * (time.perf_counter() - start)}
    return FeedbackReport(sol, "cut", True, stats=info)


def cut_resolve(g: WeightedMultiDigraph, *, m_budget: Optional[int] = DEFAULT_M_BUDGET) -> FeedbackReport:
    """CUT on the resolved graph, re-resolving after every cut."""
    start = time.perf_counter()
    stats = _Stats()
    rt = resolve(g)
    m = _check_budget(rt.resolved, m_budget) if not rt.resolvable else 0
    committed: Set[ArcId] = set(rt.committed.arcs)
    rounds = 0
    while not rt.resolvable:
        s = rt.resolved
        f = min(cyclic_arcs(s))
        c = _cycle_through(s, f)
        k = select_arc(s, c, stats)
        committed |= rt.final.kappa[k]
        rest = s.remove_arcs([k])
        from .minor import MinorTrace

        rt = resolve(MinorTrace(rest, {a: rt.final.kappa[a] for a in rest.arc_ids}, g))
        committed |= rt.committed.arcs
        rounds += 1
    sol = ArcSet.of(committed, g.weight)
    info = {"m": m, "rounds": rounds, **stats.as_dict(), "wall_ms": 1000 * (time.perf_counter() - start)}
    return FeedbackReport(sol, "cut-resolve", True, stats=info)


def solve(g: WeightedMultiDigraph, method: str = "auto", *, m_budget: Optional[int] = DEFAULT_M_BUDGET) -> FeedbackReport:
    """Dispatch: ``cut``, ``cut-resolve`` or ``auto`` (resolve, then CUT & RESOLVE, else greedy)."""
    if method == "cut":
        return cut(g, m_budget=m_budget)
    if method == "cut-resolve":
        return cut_resolve(g, m_budget=m_budget)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    from .resolve import solve_resolvable

    r = solve_resolvable(g)
    if r is not None:
        return r
    try:
        return cut_resolve(g, m_budget=m_budget)
    except BudgetExceeded:
        from .heuristics import greedy_cut_resolve

        return greedy_cut_resolve(g)
