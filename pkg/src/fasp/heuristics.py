"""Greedy feedback arc sets, certified lower bounds and the hybrid strategy.

Effective weights rank arcs by how much they break per unit of weight:
xi(e) = theta(e) / w(e) counts elementary cycles through e, and
eta(e) = phi(e) / w(e) counts arcs of G_el(e). Every feedback set has to
pay for all cycles (resp. all arcs of the cycle closure), which gives the
lower bounds mu = ceil(|cycles| / xi_max) and upsilon = ceil(|E| / eta_max).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Literal, Mapping, Optional, Set, Tuple

import networkx as nx

from .cycles import elementary_subgraph
from .graph import ArcId, ArcSet, WeightedMultiDigraph, cycle_closure, find_cycle, is_acyclic
from .report import FeedbackReport

Effective = Literal["xi", "eta"]
DEFAULT_PATH_BUDGET = 1_000_000


class EnumerationBudgetExceeded(RuntimeError):
    """Counting elementary cycles needed more partial paths than allowed."""


def theta(g: WeightedMultiDigraph, e: ArcId, budget: int = DEFAULT_PATH_BUDGET) -> int:
    """Number of elementary cycles through ``e`` (exact enumeration)."""
    sub = elementary_subgraph(g, e).arcs
    if not sub:
        return 0
    local = g.restrict(sub)
    u, v = g.ends(e)
    return _paths(local, v, u, [budget])


def _paths(g: WeightedMultiDigraph, s, t, budget: List[int]) -> int:
    count = 0
    path = [s]
    visited = {s}
    iters = [iter(g.out_arcs(s))]
    while iters:
        advanced = False
        for a in iters[-1]:
            w = g.head(a)
            if w == t:
                count += 1
            elif w not in visited:
                budget[0] -= 1
                if budget[0] < 0:
                    raise EnumerationBudgetExceeded("elementary path enumeration budget exhausted")
                visited.add(w)
                path.append(w)
                iters.append(iter(g.out_arcs(w)))
                advanced = True
                break
        if not advanced:
            iters.pop()
            visited.discard(path.pop())
    return count


def phi(g: WeightedMultiDigraph, e: ArcId) -> int:
    """Number of arcs of G_el(e)."""
    return len(elementary_subgraph(g, e).arcs)


def count_cycles(g: WeightedMultiDigraph, budget: int = DEFAULT_PATH_BUDGET) -> int:
    """|O_el(G)|: each cycle is counted at its lowest arc id."""
    left = [budget]
    total = 0
    rest = cycle_closure(g)
    for e in sorted(rest.arc_ids):
        sub = elementary_subgraph(rest, e).arcs
        if sub:
            u, v = rest.ends(e)
            total += _paths(rest.restrict(sub), v, u, left)
        rest = rest.remove_arcs([e])
    return total


@dataclass(frozen=True)
class BoundReport:
    theta_max: Optional[int]
    phi_max: int
    xi_max: Optional[Fraction]
    eta_max: Fraction
    mu: Optional[int]
    upsilon: int
    upper: int
    cycles: Optional[int]

    @property
    def best(self) -> int:
        return max(self.mu or 0, self.upsilon)


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def lower_bounds(g: WeightedMultiDigraph, budget: int = DEFAULT_PATH_BUDGET) -> BoundReport:
    """mu and upsilon on the cycle closure, plus the trivial upper bound."""
    h = cycle_closure(g)
    upper = math.ceil(h.num_arcs / 2) * max(h.weight.values(), default=0)
    if h.is_empty():
        return BoundReport(0, 0, Fraction(0), Fraction(0), 0, 0, 0, 0)
    phis = {e: phi(h, e) for e in h.arc_ids}
    eta_max = max(Fraction(phis[e], h.weight[e]) for e in h.arc_ids)
    upsilon = _ceil(Fraction(h.num_arcs) / eta_max)
    try:
        left = [budget]
        thetas = {}
        for e in h.arc_ids:
            sub = elementary_subgraph(h, e).arcs
            u, v = h.ends(e)
            thetas[e] = _paths(h.restrict(sub), v, u, left) if sub else 0
        cycles = count_cycles(h, budget)
    except EnumerationBudgetExceeded:
        return BoundReport(None, max(phis.values()), None, eta_max, None, upsilon, upper, None)
    xi_max = max(Fraction(thetas[e], h.weight[e]) for e in h.arc_ids)
    mu = _ceil(Fraction(cycles) / xi_max)
    return BoundReport(max(thetas.values()), max(phis.values()), xi_max, eta_max, mu, upsilon, upper, cycles)


def effective_weights(g: WeightedMultiDigraph, effective: Effective = "xi",
                      budget: int = DEFAULT_PATH_BUDGET) -> Dict[ArcId, Fraction]:
    h = cycle_closure(g)
    out: Dict[ArcId, Fraction] = {}
    for e in h.arc_ids:
        count = theta(h, e, budget) if effective == "xi" else phi(h, e)
        out[e] = Fraction(count, h.weight[e])
    return out


def _argmax(weights: Mapping[ArcId, Fraction]) -> ArcId:
    return min(weights, key=lambda a: (-weights[a], a))


def _bounds_pair(g: WeightedMultiDigraph) -> Tuple[int, int]:
    b = lower_bounds(g)
    return (b.mu if b.mu is not None else 0, b.upsilon)


def greedy_cut(g: WeightedMultiDigraph, effective: Effective = "xi", *, bounds: bool = True) -> FeedbackReport:
    """Delete an arc of largest effective weight until no cycle is left."""
    start = time.perf_counter()
    chosen: List[ArcId] = []
    cur = cycle_closure(g)
    while not cur.is_empty():
        k = _argmax(effective_weights(cur, effective))
        chosen.append(k)
        cur = cycle_closure(cur.remove_arcs([k]))
    sol = ArcSet.of(chosen, g.weight)
    return _greedy_report(g, sol, "greedy", effective, bounds, start)


def greedy_cut_resolve(g: WeightedMultiDigraph, effective: Effective = "xi", *, bounds: bool = True) -> FeedbackReport:
    """Greedy deletions interleaved with resolution; committed arcs join the solution."""
    from .minor import MinorTrace
    from .resolve import resolve

    start = time.perf_counter()
    rt = resolve(g)
    chosen: Set[ArcId] = set(rt.committed.arcs)
    while not rt.resolvable:
        s = rt.resolved
        k = _argmax(effective_weights(s, effective))
        chosen |= rt.final.kappa[k]
        rest = s.remove_arcs([k])
        rt = resolve(MinorTrace(rest, {a: rt.final.kappa[a] for a in rest.arc_ids}, g))
        chosen |= rt.committed.arcs
    sol = ArcSet.of(chosen, g.weight)
    return _greedy_report(g, sol, "greedy-resolve", effective, bounds, start)


def _greedy_report(g, sol, method, effective, bounds, start) -> FeedbackReport:
    pair = _bounds_pair(g) if bounds else None
    # a greedy answer meeting a lower bound is optimal
    certified = pair is not None and sol.weight == max(pair)
    stats = {"effective": effective, "wall_ms": 1000 * (time.perf_counter() - start)}
    return FeedbackReport(sol, method, certified, bounds=pair, stats=stats)


# hybrid strategy ------------------------------------------------------------


def _spanning_forbidden(g: WeightedMultiDigraph, m) -> Set[ArcId]:
    """Arcs to keep out of the solution so the meta graph becomes a forest.

    A maximum spanning tree under 1 / (w(e) + w(f)) keeps the light meta
    edges; of every dropped edge the heavier end (higher id on ties) is
    forbidden, heavy arcs being the least likely members of an optimum.
    """
    mg = nx.Graph()
    mg.add_nodes_from(m.nodes)
    for edge in m.edges:
        a, b = sorted(edge)
        mg.add_edge(a, b, weight=Fraction(1, g.weight[a] + g.weight[b]))
    tree = nx.maximum_spanning_tree(mg, weight="weight")
    forbidden: Set[ArcId] = set()
    for a, b in sorted(tuple(sorted(e)) for e in mg.edges):
        if tree.has_edge(a, b):
            continue
        forbidden.add(max((a, b), key=lambda x: (g.weight[x], x)))
    return forbidden


def _fvs_forbidden(g: WeightedMultiDigraph, m) -> Set[ArcId]:
    """Meta feedback vertex set by greedy cut on the vertex-to-arc expansion."""
    from .reductions import fvsp_to_fasp

    nodes = sorted(m.nodes)
    arcs = []
    for edge in m.edges:
        a, b = sorted(edge)
        arcs += [(a, b), (b, a)]
    if not arcs:
        return set()
    # heavy arcs are cheap to forbid: vertex weight 1/w scaled to integers
    top = max(g.weight[a] for a in nodes)
    gamma = {a: max(1, round(top / g.weight[a])) for a in nodes}
    meta = WeightedMultiDigraph(nodes, [(i, a, b) for i, (a, b) in enumerate(arcs)], None, gamma)
    tr = fvsp_to_fasp(meta, gamma)
    sol = greedy_cut(tr.transformed, "xi", bounds=False)
    return set(tr.pull_back(sol.solution.arcs))


def _contract(g: WeightedMultiDigraph, forbidden: Set[ArcId]) -> Tuple[WeightedMultiDigraph, Set[ArcId]]:
    """G / forbidden; arcs that turn into loops are returned as forced cuts."""
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in forbidden:
        u, v = g.ends(a)
        parent[find(u)] = find(v)
    kept, forced = [], set()
    for a, u, v in g.arcs():
        if a in forbidden:
            continue
        ru, rv = find(u), find(v)
        if ru == rv:
            forced.add(a)
        else:
            kept.append((a, ru, rv))
    return WeightedMultiDigraph((), kept, g.weight, check=False), forced


def hybrid_strategy(g: WeightedMultiDigraph, step: Literal["tree", "fvs"] = "tree") -> FeedbackReport:
    """Resolve, forbid a few arcs per meta graph until all are trees, solve exactly.

    The answer is optimal up to the forbidden arcs, so it is never certified;
    the stats report how many arcs were forbidden and how heavy they are
    compared to the average arc, which is the quality indicator to watch.
    """
    from .minor import MinorTrace
    from .meta import meta_graph
    from .resolve import resolve
    from .solver import cut_resolve

    start = time.perf_counter()
    rt = resolve(g)
    if rt.resolvable:
        return FeedbackReport(rt.committed, "hybrid", False, stats={"forbidden": 0, "wall_ms": 0.0})
    s = rt.resolved
    forbidden: Set[ArcId] = set()
    rest = s
    while True:
        rest = cycle_closure(rest)
        c = find_cycle(rest)
        if c is None:
            break
        m = meta_graph(rest, c)
        pick = _spanning_forbidden(rest, m) if step == "tree" else _fvs_forbidden(rest, m)
        for a in sorted(pick):
            # a forbidden set containing a whole cycle would leave it uncut
            if is_acyclic(s.restrict(forbidden | {a})):
                forbidden.add(a)
        rest = rest.remove_arcs(m.nodes)
    contracted, forced = _contract(s, forbidden)
    inner = cut_resolve(contracted, m_budget=None) if not contracted.is_empty() else None
    picked = set(forced) | (set(inner.solution.arcs) if inner else set())
    sol = rt.lift(picked)
    avg_all = Fraction(sum(g.weight.values()), max(1, g.num_arcs))
    avg_forbidden = (Fraction(sum(s.weight[a] for a in forbidden), len(forbidden)) if forbidden else None)
    stats = {
        "forbidden": len(forbidden),
        "forbidden_avg_weight": avg_forbidden,
        "avg_weight": avg_all,
        "wall_ms": 1000 * (time.perf_counter() - start),
    }
    pair = _bounds_pair(g)
    return FeedbackReport(sol, "hybrid", sol.weight == max(pair), bounds=pair, stats=stats)
