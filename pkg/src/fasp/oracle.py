"""Brute-force ground truth for validating the polynomial and exact solvers.

Nothing here uses the cycle-subgraph, minor, cut or meta machinery; the
helpers below do their own depth-first searches so the oracle stays an
independent route.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Set

from .graph import ArcId, Vertex, WeightedMultiDigraph

MAX_FASP_ARCS = 20
MAX_FVSP_VERTICES = 16
DEFAULT_CYCLE_BUDGET = 200_000


class OracleRefusal(RuntimeError):
    """The instance exceeds the oracle's size or enumeration guard."""


@dataclass
class OracleResult:
    optimum: int
    all_optimal_sets: List[FrozenSet] = field(default_factory=list)
    enumerated_cycles: List[List[ArcId]] = field(default_factory=list)


def _find_cycle(g: WeightedMultiDigraph, removed: Set[ArcId]) -> Optional[List[ArcId]]:
    """Any directed cycle avoiding ``removed``, by colouring DFS."""
    done: Set[Vertex] = set()
    for root in g.vertices:
        if root in done:
            continue
        pos = {root: 0}
        path: List[ArcId] = []
        stack = [(root, iter(g.out_arcs(root)))]
        while stack:
            v, it = stack[-1]
            for a in it:
                if a in removed:
                    continue
                w = g.head(a)
                if w in pos:
                    return path[pos[w]:] + [a]
                if w not in done:
                    pos[w] = len(stack)
                    path.append(a)
                    stack.append((w, iter(g.out_arcs(w))))
                    break
            else:
                stack.pop()
                del pos[v]
                done.add(v)
                if path:
                    path.pop()
    return None


def brute_force_fasp(
    g: WeightedMultiDigraph,
    weight: Optional[Mapping[ArcId, int]] = None,
    *,
    all_optima: bool = False,
    max_arcs: int = MAX_FASP_ARCS,
) -> OracleResult:
    """Minimum-weight feedback arc set by branching on the arcs of a cycle.

    Branch i deletes the i-th arc of the current cycle and protects the ones
    before it, so every minimal feedback set is visited exactly once. Branches
    whose partial weight already exceeds the incumbent are cut off.
    """
    if g.num_arcs > max_arcs:
        raise OracleRefusal(f"{g.num_arcs} arcs exceeds the oracle guard of {max_arcs}")
    w = dict(g.weight if weight is None else weight)
    if any(x < 0 for x in w.values()):
        raise ValueError("oracle weights must be non-negative")
    best = [sum(w.values()) + 1]
    found: List[FrozenSet[ArcId]] = []

    def rec(removed: Set[ArcId], protected: Set[ArcId], cost: int) -> None:
        if cost > best[0] or (cost == best[0] and not all_optima):
            return
        cycle = _find_cycle(g, removed)
        if cycle is None:
            if cost < best[0]:
                best[0] = cost
                found.clear()
            found.append(frozenset(removed))
            return
        free = [a for a in cycle if a not in protected]
        for i, a in enumerate(free):
            removed.add(a)
            rec(removed, protected | set(free[:i]), cost + w[a])
            removed.discard(a)

    rec(set(), set(), 0)
    optima = sorted(set(found), key=lambda s: sorted(s))
    return OracleResult(best[0], optima)


def fas_optimum(g: WeightedMultiDigraph, weight: Optional[Mapping[ArcId, int]] = None) -> int:
    return brute_force_fasp(g, weight).optimum


def ordering_optimum(g: WeightedMultiDigraph, weight: Optional[Mapping[ArcId, int]] = None) -> int:
    """Optimum via the linear-ordering formulation: DP over vertex subsets.

    An acyclic subgraph is exactly the set of forward arcs of some vertex
    order, so the feedback length is the cheapest total of backward arcs.
    """
    w = g.weight if weight is None else weight
    verts = list(g.vertices)
    n = len(verts)
    if n > 20:
        raise OracleRefusal(f"{n} vertices exceeds the ordering guard of 20")
    pos = {v: i for i, v in enumerate(verts)}
    # back[v][j]: weight of arcs v -> verts[j]
    back = [[0] * n for _ in range(n)]
    for a, u, v in g.arcs():
        back[pos[u]][pos[v]] += w[a]
    inf = float("inf")
    best = [inf] * (1 << n)
    best[0] = 0
    for mask in range(1 << n):
        cur = best[mask]
        if cur == inf:
            continue
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                continue
            row = back[i]
            extra = sum(row[j] for j in range(n) if mask >> j & 1)
            if cur + extra < best[mask | bit]:
                best[mask | bit] = cur + extra
    return int(best[(1 << n) - 1])


def enumerate_elementary_cycles(g: WeightedMultiDigraph, budget: int = DEFAULT_CYCLE_BUDGET) -> OracleResult:
    """All elementary cycles as arc lists (Johnson's blocking algorithm).

    Parallel arcs yield distinct cycles. Each cycle starts with an arc leaving
    its earliest vertex (in the graph's vertex order).
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    cycles: List[List[ArcId]] = []

    for s in g.vertices:
        allowed = _scc_of(g, s, {v for v in g.vertices if order[v] >= order[s]})
        if len(allowed) < 2:
            continue
        blocked: Set[Vertex] = set()
        bmap: Dict[Vertex, Set[Vertex]] = {v: set() for v in allowed}
        path: List[ArcId] = []

        def unblock(u: Vertex) -> None:
            stack = [u]
            while stack:
                x = stack.pop()
                if x in blocked:
                    blocked.discard(x)
                    stack.extend(bmap[x])
                    bmap[x].clear()

        def circuit(v: Vertex) -> bool:
            found = False
            blocked.add(v)
            for a in g.out_arcs(v):
                w = g.head(a)
                if w not in allowed:
                    continue
                if w == s:
                    cycles.append(path + [a])
                    if len(cycles) > budget:
                        raise OracleRefusal(f"more than {budget} elementary cycles")
                    found = True
                elif w not in blocked:
                    path.append(a)
                    if circuit(w):
                        found = True
                    path.pop()
            if found:
                unblock(v)
            else:
                for a in g.out_arcs(v):
                    w = g.head(a)
                    if w in allowed:
                        bmap[w].add(v)
            return found

        circuit(s)
    return OracleResult(len(cycles), enumerated_cycles=cycles)


def _scc_of(g: WeightedMultiDigraph, s: Vertex, allowed: Set[Vertex]) -> Set[Vertex]:
    fwd = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for a in g.out_arcs(v):
            w = g.head(a)
            if w in allowed and w not in fwd:
                fwd.add(w)
                stack.append(w)
    bwd = {s}
    stack = [s]
    while stack:
        v = stack.pop()
        for a in g.in_arcs(v):
            w = g.tail(a)
            if w in allowed and w not in bwd:
                bwd.add(w)
                stack.append(w)
    return fwd & bwd


def cycles_through(g: WeightedMultiDigraph, arc: ArcId, budget: int = DEFAULT_CYCLE_BUDGET) -> List[List[ArcId]]:
    return [c for c in enumerate_elementary_cycles(g, budget).enumerated_cycles if arc in c]


def brute_force_fvsp(
    g: WeightedMultiDigraph,
    gamma: Optional[Mapping[Vertex, int]] = None,
    *,
    all_optima: bool = False,
    max_vertices: int = MAX_FVSP_VERTICES,
) -> OracleResult:
    """Minimum-weight feedback vertex set by exhaustive subset search."""
    verts = list(g.vertices)
    if len(verts) > max_vertices:
        raise OracleRefusal(f"{len(verts)} vertices exceeds the oracle guard of {max_vertices}")
    if gamma is None:
        gamma = g.vertex_weight or {v: 1 for v in verts}
    best: Optional[int] = None
    found: List[FrozenSet[Vertex]] = []
    for r in range(len(verts) + 1):
        for combo in itertools.combinations(verts, r):
            cost = sum(gamma[v] for v in combo)
            if best is not None and cost > best:
                continue
            rest = g.remove_vertices(combo)
            if _find_cycle(rest, set()) is not None:
                continue
            if best is None or cost < best:
                best = cost
                found = []
            found.append(frozenset(combo))
    assert best is not None
    if not all_optima:
        found = found[:1]
    return OracleResult(best, found)
