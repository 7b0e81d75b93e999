"""Loop-free weighted multi-digraphs with stable arc identities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

Vertex = Hashable
ArcId = int


class GraphError(ValueError):
    """Raised for malformed graphs (loops, bad weights, unknown arcs)."""


@dataclass(frozen=True)
class ArcSet:
    """A set of arc ids together with its total weight."""

    arcs: FrozenSet[ArcId]
    weight: int

    @classmethod
    def of(cls, arcs: Iterable[ArcId], weight: Mapping[ArcId, int]) -> "ArcSet":
        arcs = frozenset(arcs)
        return cls(arcs, sum(weight[a] for a in arcs))

    def __len__(self) -> int:
        return len(self.arcs)

    def __iter__(self):
        return iter(sorted(self.arcs))

    def __contains__(self, arc: object) -> bool:
        return arc in self.arcs


class WeightedMultiDigraph:
    """Immutable loop-free multi-digraph.

    Arcs are addressed by integer ids that survive every subgraph operation,
    so solutions computed on reduced graphs always name arcs of the input.
    Parallel and anti-parallel arcs are allowed. Weights must be positive
    integers; ``vertex_weight`` is only populated for vertex-weighted
    instances (line graphs and ``p fvs`` inputs).
    """

    __slots__ = ("_vertices", "_arcs", "_weight", "_vertex_weight", "_out", "_in", "_hash")

    def __init__(
        self,
        vertices: Iterable[Vertex],
        arcs: Iterable[Tuple[ArcId, Vertex, Vertex]],
        weight: Optional[Mapping[ArcId, int]] = None,
        vertex_weight: Optional[Mapping[Vertex, int]] = None,
        *,
        check: bool = True,
    ) -> None:
        verts: Dict[Vertex, None] = dict.fromkeys(vertices)
        arc_map: Dict[ArcId, Tuple[Vertex, Vertex]] = {}
        for a, u, v in arcs:
            if check:
                if a in arc_map:
                    raise GraphError(f"duplicate arc id {a}")
                if u == v:
                    raise GraphError(f"arc {a} is a loop at {u!r}")
            arc_map[a] = (u, v)
            verts.setdefault(u)
            verts.setdefault(v)
        if weight is None:
            w = dict.fromkeys(arc_map, 1)
        else:
            w = {a: weight[a] for a in arc_map}
            if check:
                for a, x in w.items():
                    if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                        raise GraphError(f"arc {a} has non-positive or non-integer weight {x!r}")
        self._vertices: Tuple[Vertex, ...] = tuple(verts)
        self._arcs = arc_map
        self._weight = w
        self._vertex_weight = None if vertex_weight is None else {v: vertex_weight[v] for v in self._vertices}
        out: Dict[Vertex, List[ArcId]] = {v: [] for v in self._vertices}
        inc: Dict[Vertex, List[ArcId]] = {v: [] for v in self._vertices}
        for a, (u, v) in arc_map.items():
            out[u].append(a)
            inc[v].append(a)
        self._out = {v: tuple(x) for v, x in out.items()}
        self._in = {v: tuple(x) for v, x in inc.items()}
        self._hash: Optional[int] = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_edges(
        cls, edges: Sequence[Tuple[Vertex, Vertex, int]] | Sequence[Tuple[Vertex, Vertex]], start: int = 0
    ) -> "WeightedMultiDigraph":
        """Build a graph from ``(tail, head[, weight])`` tuples; ids are positions + ``start``."""
        arcs = []
        weight = {}
        for i, edge in enumerate(edges):
            a = i + start
            arcs.append((a, edge[0], edge[1]))
            weight[a] = edge[2] if len(edge) > 2 else 1
        return cls((), arcs, weight)

    # basic accessors ------------------------------------------------------

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def arc_ids(self) -> Tuple[ArcId, ...]:
        return tuple(self._arcs)

    @property
    def weight(self) -> Mapping[ArcId, int]:
        return self._weight

    @property
    def vertex_weight(self) -> Optional[Mapping[Vertex, int]]:
        return self._vertex_weight

    def arcs(self) -> List[Tuple[ArcId, Vertex, Vertex]]:
        return [(a, u, v) for a, (u, v) in self._arcs.items()]

    def ends(self, a: ArcId) -> Tuple[Vertex, Vertex]:
        try:
            return self._arcs[a]
        except KeyError:
            raise GraphError(f"unknown arc {a}") from None

    def tail(self, a: ArcId) -> Vertex:
        return self.ends(a)[0]

    def head(self, a: ArcId) -> Vertex:
        return self.ends(a)[1]

    def out_arcs(self, v: Vertex) -> Tuple[ArcId, ...]:
        return self._out.get(v, ())

    def in_arcs(self, v: Vertex) -> Tuple[ArcId, ...]:
        return self._in.get(v, ())

    def has_arc(self, a: ArcId) -> bool:
        return a in self._arcs

    def __contains__(self, a: object) -> bool:
        return a in self._arcs

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_arcs(self) -> int:
        return len(self._arcs)

    def __len__(self) -> int:
        return len(self._arcs)

    def is_empty(self) -> bool:
        return not self._arcs

    def total_weight(self, arcs: Iterable[ArcId]) -> int:
        return sum(self._weight[a] for a in arcs)

    def max_degree(self) -> int:
        return max((len(self._out[v]) + len(self._in[v]) for v in self._vertices), default=0)

    def parallel(self, a: ArcId) -> Tuple[ArcId, ...]:
        """F^+(a): arcs with the same tail and head as ``a`` (including ``a``)."""
        u, v = self.ends(a)
        return tuple(b for b in self._out[u] if self._arcs[b][1] == v)

    def antiparallel(self, a: ArcId) -> Tuple[ArcId, ...]:
        u, v = self.ends(a)
        return tuple(b for b in self._out[v] if self._arcs[b][1] == u)

    # derived graphs -------------------------------------------------------

    def restrict(self, arcs: Iterable[ArcId], weight: Optional[Mapping[ArcId, int]] = None) -> "WeightedMultiDigraph":
        """The subgraph induced by ``arcs``; only endpoints of kept arcs remain."""
        keep = set(arcs)
        kept = [(a, u, v) for a, (u, v) in self._arcs.items() if a in keep]
        w = self._weight if weight is None else weight
        vw = self._vertex_weight
        verts = [v for v in self._vertices if self._touches(v, keep)]
        return WeightedMultiDigraph(verts, kept, w, None if vw is None else vw, check=False)

    def _touches(self, v: Vertex, keep: Set[ArcId]) -> bool:
        return any(a in keep for a in self._out[v]) or any(a in keep for a in self._in[v])

    def remove_arcs(self, arcs: Iterable[ArcId]) -> "WeightedMultiDigraph":
        drop = set(arcs)
        return self.restrict(a for a in self._arcs if a not in drop)

    def remove_vertices(self, vertices: Iterable[Vertex]) -> "WeightedMultiDigraph":
        drop = set(vertices)
        verts = [v for v in self._vertices if v not in drop]
        kept = [(a, u, v) for a, (u, v) in self._arcs.items() if u not in drop and v not in drop]
        return WeightedMultiDigraph(verts, kept, self._weight, self._vertex_weight, check=False)

    def with_weights(self, weight: Mapping[ArcId, int]) -> "WeightedMultiDigraph":
        return WeightedMultiDigraph(self._vertices, self.arcs(), weight, self._vertex_weight)

    # comparisons ----------------------------------------------------------

    def signature(self) -> Tuple:
        return tuple(sorted((a, u, v, self._weight[a]) for a, (u, v) in self._arcs.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedMultiDigraph):
            return NotImplemented
        return self._arcs == other._arcs and self._weight == other._weight

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset((a, u, v, self._weight[a]) for a, (u, v) in self._arcs.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{a}:{u}->{v}({self._weight[a]})" for a, (u, v) in self._arcs.items())
        return f"WeightedMultiDigraph([{body}])"


# --------------------------------------------------------------------------
# algorithms


def strongly_connected_components(g: WeightedMultiDigraph) -> List[List[Vertex]]:
    """Tarjan's algorithm, iterative. Components come out in reverse topological order."""
    index: Dict[Vertex, int] = {}
    low: Dict[Vertex, int] = {}
    on_stack: Set[Vertex] = set()
    stack: List[Vertex] = []
    result: List[List[Vertex]] = []
    counter = 0
    for root in g.vertices:
        if root in index:
            continue
        work = [(root, iter(g.out_arcs(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for a in it:
                w = g.head(a)
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(g.out_arcs(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(comp)
    return result


def is_acyclic(g: WeightedMultiDigraph) -> bool:
    """Kahn's topological-order test."""
    indeg = {v: len(g.in_arcs(v)) for v in g.vertices}
    ready = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        v = ready.pop()
        seen += 1
        for a in g.out_arcs(v):
            w = g.head(a)
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return seen == g.num_vertices


def cyclic_arcs(g: WeightedMultiDigraph) -> List[ArcId]:
    """Arcs lying on at least one directed cycle (tail and head share an SCC)."""
    comp: Dict[Vertex, int] = {}
    for i, c in enumerate(strongly_connected_components(g)):
        for v in c:
            comp[v] = i
    return [a for a, u, v in g.arcs() if comp[u] == comp[v]]


def cycle_closure(g: WeightedMultiDigraph) -> WeightedMultiDigraph:
    """G_o: the smallest subgraph carrying every cycle of ``g``.

    An arc (u, v) survives iff v reaches u. The filter is repeated until
    nothing changes, although one pass already reaches the fixpoint.
    """
    current = g
    while True:
        keep = cyclic_arcs(current)
        if len(keep) == current.num_arcs:
            return current
        current = current.restrict(keep)


def weak_components(g: WeightedMultiDigraph) -> List[List[Vertex]]:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, u, v in g.arcs():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: Dict[Vertex, List[Vertex]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def cycle_space_dim(g: WeightedMultiDigraph) -> int:
    """Rank of the cycle space: |E| - |V| + number of weak components."""
    return g.num_arcs - g.num_vertices + len(weak_components(g))


def line_graph(g: WeightedMultiDigraph) -> WeightedMultiDigraph:
    """L(G): one vertex per arc, an arc e->f whenever head(e) == tail(f).

    Line-graph arcs get fresh ids 0..k-1 and unit weight; the arc weights of
    ``g`` travel along as vertex weights.
    """
    arcs = []
    k = 0
    for e, _, v in g.arcs():
        for f in g.out_arcs(v):
            arcs.append((k, e, f))
            k += 1
    return WeightedMultiDigraph(g.arc_ids, arcs, None, dict(g.weight), check=False)


def reachable(g: WeightedMultiDigraph, source: Vertex, banned_arcs: Set[ArcId] = frozenset(),
              banned_vertices: Set[Vertex] = frozenset()) -> Set[Vertex]:
    """Vertices reachable from ``source`` (inclusive) avoiding the banned arcs/vertices."""
    if source in banned_vertices:
        return set()
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for a in g.out_arcs(v):
            if a in banned_arcs:
                continue
            w = g.head(a)
            if w not in seen and w not in banned_vertices:
                seen.add(w)
                stack.append(w)
    return seen


def coreachable(g: WeightedMultiDigraph, target: Vertex, banned_arcs: Set[ArcId] = frozenset(),
                banned_vertices: Set[Vertex] = frozenset()) -> Set[Vertex]:
    """Vertices that reach ``target`` (inclusive) avoiding the banned arcs/vertices."""
    if target in banned_vertices:
        return set()
    seen = {target}
    stack = [target]
    while stack:
        v = stack.pop()
        for a in g.in_arcs(v):
            if a in banned_arcs:
                continue
            w = g.tail(a)
            if w not in seen and w not in banned_vertices:
                seen.add(w)
                stack.append(w)
    return seen


def find_cycle(g: WeightedMultiDigraph) -> Optional[List[ArcId]]:
    """Some elementary cycle as an arc list in traversal order, or None.

    Deterministic: starts from the lowest arc id lying on a cycle and follows
    a BFS-shortest path from its head back to its tail.
    """
    on_cycle = cyclic_arcs(g)
    if not on_cycle:
        return None
    first = min(on_cycle)
    u, v = g.ends(first)
    path = shortest_path(g, v, u)
    assert path is not None
    return [first] + path


def shortest_path(g: WeightedMultiDigraph, source: Vertex, target: Vertex,
                  banned_arcs: Set[ArcId] = frozenset()) -> Optional[List[ArcId]]:
    """BFS path (as arcs) with the lowest-id arc preferred at each vertex."""
    if source == target:
        return []
    pred: Dict[Vertex, ArcId] = {}
    seen = {source}
    frontier = [source]
    while frontier:
        nxt = []
        for x in frontier:
            for a in sorted(g.out_arcs(x)):
                if a in banned_arcs:
                    continue
                y = g.head(a)
                if y in seen:
                    continue
                seen.add(y)
                pred[y] = a
                if y == target:
                    path = []
                    while y != source:
                        a = pred[y]
                        path.append(a)
                        y = g.tail(a)
                    return path[::-1]
                nxt.append(y)
        frontier = nxt
    return None
