"""Edge-list instance format.

    c comment
    p fas <n> <m>          then m lines  a <tail> <head> <weight>
    p fvs <n> <m>          then n lines  v <id> <weight>  and m lines  a <tail> <head>

Vertices are 1..n. Arcs get ids 1..m in file order, so ids in solutions
refer to arc lines of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .graph import ArcId, WeightedMultiDigraph
from .heuristics import BoundReport
from .report import FeedbackReport


class ParseError(ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Instance:
    kind: str  # "fas" or "fvs"
    graph: WeightedMultiDigraph
    # loop arcs removed under strip_loops; every feedback arc set contains them
    loops: Dict[ArcId, int] = field(default_factory=dict)

    @property
    def loop_weight(self) -> int:
        return sum(self.loops.values())


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None


def parse_instance(text: str, *, strip_loops: bool = False) -> Instance:
    header: Optional[Tuple[str, int, int]] = None
    arcs: List[Tuple[ArcId, int, int]] = []
    weight: Dict[ArcId, int] = {}
    vweight: Dict[int, int] = {}
    loops: Dict[ArcId, int] = {}
    count = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0] in ("c", "k"):
            # k lines are kappa sidecars written next to a minor
            continue
        if tok[0] == "p":
            if header is not None:
                raise ParseError(lineno, "second header line")
            if len(tok) != 4 or tok[1] not in ("fas", "fvs"):
                raise ParseError(lineno, "expected 'p fas|fvs <n> <m>'")
            n, m = _int(tok[2], lineno, "vertex count"), _int(tok[3], lineno, "arc count")
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative size in header")
            header = (tok[1], n, m)
            continue
        if header is None:
            raise ParseError(lineno, "data before the 'p' header")
        kind, n, m = header
        if tok[0] == "a":
            want = 4 if kind == "fas" else 3
            if len(tok) != want:
                raise ParseError(lineno, f"arc line needs {want - 1} fields")
            u, v = _int(tok[1], lineno, "tail"), _int(tok[2], lineno, "head")
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(lineno, f"vertex {x} outside 1..{n}")
            w = _int(tok[3], lineno, "weight") if kind == "fas" else 1
            if w < 1:
                raise ParseError(lineno, f"weight {w} must be positive")
            count += 1
            if u == v:
                if not strip_loops or kind == "fvs":
                    raise ParseError(lineno, f"arc {count} is a loop at vertex {u} (use --strip-loops)")
                loops[count] = w
                continue
            arcs.append((count, u, v))
            weight[count] = w
        elif tok[0] == "v":
            if kind != "fvs":
                raise ParseError(lineno, "vertex weights need a 'p fvs' header")
            if len(tok) != 3:
                raise ParseError(lineno, "vertex line needs 2 fields")
            x, w = _int(tok[1], lineno, "vertex"), _int(tok[2], lineno, "weight")
            if not 1 <= x <= n:
                raise ParseError(lineno, f"vertex {x} outside 1..{n}")
            if w < 1:
                raise ParseError(lineno, f"weight {w} must be positive")
            vweight[x] = w
        else:
            raise ParseError(lineno, f"unknown line type {tok[0]!r}")
    if header is None:
        raise ParseError(0, "missing 'p' header")
    kind, n, m = header
    if count != m:
        raise ParseError(0, f"header announces {m} arcs, found {count}")
    verts = range(1, n + 1)
    if kind == "fvs":
        gamma = {v: vweight.get(v, 1) for v in verts}
        return Instance(kind, WeightedMultiDigraph(verts, arcs, weight, gamma), loops)
    return Instance(kind, WeightedMultiDigraph(verts, arcs, weight), loops)


def read_instance(path: str, *, strip_loops: bool = False) -> Instance:
    with open(path) as fh:
        return parse_instance(fh.read(), strip_loops=strip_loops)


def _numbering(g: WeightedMultiDigraph) -> Dict[object, int]:
    if set(g.vertices) == set(range(1, g.num_vertices + 1)):
        return {v: v for v in g.vertices}
    return {v: i for i, v in enumerate(g.vertices, 1)}


def format_instance(g: WeightedMultiDigraph, kind: str = "fas", comments: Iterable[str] = ()) -> str:
    """Write ``g``; vertices are renumbered 1..n and arcs written in id order."""
    num = _numbering(g)
    lines = [f"c {c}" for c in comments]
    lines.append(f"p {kind} {g.num_vertices} {g.num_arcs}")
    if kind == "fvs":
        gamma = g.vertex_weight or {v: 1 for v in g.vertices}
        lines += [f"v {num[v]} {gamma[v]}" for v in g.vertices]
    for a in sorted(g.arc_ids):
        u, v = g.ends(a)
        lines.append(f"a {num[u]} {num[v]}" + (f" {g.weight[a]}" if kind == "fas" else ""))
    return "\n".join(lines) + "\n"


def written_ids(g: WeightedMultiDigraph) -> Dict[ArcId, int]:
    """Arc id -> the id it gets when ``g`` is written with format_instance."""
    return {a: i for i, a in enumerate(sorted(g.arc_ids), 1)}


def format_kappa(g: WeightedMultiDigraph, kappa: Mapping[ArcId, Iterable[ArcId]]) -> str:
    ids = written_ids(g)
    return "".join(f"k {ids[a]} {' '.join(map(str, sorted(kappa[a])))}\n" for a in sorted(g.arc_ids))


def format_solution(report: FeedbackReport, extra: Mapping[ArcId, int] = None, *, tag: str = "e") -> str:
    arcs = set(report.solution.arcs) | set(extra or ())
    weight = report.weight + sum((extra or {}).values())
    lines = [f"s {weight} {int(report.certified_optimal)}"]
    lines += [f"{tag} {a}" for a in sorted(arcs)]
    return "\n".join(lines) + "\n"


def format_bounds(b: BoundReport) -> str:
    mu = "?" if b.mu is None else b.mu
    return f"b mu {mu} upsilon {b.upsilon} upper {b.upper}\n"
