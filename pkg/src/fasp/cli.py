"""Command-line front end.

Exit codes: 0 success, 1 unreadable or malformed input, 2 refused by a
size guard (oracle limits, meta-cycle budget).
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
import time
from dataclasses import asdict, dataclass
from typing import List, Optional, Sequence

from . import io
from .graph import WeightedMultiDigraph
from .oracle import OracleRefusal

log = logging.getLogger("fasp")

EXIT_PARSE = 1
EXIT_GUARD = 2


class Guard(Exception):
    pass


def _load(path: str, strip_loops: bool = False) -> io.Instance:
    inst = io.read_instance(path, strip_loops=strip_loops)
    if inst.loops:
        log.warning("stripped %d loop arc(s); they belong to every solution: %s",
                    len(inst.loops), " ".join(map(str, sorted(inst.loops))))
    return inst


def _solve_fas(g: WeightedMultiDigraph, method: str, m_budget: Optional[int]):
    from .exact import solve_exact
    from .heuristics import greedy_cut, greedy_cut_resolve, hybrid_strategy
    from .report import FeedbackReport
    from .solver import BudgetExceeded, solve

    try:
        if method in ("auto", "cut", "cut-resolve"):
            return solve(g, method, m_budget=m_budget)
    except BudgetExceeded as ex:
        raise Guard(str(ex)) from None
    if method == "exact":
        return FeedbackReport(solve_exact(g), "exact", True)
    if method == "greedy":
        return greedy_cut(g)
    if method == "greedy-resolve":
        return greedy_cut_resolve(g)
    if method == "hybrid":
        return hybrid_strategy(g)
    raise ValueError(f"unknown method {method!r}")


def cmd_solve(args) -> str:
    from .reductions import fvsp_to_fasp

    inst = _load(args.file, args.strip_loops)
    if inst.kind == "fvs":
        tr = fvsp_to_fasp(inst.graph)
        rep = _solve_fas(tr.transformed, args.method, args.m_budget)
        verts = sorted(tr.pull_back(rep.solution.arcs))
        weight = tr.pulled_weight(rep.solution.arcs)
        return f"s {weight} {int(rep.certified_optimal)}\n" + "".join(f"v {v}\n" for v in verts)
    rep = _solve_fas(inst.graph, args.method, args.m_budget)
    return io.format_solution(rep, inst.loops)


def cmd_resolve(args) -> str:
    from .resolve import resolve

    inst = _load(args.file, args.strip_loops)
    rt = resolve(inst.graph)
    out = [f"r {'yes' if rt.resolvable else 'no'}\n"]
    out += [f"e {a}\n" for a in sorted(set(rt.committed.arcs) | set(inst.loops))]
    if not rt.resolvable:
        s = rt.resolved
        out.append(io.format_instance(s, comments=["resolved graph; k lines map its arcs to input arcs"]))
        out.append(io.format_kappa(s, rt.final.kappa))
    return "".join(out)


def cmd_greedy(args) -> str:
    from .heuristics import greedy_cut, greedy_cut_resolve, lower_bounds

    inst = _load(args.file, args.strip_loops)
    fn = greedy_cut_resolve if args.resolve else greedy_cut
    rep = fn(inst.graph, args.effective)
    return io.format_solution(rep, inst.loops) + io.format_bounds(lower_bounds(inst.graph))


def cmd_bounds(args) -> str:
    from .heuristics import lower_bounds

    inst = _load(args.file, args.strip_loops)
    return io.format_bounds(lower_bounds(inst.graph, args.budget))


def _dot_digraph(g: WeightedMultiDigraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for a in sorted(g.arc_ids):
        u, v = g.ends(a)
        lines.append(f'  "{u}" -> "{v}" [label="{a}:{g.weight[a]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_meta(m) -> str:
    lines = ["graph M {"]
    for a in sorted(m.nodes):
        style = ' [shape=box]' if a in m.seed_cycle else ""
        lines.append(f'  "{a}"{style};')
    for edge in sorted(tuple(sorted(e)) for e in m.edges):
        lines.append(f'  "{edge[0]}" -- "{edge[1]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> str:
    from .cycles import elementary_subgraph, simple_subgraph
    from .meta import meta_cycle_dim, meta_graph

    g = _load(args.file, args.strip_loops).graph
    if args.meta:
        if not args.seed:
            raise ValueError("--meta needs --seed with the arcs of a cycle")
        seed = [int(x) for x in args.seed.split(",")]
        for a in seed:
            if a not in g:
                raise ValueError(f"unknown arc {a}")
        m = meta_graph(g, seed)
        out = _dot_meta(m)
        out += "".join(f"m {f} {meta_cycle_dim(m, f)}\n" for f in sorted(set(seed)))
        return out
    if args.anchor is None:
        raise ValueError("analyze needs --anchor or --meta")
    if args.anchor not in g:
        raise ValueError(f"unknown arc {args.anchor}")
    fn = elementary_subgraph if args.kind == "el" else simple_subgraph
    sub = g.restrict(fn(g, args.anchor).arcs)
    return (io.format_instance(sub, comments=[f"G_{args.kind} of arc {args.anchor}"])
            + io.format_kappa(sub, {a: {a} for a in sub.arc_ids})
            + _dot_digraph(sub))


def cmd_reduce(args) -> str:
    from .minor import essential_minor
    from .reductions import fasp_to_fvsp, fvsp_to_fasp

    inst = _load(args.file, args.strip_loops)
    g = inst.graph
    if args.minor:
        t = essential_minor(g)
        text = io.format_instance(t.minor, comments=["essential minor"]) + io.format_kappa(t.minor, t.kappa)
        if t.forced:
            text += "c forced " + " ".join(map(str, sorted(t.forced))) + "\n"
        return text
    if args.to == "fvs":
        if inst.kind != "fas":
            raise ValueError("--to fvs expects a 'p fas' instance")
        return io.format_instance(fasp_to_fvsp(g).transformed, "fvs", comments=["vertex i is input arc i"])
    if args.to == "fas":
        if inst.kind != "fvs":
            raise ValueError("--to fas expects a 'p fvs' instance")
        tr = fvsp_to_fasp(g, literal=args.literal)
        star = tr.transformed
        ids = io.written_ids(star)
        notes = [f"gadget {v} arc {ids[a]}" for a, v in sorted(tr.pullback.items()) if star.tail(a)[0] == "in"]
        return io.format_instance(star, "fas", comments=notes)
    raise ValueError("reduce needs --to fas|fvs or --minor")


def cmd_oracle(args) -> str:
    from .oracle import brute_force_fasp, brute_force_fvsp

    inst = _load(args.file, args.strip_loops)
    if inst.kind == "fvs":
        r = brute_force_fvsp(inst.graph, all_optima=args.all)
        tag = "v"
        extra = 0
    else:
        r = brute_force_fasp(inst.graph, all_optima=args.all)
        tag = "e"
        extra = inst.loop_weight
    loops = sorted(inst.loops)
    first = sorted(r.all_optimal_sets[0]) + loops
    out = [f"s {r.optimum + extra} 1\n"] + [f"{tag} {x}\n" for x in sorted(first)]
    if args.all:
        out += ["o " + " ".join(map(str, sorted(list(s) + loops))) + "\n" for s in r.all_optimal_sets]
    return "".join(out)


@dataclass
class BenchRecord:
    instance: str
    vertices: int
    arcs: int
    method: str
    weight: Optional[int]
    certified: bool
    mu: Optional[int]
    upsilon: Optional[int]
    m: Optional[int]
    oracle: Optional[int]
    status: str
    wall_ms: float


def bench_instance(path: str, method: str, check_oracle: bool = True) -> BenchRecord:
    from .heuristics import lower_bounds
    from .meta import global_m
    from .oracle import MAX_FASP_ARCS, brute_force_fasp

    name = os.path.basename(path)
    try:
        inst = io.read_instance(path)
    except (OSError, io.ParseError) as ex:
        return BenchRecord(name, 0, 0, method, None, False, None, None, None, None, f"parse error: {ex}", 0.0)
    g = inst.graph
    rec = BenchRecord(name, g.num_vertices, g.num_arcs, method, None, False, None, None, None, None, "ok", 0.0)
    if inst.kind != "fas":
        rec.status = "skipped: fvs instance"
        return rec
    start = time.perf_counter()
    try:
        if method == "oracle":
            r = brute_force_fasp(g)
            rec.weight, rec.certified = r.optimum, True
        else:
            rep = _solve_fas(g, method, None if method != "auto" else 20)
            rec.weight, rec.certified = rep.weight, rep.certified_optimal
    except (OracleRefusal, Guard) as ex:
        rec.status = f"refused: {ex}"
    except Exception as ex:  # recorded, the run continues
        rec.status = f"error: {type(ex).__name__}: {ex}"
    rec.wall_ms = round(1000 * (time.perf_counter() - start), 3)
    if rec.weight is None:
        return rec
    b = lower_bounds(g)
    rec.mu, rec.upsilon = b.mu, b.upsilon
    rec.m = global_m(g)
    if check_oracle and g.num_arcs <= MAX_FASP_ARCS:
        rec.oracle = brute_force_fasp(g).optimum
        if rec.certified and rec.oracle != rec.weight:
            rec.certified = False
            rec.status = "oracle mismatch"
    return rec


def bench(directory: str, methods: Sequence[str], check_oracle: bool = True) -> List[BenchRecord]:
    files = sorted(f for f in os.listdir(directory) if os.path.isfile(os.path.join(directory, f)))
    return [bench_instance(os.path.join(directory, f), m, check_oracle) for f in files for m in methods]


def format_bench(records: Sequence[BenchRecord], timing: bool = True) -> str:
    import io as _io

    fields = list(BenchRecord.__dataclass_fields__)
    if not timing:
        fields.remove("wall_ms")
    buf = _io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow({k: ("" if v is None else v) for k, v in asdict(r).items()})
    return buf.getvalue()


def cmd_bench(args) -> str:
    if not os.path.isdir(args.dir):
        raise FileNotFoundError(f"{args.dir} is not a directory")
    methods = args.method or ["auto"]
    return format_bench(bench(args.dir, methods, not args.no_oracle), timing=not args.no_timing)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fasp", description="Exact and heuristic feedback arc / vertex set solvers.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, file=True):
        sp = sub.add_parser(name, help=help_)
        if file:
            sp.add_argument("file")
            sp.add_argument("--strip-loops", action="store_true", help="drop loop arcs (they join every solution)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("solve", cmd_solve, "solve a fas or fvs instance")
    sp.add_argument("--method", default="auto",
                    choices=["auto", "cut", "cut-resolve", "exact", "greedy", "greedy-resolve", "hybrid"])
    sp.add_argument("--m-budget", type=int, default=20, help="meta-cycle budget for the exact methods")
    add("resolve", cmd_resolve, "resolve isolated cycles and print the resolved graph")
    sp = add("greedy", cmd_greedy, "greedy cut with lower bounds")
    sp.add_argument("--effective", choices=["xi", "eta"], default="xi")
    sp.add_argument("--resolve", action="store_true")
    sp = add("bounds", cmd_bounds, "lower bounds mu, upsilon and the trivial upper bound")
    sp.add_argument("--budget", type=int, default=1_000_000, help="partial path budget for cycle counting")
    sp = add("analyze", cmd_analyze, "cycle subgraphs and meta graphs")
    sp.add_argument("--anchor", type=int)
    sp.add_argument("--kind", choices=["el", "si"], default="el")
    sp.add_argument("--meta", action="store_true")
    sp.add_argument("--seed", help="comma separated arc ids of a cycle")
    sp = add("reduce", cmd_reduce, "translate between fas and fvs, or write the essential minor")
    sp.add_argument("--to", choices=["fas", "fvs"])
    sp.add_argument("--minor", action="store_true")
    sp.add_argument("--literal", action="store_true", help="rim arcs carry gadget weights")
    sp = add("oracle", cmd_oracle, "brute-force optimum")
    sp.add_argument("--all", action="store_true")
    sp = add("bench", cmd_bench, "benchmark a directory of instances as CSV", file=False)
    sp.add_argument("dir")
    sp.add_argument("--method", action="append",
                    choices=["auto", "cut", "cut-resolve", "exact", "greedy", "greedy-resolve", "hybrid", "oracle"])
    sp.add_argument("--no-oracle", action="store_true")
    sp.add_argument("--no-timing", action="store_true")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        sys.stdout.write(args.func(args))
    except (io.ParseError, OSError, ValueError) as ex:
        print(f"fasp: {ex}", file=sys.stderr)
        return EXIT_PARSE
    except (OracleRefusal, Guard) as ex:
        print(f"fasp: {ex}", file=sys.stderr)
        return EXIT_GUARD
    return 0


if __name__ == "__main__":
    sys.exit(main())
