import csv
import io as _io
import shutil
from pathlib import Path

import pytest

from fasp.cli import bench, main
from fasp.generators import diamond_chain, directed_clique
from fasp.io import format_instance, parse_instance

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_d3(capsys):
    code, out, _ = run(capsys, "solve", FIX / "d3.fas")
    assert code == 0 and out.splitlines()[0] == "s 3 1"
    assert len(out.splitlines()) == 4


@pytest.mark.parametrize("method", ["cut", "cut-resolve", "exact", "greedy", "greedy-resolve", "hybrid"])
def test_solve_methods_on_fig4(capsys, method):
    code, out, _ = run(capsys, "solve", FIX / "fig4.fas", "--method", method)
    assert code == 0
    weight = int(out.split()[1])
    assert weight >= 7
    if method in ("cut", "cut-resolve", "exact"):
        assert weight == 7


def test_resolve_reports_yes_and_no(capsys):
    assert run(capsys, "resolve", FIX / "fig3.fas")[1].startswith("r yes\ne 10\ne 12\ne 13\n")
    code, out, _ = run(capsys, "resolve", FIX / "d3.fas")
    assert out.startswith("r no\n") and "p fas" in out


def test_greedy_and_bounds(capsys):
    out = run(capsys, "greedy", FIX / "d3.fas")[1]
    assert out.endswith("b mu 3 upsilon 2 upper 3\n")
    assert run(capsys, "bounds", FIX / "d3.fas")[1] == "b mu 3 upsilon 2 upper 3\n"


def test_analyze_outputs_dot(capsys):
    out = run(capsys, "analyze", FIX / "fig2.fas", "--anchor", "1")[1]
    assert "p fas 3 4" in out and "digraph G {" in out
    out = run(capsys, "analyze", FIX / "d3.fas", "--meta", "--seed", "1,3")[1]
    assert out.startswith("graph M {") and "m 1 0" in out


def test_reduce_minor_forces_arcs(capsys):
    out = run(capsys, "reduce", FIX / "fig2.fas", "--minor")[1]
    assert "p fas 0 0" in out and "c forced 1 4" in out


def test_reduce_to_fvs_and_back(capsys, tmp_path):
    out = run(capsys, "reduce", FIX / "d3.fas", "--to", "fvs")[1]
    inst = parse_instance(out)
    assert inst.kind == "fvs" and inst.graph.num_vertices == 6
    p = tmp_path / "d3.fvs"
    p.write_text(out)
    # the expansion exceeds the meta budget, so auto falls back to greedy
    code, solved, _ = run(capsys, "solve", p)
    assert code == 0 and solved.split()[1] == "3"
    assert run(capsys, "solve", p, "--method", "exact")[1].splitlines()[0] == "s 3 1"
    back = run(capsys, "reduce", p, "--to", "fas")[1]
    assert parse_instance(back).graph.num_arcs == 6 + 2 * 12


def test_oracle_all(capsys):
    out = run(capsys, "oracle", FIX / "fig2.fas", "--all")[1]
    assert out.splitlines()[0] == "s 2 1"
    assert [l for l in out.splitlines() if l.startswith("o ")] == ["o 1 4", "o 2 3", "o 4 5"]


def test_loops_need_the_flag(capsys, tmp_path):
    p = tmp_path / "loop.fas"
    p.write_text("p fas 2 3\na 1 1 5\na 1 2 1\na 2 1 2\n")
    code, _, err = run(capsys, "solve", p)
    assert code == 1 and "loop" in err
    code, out, _ = run(capsys, "solve", p, "--strip-loops")
    assert code == 0 and out == "s 6 1\ne 1\ne 2\n"


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.fas"
    bad.write_text("p fas 2 1\na 1 9 1\n")
    assert run(capsys, "solve", bad)[0] == 1
    assert run(capsys, "solve", tmp_path / "missing.fas")[0] == 1
    big = tmp_path / "big.fas"
    big.write_text(format_instance(diamond_chain(5)))
    assert run(capsys, "oracle", big)[0] == 2
    k4 = tmp_path / "k4.fas"
    k4.write_text(format_instance(directed_clique(4)))
    code, _, err = run(capsys, "solve", k4, "--method", "cut", "--m-budget", "0")
    assert code == 2 and "budget" in err


def test_bench_fixture_directory(capsys, tmp_path):
    for name in ("d3.fas", "fig3.fas", "fig4.fas", "diamond2.fas"):
        shutil.copy(FIX / name, tmp_path / name)
    (tmp_path / "broken.fas").write_text("p fas 1 1\n")
    (tmp_path / "big.fas").write_text(format_instance(diamond_chain(5)))
    code, out, _ = run(capsys, "bench", tmp_path, "--method", "cut-resolve", "--method", "oracle", "--no-timing")
    assert code == 0
    rows = list(csv.DictReader(_io.StringIO(out)))
    assert len(rows) == 12 and "wall_ms" not in rows[0]
    by = {(r["instance"], r["method"]): r for r in rows}
    assert by[("broken.fas", "oracle")]["status"].startswith("parse error")
    assert by[("big.fas", "oracle")]["status"].startswith("refused")
    for name in ("d3.fas", "fig3.fas", "fig4.fas", "diamond2.fas"):
        r = by[(name, "cut-resolve")]
        assert r["status"] == "ok" and r["weight"] == r["oracle"] and r["certified"] == "True"


def test_bench_empty_directory(tmp_path):
    assert bench(str(tmp_path), ["auto"]) == []


def test_bench_missing_directory(capsys, tmp_path):
    assert run(capsys, "bench", tmp_path / "nope")[0] == 1


def test_bench_fixture_suite_is_certified():
    records = bench(str(FIX), ["cut-resolve"])
    assert len(records) == 22
    for r in records:
        assert r.status == "ok" and r.certified, r
        if r.oracle is not None:
            assert r.weight == r.oracle
