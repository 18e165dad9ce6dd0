import json
import os

import pytest

from rsq.algebra import ProjMorphism, ProjSum, RSZAlgebra
from rsq.cli import EXIT_DOMAIN, EXIT_INPUT, EXIT_OK, EXIT_USAGE, run
from rsq.complexes import RadicalComplex, direct_sum, stalk
from rsq.io import complex_to_dict
from rsq.quiver import Quiver


def _write_json(path, data):
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def top_of_a(a2, F):
    alg = RSZAlgebra(a2, F)
    pa, pb = ProjSum({"a": 1}), ProjSum({"b": 1})
    d = ProjMorphism(alg, pb, pa, {("a", "b", "alpha"): F.eye(1)})
    return RadicalComplex(alg, {-1: pb, 0: pa}, {-1: d})


# --------------------- Exit codes ---------------------
def test_usage_errors(quiver_file, a2):
    assert run([]) == EXIT_USAGE
    assert run(["cover", quiver_file(a2), "--window", "1..2"]) == EXIT_USAGE
    assert run(["cover", quiver_file(a2), "--window", "0-2"]) == EXIT_USAGE
    assert run(["--field", "fp:x", "analyze", quiver_file(a2)]) == EXIT_USAGE


def test_malformed_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(["analyze", str(bad)]) == EXIT_INPUT


def test_disconnected_quiver(quiver_file, capsys):
    assert run(["analyze", quiver_file(Quiver.from_edges("ab", []))]) == EXIT_DOMAIN
    assert "not connected" in capsys.readouterr().err


# --------------------- Quivers and coverings ---------------------
def test_analyze(quiver_file, cycle3, capsys):
    assert run(["analyze", quiver_file(cycle3), "--paths"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("gradable: no, r_Q: 3, shape: TildeA(3, oriented)")
    assert "infinite paths: yes" in out


def test_cover_writes_dot_and_json(quiver_file, two_cycle, tmp_path, capsys):
    target = tmp_path / "window.json"
    assert run(["cover", quiver_file(two_cycle), "--window", "0..2", "-o", str(target)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("digraph cover {")
    data = json.loads(target.read_text())
    assert data["vertices"] == ["a@0", "a@2", "b@1"]


# --------------------- Complexes ---------------------
def test_koszul_pushdown(quiver_file, a2, tmp_path, capsys):
    rep = _write_json(tmp_path / "rep.json", {"dims": {"a@0": 1, "b@1": 1}, "maps": {"alpha@0": [[1]]}})
    assert run(["koszul", quiver_file(a2), "--rep", rep, "--pushdown"]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["terms"] == {"-1": [{"vertex": "b", "mult": 1}], "0": [{"vertex": "a", "mult": 1}]}
    assert data["quiver"]["vertices"] == ["a", "b"]


def test_decompose_writes_summands(a2, F, tmp_path, capsys):
    alg = RSZAlgebra(a2, F)
    c = direct_sum([stalk(alg, ProjSum({"a": 1})), stalk(alg, ProjSum({"b": 1}))])
    path = _write_json(tmp_path / "c.json", complex_to_dict(c))
    assert run(["decompose", path]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "2 summands"
    assert os.path.exists(tmp_path / "c.0.json") and os.path.exists(tmp_path / "c.1.json")


def test_homology(top_of_a, tmp_path, capsys):
    path = _write_json(tmp_path / "s.json", complex_to_dict(top_of_a))
    assert run(["homology", path]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["homology"]["0"] == {"a": 1}
    assert data["homology"]["-1"] == {}
    assert data["unreliable"] == []


def test_homology_of_unreliable_degree(top_of_a, tmp_path):
    path = _write_json(tmp_path / "s.json", complex_to_dict(top_of_a.truncate_below(0)))
    assert run(["homology", path, "--degree", "0"]) == EXIT_DOMAIN


def test_hom_shifts(top_of_a, a2, F, tmp_path, capsys):
    source = _write_json(tmp_path / "s.json", complex_to_dict(top_of_a))
    target = _write_json(tmp_path / "p.json", complex_to_dict(stalk(RSZAlgebra(a2, F), ProjSum({"b": 1}))))
    assert run(["hom", source, target, "--shift", "0", "--shift", "1"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"dim": {"0": 0, "1": 1}}


# --------------------- Derived AR ---------------------
def test_ar_knit(quiver_file, a3, tmp_path, capsys):
    dot = tmp_path / "ar.dot"
    assert run(["ar", "knit", quiver_file(a3), "--window", "0..2", "--dot", str(dot)]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.strip() == "ZDelta(DynkinA(3)) within window: 6 vertices, 0 on the boundary, 0 mesh defects"
    assert dot.read_text().startswith("digraph ar {")


def test_ar_triangle(quiver_file, a2, tmp_path, capsys):
    rep = _write_json(tmp_path / "rep.json", {"dims": {"b@1": 1}})
    middle = tmp_path / "middle.json"
    assert run(["ar", "triangle", quiver_file(a2), "--rep", rep, "--window", "0..1", "-o", str(middle)]) == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["case"] == "sequence"
    assert data["middle_multiplicities"] == {"-1": {"b": 1}, "0": {"a": 1}}
    assert "terms" in json.loads(middle.read_text())


def test_simples_on_loop(quiver_file, loop, capsys):
    assert run(["simples", quiver_file(loop), "--vertex", "a"]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "S[a][0] = F(I_a@0)[0] pushed down"
    assert lines[1].startswith("r_Q: 1")
    assert "S[a][1] via alpha: irr 1" in lines[2]


def test_simples_unknown_vertex(quiver_file, loop):
    assert run(["simples", quiver_file(loop), "--vertex", "z"]) == EXIT_INPUT


def test_classify_loop(quiver_file, loop, tmp_path, capsys):
    prefix = str(tmp_path / "loop")
    assert run(["classify", quiver_file(loop), "--evidence", "--depth", "3", "--dot-prefix", prefix]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("shape: TildeA(1, oriented), r_Q: 1")
    assert "DoubleInfinitePath" in out
    assert "evidence 1: simple complexes from S[a][0]" in out
    assert os.path.exists(f"{prefix}.0.dot") and os.path.exists(f"{prefix}.1.dot")


def test_selfcheck(capsys):
    assert run(["selfcheck", "--rounds", "1"]) == EXIT_OK
    assert "FAIL" not in capsys.readouterr().out
