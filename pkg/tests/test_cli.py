import json
from pathlib import Path

import jsonschema
import pydot
import pytest

from qrep.cli.formats import emit_alg, emit_rep, load_rep, parse_alg, parse_field, parse_rep
from qrep.cli.main import main
from qrep.cli.workspace import Caps, Workspace, bundled_path
from qrep.errors import ParseError
from qrep.exact_linalg import QQ
from qrep.representations import indec_injective, is_isomorphic

SCHEMA = json.loads((Path(__file__).resolve().parent.parent / "docs" / "report_schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return report["result"]


# --- parsing

def test_parse_field():
    assert parse_field("Q") is QQ
    assert parse_field("f5").p == 5 and parse_field("F 7").p == 7
    with pytest.raises(ValueError):
        parse_field("F4")


def test_alg_errors_carry_position():
    text = "field Q\nquiver\n  vertices 2\n  arrow a : 1 -> 3\n"
    with pytest.raises(ParseError) as info:
        parse_alg(text, "x.alg")
    e = info.value
    assert (e.line, e.column) == (4, 18)
    assert str(e).startswith("x.alg:4:18:")


def test_alg_relation_errors():
    text = "quiver\n  vertices 2\n  arrow a : 1 -> 2\nrelations\n  a*zz\n"
    with pytest.raises(ParseError) as info:
        parse_alg(text)
    assert info.value.line == 5
    with pytest.raises(ParseError):
        parse_alg("quiver\n  vertices 1\nrelations\n  J 1\n")
    with pytest.raises(ParseError):
        parse_alg("field Q\nfield Q\nquiver\n vertices 1\n")


def test_alg_round_trip():
    text = bundled_path("paper_B.alg").read_text()
    q, rels, f = parse_alg(text)
    q2, rels2, f2 = parse_alg(emit_alg(q, rels, f))
    assert [(a.name, a.source, a.target) for a in q2.arrows] == [(a.name, a.source, a.target) for a in q.arrows]
    assert rels2 == rels and f2 is f


def test_rep_round_trip(A, tmp_path):
    (tmp_path / "a.alg").write_text(bundled_path("paper_A.alg").read_text())
    i2 = indec_injective(A, 2)
    (tmp_path / "m.rep").write_text(emit_rep(i2, "a.alg", "X"))
    (rep,) = load_rep(tmp_path / "m.rep")
    assert rep.dims == i2.dims and is_isomorphic(rep.renamed("I2"), indec_injective(rep.algebra, 2))


def test_rep_errors(A):
    with pytest.raises(ParseError) as info:
        parse_rep("module X over a.alg\ndim 1 1 0\nmap a = [[1]]\nmap b = [[1]]\n", A)
    assert info.value.line == 1 and "does not vanish" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_rep("module X over a.alg\ndim 1 1 0\nmap q = [[1]]\n", A)
    assert info.value.line == 3
    with pytest.raises(ParseError):
        parse_rep("module X over a.alg\ndim 1 1\n", A)
    with pytest.raises(ParseError):
        parse_rep("module X over a.alg\ndim 1 1 0\nmap a = [[1, 2]]\n", A)


def test_workspace_expressions():
    ws = Workspace.load()
    assert ws.module("S2^2").dims == (0, 2, 0)
    assert ws.module("P1 + I3").dims == (1, 2, 1)
    assert ws.module("M").dim == 14
    for bad in ("S9", "Q1", "S1^0", "S1 ++ S2"):
        with pytest.raises(ParseError):
            ws.module(bad)


def test_caps_from_env():
    c = Caps.from_env({"QREP_CAP_RESOLUTION": "7", "QREP_CAP_KNIT": "3"})
    assert (c.resolution, c.knit, c.admissible) == (7, 3, 20)
    with pytest.raises(ParseError):
        Caps.from_env({"QREP_CAP_KNIT": "x"})


# --- commands

def test_basis_json(capsys):
    r = run_json(capsys, "basis")
    assert r["dimension"] == 7


def test_hom_and_ext(capsys):
    assert run_json(capsys, "ext", "1", "DA", "A")["dimension"] == 0
    assert run_json(capsys, "hom", "S1", "I1")["dimension"] == 1


def test_resolve(capsys):
    r = run_json(capsys, "resolve", "S2", "4")
    assert r["term_dims"] == [3, 4, 6, 8, 12]


def test_tau_text(capsys):
    code, out, _ = run(capsys, "tau", "I1")
    assert code == 0 and "S3" in out


def test_all_commands_validate(capsys):
    for argv in (["modules"], ["tau-inv", "S3"], ["ar-knit"], ["cluster-check", "M"],
                 ["cluster-check", "--mode", "endo", "M"], ["endo", "M"], ["gldim"], ["domdim"],
                 ["complexity", "S2", "10"], ["paper-demo"]):
        run_json(capsys, *argv)


def test_ar_knit_dot(capsys):
    code, out, _ = run(capsys, "ar-knit", "--format", "dot")
    assert code == 0
    (g,) = pydot.graph_from_dot_data(out)
    assert len(g.get_nodes()) == 9
    edges = g.get_edges()
    dashed = [e for e in edges if e.get("style") == "dashed"]
    assert len(edges) - len(dashed) == 12 and len(dashed) == 6


def test_other_algebra(capsys):
    assert run_json(capsys, "--alg", "paper_B.alg", "gldim")["value"] == 3
    assert run_json(capsys, "--alg", "linear_A2.alg", "--field", "f5", "basis")["dimension"] == 3


def test_module_file(capsys, tmp_path):
    (tmp_path / "a.alg").write_text(bundled_path("paper_A.alg").read_text())
    (tmp_path / "x.rep").write_text("module X over a.alg\ndim 0 1 1\nmap c = [[1]]\n")
    r = run_json(capsys, "--alg", str(tmp_path / "a.alg"), "--module", str(tmp_path / "x.rep"), "hom", "X", "I3")
    assert r["dimension"] == 1


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "paper-demo")[0] == 0
    assert run(capsys, "hom", "S1", "Z7")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2
    assert run(capsys, "endo", "A")[0] == 0
    assert run(capsys, "cluster-check", "--mode", "endo", "A")[0] == 1
    assert run(capsys, "tau", "S1+S2")[0] == 0
    bad = tmp_path / "bad.alg"
    bad.write_text("quiver\n  vertices 1\n  arrow x : 1 -> 2\n")
    code, _, err = run(capsys, "--alg", str(bad), "basis")
    assert code == 2 and ":3:" in err


def test_demo_mismatch_exit(capsys):
    # the linear A2 algebra has no 2-cluster tilting A + D(A) nor infinite complexity
    assert run(capsys, "paper-demo", "linear_A2.alg")[0] == 3


def test_env_cap(capsys, monkeypatch):
    monkeypatch.setenv("QREP_CAP_KNIT", "3")
    code, _, err = run(capsys, "ar-knit")
    assert code == 1 and "CapExceeded" in err
    monkeypatch.setenv("QREP_CAP_KNIT", "zero")
    assert run(capsys, "ar-knit")[0] == 2


@pytest.mark.parametrize("field", ["Q", "f2", "f3", "f5"])
def test_demo_field_independent(capsys, field):
    r = run_json(capsys, "--field", field, "paper-demo")
    assert r["ok"] and r["witness"] == "S2"
    assert r["complexity"]["S2"]["term_dims"][:5] == [3, 4, 6, 8, 12]
