import io
import json

import pytest

from preinforce.cli import run_command
from preinforce.deficiency import eta_graph, mu_graph
from preinforce.domination import gamma_p
from preinforce.family import build_block, recognize
from preinforce.graph_core import enumerate_trees, path_graph, read_edge_list, write_edge_list
from preinforce.reinforcement import r_p


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    f2 = tmp_path / "f2.txt"
    write_edge_list(build_block("F", 3)[0], f2)
    p7 = tmp_path / "p7.txt"
    write_edge_list(path_graph(7), p7)
    return {"f2": str(f2), "p7": str(p7), "dir": tmp_path}


def test_gamma(files):
    code, out, _ = run("gamma", "--p", "3", "--input", files["f2"])
    assert code == 0 and out.splitlines()[0] == "gamma_p = 5"
    code, out, _ = run("gamma", "--p", "3", "--input", files["f2"], "--json")
    cert = gamma_p(read_edge_list(files["f2"]), 3)
    assert json.loads(out) == {"p": 3, "gamma_p": 5, "witness": sorted(cert.witness), "unique": True, "count": 1}


def test_reinforce(files):
    code, out, _ = run("reinforce", "--p", "3", "--input", files["f2"], "--method", "eta")
    assert code == 0 and out.splitlines()[0] == "r_p = 4"
    code, out, _ = run("reinforce", "--p", "2", "--input", files["p7"], "--method", "definition", "--json")
    data = json.loads(out)
    assert data["r_p"] == r_p(path_graph(7), 2).value and data["method"] == "definition"


def test_eta_and_mu(files):
    code, out, _ = run("eta", "--p", "3", "--input", files["f2"], "--json")
    w = eta_graph(build_block("F", 3)[0], 3)
    assert json.loads(out)["eta_p"] == w.total == 4
    code, out, _ = run("eta", "--p", "3", "--input", files["f2"], "--set", "0,2")
    assert out.strip() == "eta_p(V, X) = 12"
    code, out, _ = run("mu", "--p", "3", "--input", files["f2"], "--json")
    assert json.loads(out)["mu"] == mu_graph(build_block("F", 3)[0], 3).graph_min == 4
    code, out, _ = run("mu", "--p", "3", "--input", files["f2"], "--set", "0 2 3 5 6")
    assert code == 0 and out.startswith("mu_p = 4")


def test_family_check(files):
    code, out, _ = run("family", "check", "--p", "3", "--input", files["p7"])
    assert code == 0 and out.strip() == "not a member"
    code, out, _ = run("family", "check", "--p", "3", "--input", files["f2"], "--json")
    data = json.loads(out)
    assert data["member"] and data["trace"] == json.loads(recognize(build_block("F", 3)[0], 3).to_json())


def test_family_gen_and_build(files):
    out_path = files["dir"] / "m.txt"
    code, out, _ = run("family", "gen", "--p", "3", "--ops", "3", "--seed", "5", "--json")
    assert code == 0
    data = json.loads(out)
    code2, out2, _ = run("family", "gen", "--p", "3", "--ops", "3", "--seed", "5", "--json")
    assert out == out2  # seeded
    trace_path = files["dir"] / "trace.json"
    trace_path.write_text(json.dumps(data["trace"]))
    code, out, _ = run("family", "build", "--p", "3", "--trace", str(trace_path), "--out", str(out_path))
    assert code == 0
    G = read_edge_list(out_path)
    assert [list(e) for e in G.edges] == data["edges"]


def test_family_build_bad_trace(files):
    bad = json.dumps({"p": 3, "ops": [{"op": "O1", "y": 0, "t": None}]})
    code, _, err = run("family", "build", "--p", "3", "--ops-json", bad)
    assert code == 1 and "step 0" in err
    code, _, err = run("family", "build", "--p", "3")
    assert code == 2


def test_enumerate():
    code, out, _ = run("enumerate", "--n", "10", "--count-only")
    assert code == 0 and out.strip() == "106"
    code, out, _ = run("enumerate", "--n", "5")
    assert len(out.split()) == 3 == len(list(enumerate_trees(5)))


def test_verify(files):
    out_path = files["dir"] / "r.json"
    code, out, _ = run("verify", "--claim", "thm-1.2", "--p", "2", "--max-n", "9", "--out", str(out_path), "--no-timing")
    assert code == 0 and out.startswith("PASS thm-1.2")
    data = json.loads(out_path.read_text())
    assert data["elapsed_ms"] == 0 and data["violations"] == []
    code, out, _ = run("verify", "--claim", "fig-1", "--json")
    assert code == 1 and json.loads(out)["violations"][0]["detail"] == "r_2 = 2, expected 3"
    code, _, _ = run("verify", "--claim", "nonsense")
    assert code == 2
    code, _, _ = run("verify", "--claim", "thm-1.2", "--jobs", "0")
    assert code == 2


def test_export(files):
    code, out, _ = run("export", "--input", files["f2"], "--format", "dot", "--highlight-p", "3")
    assert code == 0 and out.startswith("graph f2 {") and out.count("fillcolor") == 5


def test_usage_and_domain_errors(files, tmp_path):
    assert run("bogus")[0] == 2
    assert run("gamma", "--p", "3")[0] == 2
    assert run("gamma", "--input", files["f2"])[0] == 2
    assert run("gamma", "--p", "3", "--input", files["f2"], "--nope")[0] == 2
    assert run("gamma", "--p", "3", "--input", str(tmp_path / "missing.txt"))[0] == 1
    broken = tmp_path / "broken.txt"
    broken.write_text("3 2\n0 1\n0 1\n")
    code, _, err = run("gamma", "--p", "2", "--input", str(broken))
    assert code == 1 and "duplicate" in err
    assert run("family", "check", "--p", "2", "--input", files["f2"])[0] == 1
    assert run("eta", "--p", "2", "--input", files["f2"], "--set", "a,b")[0] == 2
    assert run("--help")[0] == 0
