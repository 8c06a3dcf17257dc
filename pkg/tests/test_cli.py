import io
import json
import subprocess
import sys

import pytest

from morigami.catalog import builtin, builtin_names
from morigami.cli import main
from morigami.report import PROPERTIES, verify_sweep

from helpers import mutant_build


def run(argv, stdin=None, capsys=None, monkeypatch=None, **kw):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv, **kw)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin=None, **kw: run(argv, stdin, capsys, monkeypatch, **kw)


def test_analyze_trio(cli):
    code, out, _ = cli(["analyze", "--builtin", "tree7a"])
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == "morigami-report/1"
    assert rep["m_origami"]["genus"] == 6 and rep["m_origami"]["punctures"]["total"] == 18
    assert rep["veech"]["level2"] == "<Gamma(2),S>" and rep["veech"]["cusp_count"] == 2
    for direction in ("horizontal", "vertical", "diagonal"):
        assert sum(w * h for w, h in rep["cylinders"][direction]["types"]) == 28


def test_analyze_torus_cover_from_stdin(cli):
    code, out, _ = cli(["analyze"], stdin="px=(); py=(); d=1\n")
    rep = json.loads(out)
    assert code == 0
    assert rep["m_origami"]["genus"] == 1 and rep["m_origami"]["punctures"]["total"] == 4
    assert rep["veech"]["level2"] == "SL2(Z)"


def test_analyze_K3_from_file(cli, tmp_path):
    f = tmp_path / "k3.txt"
    f.write_text(builtin("K3").to_text())
    code, out, _ = cli(["analyze", str(f)])
    assert code == 0 and json.loads(out)["m_origami"]["genus"] == 10
    code, out, _ = cli(["analyze", "--builtin", "K3", "--format", "table"])
    assert code == 0 and "10" in out


def test_enumerate_genus_one_census(cli):
    code, out, _ = cli(["enumerate", "--filter", "m_genus=1"])
    lines = out.splitlines()
    assert code == 0 and len(lines) == 5
    assert all(json.loads(l)["m_origami"]["genus"] == 1 for l in lines)


def test_enumerate_small_degrees_is_deterministic(cli):
    code, out, _ = cli(["enumerate", "--max-degree", "2"])
    assert code == 0
    degrees = [json.loads(l)["dessin"]["d"] for l in out.splitlines()]
    assert degrees == [1, 2, 2, 2]
    assert cli(["enumerate", "--max-degree", "2"])[1] == out


def test_enumerate_filters(cli):
    code, out, _ = cli(["enumerate", "--max-degree", "4", "--filter", "tree=true", "--filter", "veech=S"])
    reps = [json.loads(l) for l in out.splitlines()]
    assert code == 0 and reps
    assert all(r["predicates"]["tree"] and r["veech"]["level2"] == "<Gamma(2),S>" for r in reps)


@pytest.mark.parametrize("argv", [
    ["enumerate"],
    ["enumerate", "--max-degree", "12"],
    ["enumerate", "--max-degree", "2", "--filter", "colour=red"],
    ["enumerate", "--max-degree", "2", "--filter", "veech=Gamma(3)"],
])
def test_enumerate_rejects_bad_requests(cli, argv):
    assert cli(argv)[0] == 1


def test_orbit_listing(cli):
    code, out, _ = cli(["orbit", "--builtin", "tree7a"])
    listing = json.loads(out)
    assert code == 0 and listing["sl2_orbit_size"] == 3 == listing["w_orbit_size"]
    # left cosets of the stabiliser {I, S}: α ~ α·S, with S T S = T S T in the level-2 quotient
    assert listing["groups"] == [["I", "S"], ["T", "T S"], ["S T", "T S T"]]
    assert cli(["orbit"], stdin="px=(); py=(); d=1")[1].count('"sl2_orbit_size": 1') == 1
    assert json.loads(cli(["orbit", "--builtin", "gamma2st"])[1])["sl2_orbit_size"] == 2


def test_verify_degree_one_passes(cli):
    code, out, _ = cli(["verify", "--max-degree", "1"])
    head = json.loads(out.splitlines()[0])
    assert code == 0 and head["dessins"] == 1 and head["passed"]
    assert [json.loads(l)["property"] for l in out.splitlines()[1:]] == list(PROPERTIES)


def test_verify_degree_five_passes(cli):
    code, out, _ = cli(["verify", "--max-degree", "5"])
    failing = [r["property"] for r in map(json.loads, out.splitlines()[1:]) if not r["passed"]]
    assert json.loads(out.splitlines()[0])["dessins"] == 134
    assert failing == [] and code == 0


def test_verify_detects_a_mutated_construction(cli):
    code, out, _ = cli(["verify", "--max-degree", "3"], build_fn=mutant_build)
    assert code == 2
    results = {r["property"]: r for r in map(json.loads, out.splitlines()[1:])}
    oracle = results["oracle_equivalence"]
    assert not oracle["passed"] and oracle["counterexample"]


def test_verify_sweep_reports_witness_dessins():
    summary = verify_sweep(3, build_fn=mutant_build)
    failed = [r for r in summary["results"] if r.name == "oracle_equivalence"][0]
    assert failed.failures > 0 and "px=" in failed.counterexample


def test_render_ascii_and_svg(cli, tmp_path):
    code, out, _ = cli(["render", "--builtin", "tree7a"])
    assert code == 0 and out.count("|") > 28
    target = tmp_path / "o.svg"
    code, _, _ = cli(["render", "--builtin", "tree7a", "--format", "svg", "-o", str(target)])
    assert code == 0 and target.read_text().startswith("<?xml")
    code, out, _ = cli(["render"], stdin="sA=(1 2); sB=(); d=2")
    assert code == 0 and "1" in out and "2" in out


def test_builtin_listing_and_lookup(cli):
    code, out, _ = cli(["builtin", "--list"])
    assert code == 0 and "tree7a" in out and "K<n>" in out
    code, out, _ = cli(["builtin", "gamma2st", "--format", "json"])
    assert code == 0 and json.loads(out)["px"]
    assert cli(["builtin", "nosuch"])[0] == 1
    assert {"tree7a", "tree7b", "tree7c", "gamma2st"} <= set(builtin_names())


@pytest.mark.parametrize("text, fragment", [
    ("px=(1 2; py=(); d=2", "position"),
    ("px=(1 2); py=(); d=3", "{3}"),
    ("", "empty"),
])
def test_invalid_input_exits_one_with_message(cli, text, fragment):
    code, _, err = cli(["analyze"], stdin=text)
    assert code == 1 and fragment in err


def test_missing_file_exits_one(cli, tmp_path):
    assert cli(["analyze", str(tmp_path / "absent.txt")])[0] == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "morigami", "builtin", "tree7b"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("px=")
