import json
import subprocess
import sys
from pathlib import Path

import pytest

from planar_turan.cli import main
from planar_turan.constructions import extremal_c3c5, wheel
from planar_turan.graph_core import format_adjlist
from planar_turan.plane_map import format_rot, parse_rot

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["decompose", "k4.rot", "--format", "json"], "decompose_k4.json"),
        (["census", "--n", "295660", "--format", "json"], "census_295660.json"),
        (["verify-lemma2", "--format", "json"], "verify_lemma2.json"),
        (["free", "k5me.adj", "--pattern", "C3", "--format", "json"], "free_k5me_c3.json"),
        (["construct", "extremal", "--n", "8"], "extremal8.rot"),
        (["construct", "extremal", "--n", "14", "--format", "json"], "extremal14.json"),
    ],
)
def test_golden_outputs(capsys, monkeypatch, argv, golden):
    monkeypatch.chdir(GOLDEN)
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert first == (GOLDEN / golden).read_text()


def test_decompose_extremal_minus_apex_edge(capsys, tmp_path):
    path = tmp_path / "e14.rot"
    path.write_text(format_rot(extremal_c3c5(14).remove_edge(0, 1)))
    code, out, _ = run(capsys, "decompose", str(path), "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert [b["alias"] for b in doc["payload"]["blocks"]] == ["wheel5"] * 4


def test_decompose_bowtie(capsys, tmp_path):
    path = tmp_path / "bowtie.rot"
    path.write_text("5\n0: 1 2\n1: 2 0\n2: 0 1 3 4\n3: 4 2\n4: 2 3\n")
    assert parse_rot(path.read_text()).is_spherical()
    code, out, _ = run(capsys, "decompose", str(path), "--format", "json")
    assert code == 0
    assert [b["alias"] for b in json.loads(out)["payload"]["blocks"]] == ["triangle", "triangle"]


def test_free_verdicts(capsys, tmp_path):
    ext = tmp_path / "e20.adj"
    ext.write_text(format_adjlist(extremal_c3c5(20).graph))
    assert run(capsys, "free", str(ext), "--pattern", "C3+C5")[0] == 0
    w10 = tmp_path / "w10.adj"
    w10.write_text(format_adjlist(wheel(10).graph))
    assert run(capsys, "free", str(w10), "--pattern", "2C")[0] == 0
    code, out, _ = run(capsys, "free", str(GOLDEN / "k5me.adj"), "--pattern", "C3", "--format", "json")
    assert code == 1 and len(json.loads(out)["payload"]["witness"][0]) == 3


def test_parse_error_has_line_number(capsys, tmp_path):
    bad = tmp_path / "bad.rot"
    bad.write_text("3\n0: 1\n1: x\n")
    code, _, err = run(capsys, "decompose", str(bad))
    assert code == 2 and "line 3" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["verify-theorem1", "--n", "6"],
        ["free", "/does/not/exist", "--pattern", "C3"],
        ["free", str(GOLDEN / "k5me.adj"), "--pattern", "C2"],
        ["construct", "wheel", "--n", "3"],
        ["oracle", "ex", "--n", "11", "--pattern", "C3"],
        ["no-such-command"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_construction_check_range(capsys):
    code, out, _ = run(capsys, "verify-theorem1", "--n-min", "7", "--n-max", "60")
    assert code == 0 and out.count("PASS") == 3


def test_construction_check_threshold_info(capsys):
    code, out, _ = run(capsys, "verify-theorem1", "--n", "295660", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert any(c["name"] == "census_threshold" and c["verdict"] == "INFO" for c in doc["checks"])


def test_oracle_ex_reports_formula_mismatch(capsys):
    code, out, _ = run(capsys, "oracle", "ex", "--n", "6", "--pattern", "2C3", "--format", "json")
    doc = json.loads(out)
    assert doc["payload"]["max_edges"] == 11
    assert code == 1


def test_oracle_ex_lower_bound(capsys):
    code, out, _ = run(capsys, "oracle", "ex", "--n", "8", "--pattern", "C3+C5")
    assert code == 0 and "PASS construction_lower_bound" in out


def test_oracle_blocks_and_catalog(capsys, monkeypatch, tmp_path):
    code, out, _ = run(capsys, "oracle", "blocks", "--v", "5", "--format", "json")
    assert code == 0 and len(json.loads(out)["payload"]["classes"]) == 4
    monkeypatch.setenv("PTL_CACHE_DIR", str(tmp_path))
    code, out, _ = run(capsys, "catalog", "--rebuild", "--max-v", "5", "--format", "json")
    assert code == 0 and (tmp_path / "block_catalog.json").exists()
    assert json.loads(out)["payload"]["counts"] == {"2": 1, "3": 1, "4": 2, "5": 4}


def test_construct_formats(capsys):
    for fmt in ("adjlist", "rot", "dot", "json"):
        code, out, _ = run(capsys, "construct", "fan", "--n", "6", "--format", fmt)
        assert code == 0 and out
    _, a, _ = run(capsys, "construct", "random", "--n", "12", "--seed", "3")
    _, b, _ = run(capsys, "construct", "random", "--n", "12", "--seed", "3")
    assert a == b and parse_rot(a).is_spherical()


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planar_turan.cli", "census", "--n", "7"], capture_output=True, text=True)
    assert proc.returncode == 0 and "PASS euler_identity" in proc.stdout
