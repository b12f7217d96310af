import json

import numpy as np
import pytest

from spatchfill import cli
from spatchfill.generate import random_ribbon
from spatchfill.labels import enumerate_labels
from spatchfill.meshio import write_net, write_ribbon
from spatchfill.spatch import SPatchNet


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ribbon_file(tmp_path):
    path = tmp_path / "ribbon.json"
    write_ribbon(random_ribbon(5, 5, seed=1), path)
    return path


def test_fill_g1_summary(capsys, tmp_path, ribbon_file):
    out_path = tmp_path / "net.json"
    code, out, _ = run(capsys, "fill", "--input", ribbon_file, "--output", out_path)
    assert code == 0
    info = json.loads(out)
    assert (info["depth"], info["points"], info["fixed"], info["free"]) == (8, 495, 135, 360)
    assert out_path.exists()


def test_fill_c0(capsys, tmp_path, ribbon_file):
    code, out, _ = run(capsys, "fill", "--input", ribbon_file, "--output",
                       tmp_path / "c0.json", "--continuity", "c0")
    assert code == 0
    info = json.loads(out)
    assert info["depth"] == 5 and info["points"] == 126 and info["mask"] == "harmonic"


def test_fill_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "fill", "--input", tmp_path / "nope.json", "--output", tmp_path / "x")
    assert code == 1 and "cannot read" in err


def test_fill_incompatible_ribbon(capsys, tmp_path):
    r = random_ribbon(4, 3, seed=0)
    r.inner[1, 1] += 0.1
    path = tmp_path / "bad.json"
    write_ribbon(r, path)
    code, _, err = run(capsys, "fill", "--input", path, "--output", tmp_path / "x.json")
    assert code == 2 and "twist" in err


@pytest.fixture
def constant_net(tmp_path):
    idx = enumerate_labels(5, 3)
    path = tmp_path / "const.json"
    write_net(SPatchNet(5, 3, np.tile([1.0, -2.0, 0.5], (len(idx), 1))), path)
    return path


def test_eval_bary_and_uv(capsys, constant_net):
    code, out, _ = run(capsys, "eval", "--input", constant_net, "--bary", "1,0,0,0,0")
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["point"], [1.0, -2.0, 0.5])
    code, out, _ = run(capsys, "eval", "--input", constant_net, "--uv", "0,0")
    assert code == 0
    np.testing.assert_allclose(json.loads(out)["point"], [1.0, -2.0, 0.5])


def test_eval_bad_input(capsys, constant_net):
    assert run(capsys, "eval", "--input", constant_net, "--bary", "0.5,0,0,0,0")[0] == 2
    assert run(capsys, "eval", "--input", constant_net, "--bary", "1,0,0")[0] == 2
    assert run(capsys, "eval", "--input", constant_net, "--uv", "5,5")[0] == 2


def test_info(capsys, tmp_path):
    path = tmp_path / "hex.json"
    write_net(SPatchNet(6, 5, np.zeros((252, 3))), path)
    code, out, _ = run(capsys, "info", "--input", path)
    info = json.loads(out)
    assert code == 0 and info["points"] == 252
    assert info["fixed_g1"] + info["free_g1"] == 252


def test_mesh(capsys, tmp_path, constant_net):
    obj = tmp_path / "m.obj"
    code, out, _ = run(capsys, "mesh", "--input", constant_net, "--output", obj, "--resolution", 4)
    assert code == 0
    info = json.loads(out)
    assert info["vertices"] == 1 + 5 * 10 and info["triangles"] == 80
    assert sum(l.startswith("f ") for l in obj.read_text().splitlines()) == 80


def test_check_exit_codes(capsys, tmp_path, ribbon_file):
    g1, c0 = tmp_path / "g1.json", tmp_path / "c0.json"
    run(capsys, "fill", "--input", ribbon_file, "--output", g1)
    run(capsys, "fill", "--input", ribbon_file, "--output", c0, "--continuity", "c0")
    code, out, _ = run(capsys, "check", "--input", g1, "--ribbon", ribbon_file)
    assert code == 0 and json.loads(out)["passed"]
    report = tmp_path / "rep.json"
    code, _, err = run(capsys, "check", "--input", c0, "--ribbon", ribbon_file, "--output", report)
    assert code == 2 and "g1" in err
    assert json.loads(report.read_text())["flags"]["c0"]


def test_gen_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "gen", "--n", 5, "--d", 4, "--seed", 9, "--output", a)[0] == 0
    assert run(capsys, "gen", "--n", 5, "--d", 4, "--seed", 9, "--output", b)[0] == 0
    assert a.read_text() == b.read_text()
    assert run(capsys, "gen", "--n", 5, "--d", 2, "--output", a)[0] == 2
