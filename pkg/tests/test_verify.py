import json

import numpy as np
import pytest

from spatchfill import verify as vf
from spatchfill.fill import fill, fill_g1
from spatchfill.generate import planar_ribbon, random_ribbon
from spatchfill.labels import panel
from spatchfill.spatch import SPatchNet


@pytest.fixture(scope="module")
def ribbon():
    return random_ribbon(5, 4, seed=11)


@pytest.fixture(scope="module")
def g1_net(ribbon):
    return fill_g1(ribbon)


def test_probe_parameters():
    ts = vf.probe_parameters(33)
    assert len(ts) == 33
    assert ts[0] == pytest.approx(1 / 34) and ts[-1] == pytest.approx(33 / 34)


def test_c0_for_both_fills(ribbon, g1_net):
    assert max(vf.check_c0(fill(ribbon, "c0"), ribbon)) < 1e-11
    assert max(vf.check_c0(g1_net, ribbon)) < 1e-11


def test_c0_detects_perturbation(ribbon, g1_net):
    bad = SPatchNet(g1_net.n, g1_net.depth, g1_net.points.copy())
    o = bad.index.ordinal(panel(2, 3, 5, 7)[0])
    bad.points[o] += [0.0, 0.0, 0.01]
    dev = vf.check_c0(bad, ribbon)
    assert dev[1] > 1e-4 / ribbon.bbox_diagonal()
    assert dev[0] < 1e-11


def test_c0_depth_mismatch(ribbon, g1_net):
    with pytest.raises(Exception, match="depth"):
        vf.check_c0(g1_net, random_ribbon(5, 3, seed=0))


def test_planar_g1():
    r = planar_ribbon(6, 3)
    rep = vf.check_g1(fill_g1(r), r)
    assert max(max(a) for a in rep.max_angle) < 1e-9


def test_g1_angles_shrink(ribbon, g1_net):
    rep = vf.check_g1(g1_net, ribbon)
    first, last = np.array(rep.max_angle[0]), np.array(rep.max_angle[1])
    assert np.all(last < first)
    assert np.all(np.array(rep.shrink_ratio) < 0.2)
    assert rep.degenerate_samples == 0


def test_c0_fill_fails_g1(ribbon):
    rep = vf.check_g1(fill(ribbon, "c0"), ribbon)
    assert max(rep.max_angle[1]) > 1e-2


def test_panels(g1_net):
    res = vf.check_panels(g1_net)
    assert len(res) == 5 and len(res[0]) == 7
    assert max(max(r) for r in res) < 1e-9


def test_triangle_panels_exact():
    net = fill_g1(random_ribbon(3, 3, seed=2))
    assert max(max(r) for r in vf.check_panels(net)) == 0.0


def test_panel_perturbation_detected(g1_net):
    bad = SPatchNet(g1_net.n, g1_net.depth, g1_net.points.copy())
    o = bad.index.ordinal(panel(3, 2, 5, 7)[3])
    bad.points[o] += [0.0, 0.05, 0.0]
    res = vf.check_panels(bad)
    assert res[2][2] > 1e-3
    assert res[0][0] < 1e-9


def test_corner_consistency(ribbon):
    assert vf.corner_consistency(ribbon) < 1e-12


def test_report_deterministic_and_serialisable(ribbon, g1_net):
    a = vf.run_checks(g1_net, ribbon)
    b = vf.run_checks(g1_net, ribbon)
    assert a.to_dict() == b.to_dict()
    assert a.passed
    data = json.loads(json.dumps(a.to_dict()))
    assert len(data["c0_max_deviation"]) == 5
    assert len(data["g1_max_angle"]) == 2 and len(data["g1_max_angle"][0]) == 5
    values = data["c0_max_deviation"] + sum(data["g1_max_angle"], [])
    assert all(np.isfinite(v) and v >= 0 for v in values)


def test_report_flags_c0_fill(ribbon):
    rep = vf.run_checks(fill(ribbon, "c0"), ribbon, "g1")
    assert not rep.passed
    assert not rep.flags["g1"]
    assert vf.run_checks(fill(ribbon, "c0"), ribbon, "c0").passed
