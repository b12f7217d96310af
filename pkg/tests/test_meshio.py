import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spatchfill import domain as dom
from spatchfill import meshio as mio
from spatchfill.errors import ParseError, StructuralError
from spatchfill.fill import fill_g1
from spatchfill.generate import random_ribbon
from spatchfill.labels import enumerate_labels, label_count
from spatchfill.spatch import SPatchNet

DATA = Path(__file__).parent / "data"


def flat_pentagon():
    poly = dom.polygon_vertices(5)
    idx = enumerate_labels(5, 1)
    return SPatchNet(5, 1, np.column_stack([idx.array @ poly.vertices, np.zeros(5)]))


def test_fan():
    tri = mio.tessellate_domain(5, 1)
    assert len(tri.points) == 6
    assert len(tri.triangles) == 5


def test_three_rings():
    tri = mio.tessellate_domain(5, 3)
    assert len(tri.points) == 31
    assert len(tri.triangles) == 45


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("res", range(1, 11))
def test_count_formulas(n, res):
    tri = mio.tessellate_domain(n, res)
    assert len(tri.points) == 1 + n * res * (res + 1) // 2
    assert len(tri.triangles) == n * res * res
    a, b, c = (tri.points[tri.triangles[:, k]] for k in range(3))
    area = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    assert np.all(area > 0)


def test_outer_ring_on_boundary():
    tri = mio.tessellate_domain(6, 4)
    poly = dom.polygon_vertices(6)
    assert all(dom.on_boundary(poly, p) for p in tri.points[tri.boundary])
    assert not any(dom.on_boundary(poly, p) for p in tri.points[~tri.boundary])


def test_bad_resolution():
    with pytest.raises(ValueError):
        mio.tessellate_domain(5, 0)


def test_mesh_constant_net():
    idx = enumerate_labels(4, 3)
    net = SPatchNet(4, 3, np.tile([1.0, 2.0, 3.0], (len(idx), 1)))
    mesh = mio.mesh_patch(net, 3, with_normals=False)
    np.testing.assert_allclose(mesh.vertices, np.tile([1.0, 2.0, 3.0], (len(mesh.vertices), 1)))
    assert mesh.normals is None


def test_mesh_planar_normals():
    mesh = mio.mesh_patch(flat_pentagon(), 4)
    np.testing.assert_allclose(np.abs(mesh.normals), np.tile([0, 0, 1.0], (len(mesh.normals), 1)), atol=1e-9)
    tri = mio.tessellate_domain(5, 4)
    assert len(mesh.vertices) == len(tri.points)
    assert len(mesh.triangles) == len(tri.triangles)


def test_mesh_normals_unit():
    mesh = mio.mesh_patch(fill_g1(random_ribbon(5, 3, seed=2)), 6)
    np.testing.assert_allclose(np.linalg.norm(mesh.normals, axis=1), 1.0, atol=1e-9)
    assert mesh.meta["degenerate_normals"] == 0


def test_thread_count_independent(monkeypatch):
    net = fill_g1(random_ribbon(4, 3, seed=1))
    a = mio.mesh_patch(net, 5, threads=1)
    b = mio.mesh_patch(net, 5, threads=3)
    np.testing.assert_array_equal(a.vertices, b.vertices)
    np.testing.assert_array_equal(a.normals, b.normals)
    monkeypatch.setenv("SPATCH_THREADS", "2")
    assert mio.thread_count() == 2


def test_single_triangle_obj(tmp_path):
    mesh = mio.SurfaceMesh(np.eye(3), np.array([[0, 1, 2]]), np.tile([0, 0, 1.0], (3, 1)))
    path = tmp_path / "t.obj"
    mio.write_obj(mesh, path)
    lines = path.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == 3
    assert sum(l.startswith("vn ") for l in lines) == 3
    assert lines[-1] == "f 1//1 2//2 3//3"


def test_obj_golden(tmp_path):
    path = tmp_path / "flat.obj"
    mio.write_obj(mio.mesh_patch(flat_pentagon(), 1), path)
    assert path.read_text() == (DATA / "flat_pentagon_r1.obj").read_text()


def test_obj_counts(tmp_path):
    mesh = mio.mesh_patch(fill_g1(random_ribbon(6, 3, seed=0)), 5)
    path = tmp_path / "m.obj"
    mio.write_obj(mesh, path)
    lines = path.read_text().splitlines()
    assert sum(l.startswith("v ") for l in lines) == len(mesh.vertices)
    assert sum(l.startswith("f ") for l in lines) == len(mesh.triangles)


def test_minimal_ribbon_round_trip(tmp_path):
    pts = np.arange(18, dtype=float).reshape(3, 2, 3) / 7.0
    from spatchfill.bezier import Ribbon

    r = Ribbon(pts, pts[::-1])
    path = tmp_path / "r.json"
    mio.write_ribbon(r, path)
    back = mio.read_ribbon(path)
    np.testing.assert_array_equal(back.outer, r.outer)
    np.testing.assert_array_equal(back.inner, r.inner)


def test_ribbon_structural_error(tmp_path):
    data = mio.ribbon_to_dict(random_ribbon(4, 3, seed=0))
    data["sides"][2]["outer"].pop()
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(StructuralError, match="side 3"):
        mio.read_ribbon(path)


def test_ribbon_parse_errors(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"n": 3, "d": 1, "sides": [')
    with pytest.raises(ParseError, match="line 1"):
        mio.read_ribbon(path)
    data = mio.ribbon_to_dict(random_ribbon(4, 3, seed=0))
    data["sides"][1]["inner"][0] = [1.0, "x", 2.0]
    path.write_text(json.dumps(data))
    with pytest.raises(ParseError, match="side 2 inner"):
        mio.read_ribbon(path)


def test_ribbon_omitted_inner_endpoints(tmp_path):
    r = random_ribbon(5, 5, seed=1)
    data = mio.ribbon_to_dict(r)
    for side in data["sides"]:
        side["inner"] = side["inner"][1:-1]
    path = tmp_path / "short.json"
    path.write_text(json.dumps(data))
    back = mio.read_ribbon(path)
    np.testing.assert_array_equal(back.inner, r.inner)


def test_quintic_pentagon_ribbon_file(tmp_path):
    from spatchfill.bezier import validate_ribbon

    path = tmp_path / "r5x5.json"
    mio.write_ribbon(random_ribbon(5, 5, seed=1), path)
    rep = validate_ribbon(mio.read_ribbon(path))
    assert rep.passed and rep.distinct_points == 40


def test_net_round_trip(tmp_path):
    net = fill_g1(random_ribbon(5, 3, seed=3))
    path = tmp_path / "net.json"
    mio.write_net(net, path)
    back = mio.read_net(path)
    np.testing.assert_array_equal(back.points, net.points)
    assert len(back.points) == label_count(5, 6)
    labels = [p["label"] for p in json.loads(path.read_text())["points"]]
    assert labels[0] == "6,0,0,0,0"


def test_net_missing_and_duplicate_label(tmp_path):
    data = mio.net_to_dict(fill_g1(random_ribbon(4, 3, seed=3)))
    removed = data["points"].pop(7)
    path = tmp_path / "net.json"
    path.write_text(json.dumps(data))
    with pytest.raises(StructuralError, match=removed["label"]):
        mio.read_net(path)
    data["points"].append(dict(data["points"][0]))
    path.write_text(json.dumps(data))
    with pytest.raises(StructuralError):
        mio.read_net(path)


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)


@given(
    n=st.integers(3, 6),
    depth=st.integers(1, 4),
    data=st.data(),
)
@settings(max_examples=40, deadline=None)
def test_net_round_trip_property(n, depth, data, tmp_path_factory):
    size = label_count(n, depth)
    coords = data.draw(st.lists(finite, min_size=3 * size, max_size=3 * size))
    net = SPatchNet(n, depth, np.array(coords).reshape(size, 3))
    back = mio.net_from_dict(json.loads(json.dumps(mio.net_to_dict(net))))
    np.testing.assert_array_equal(back.points, net.points)


@given(n=st.integers(3, 7), d=st.integers(3, 6), seed=st.integers(0, 10_000))
@settings(max_examples=30, deadline=None)
def test_ribbon_round_trip_property(n, d, seed):
    r = random_ribbon(n, d, seed=seed)
    back = mio.ribbon_from_dict(json.loads(json.dumps(mio.ribbon_to_dict(r))))
    np.testing.assert_array_equal(back.outer, r.outer)
    np.testing.assert_array_equal(back.inner, r.inner)
