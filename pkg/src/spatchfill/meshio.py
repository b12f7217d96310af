"""
File formats and surface meshing.

Ribbon and net files are UTF-8 JSON; meshes are written as Wavefront OBJ.
Floats go through ``json``'s shortest round-trip repr, so write followed by
read is bit-exact.
"""

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import domain as dom
from .bezier import Ribbon
from .errors import LabelError, MalformedRibbonError, ParseError, StructuralError
from .labels import enumerate_labels, format_label, parse_label
from .spatch import SPatchNet, eval_at_domain_point, sampled_normals

logger = logging.getLogger(__name__)

NORMAL_OFFSET = 1e-4


@dataclass
class DomainTriangulation:
    points: np.ndarray  # (V, 2)
    triangles: np.ndarray  # (T, 3)
    boundary: np.ndarray  # (V,) bool, vertex lies on the polygon boundary


@dataclass
class SurfaceMesh:
    vertices: np.ndarray
    triangles: np.ndarray
    normals: np.ndarray = None
    meta: dict = field(default_factory=dict)


def tessellate_domain(n, resolution):
    """Concentric-ring triangulation of the regular n-gon.

    Ring r (0..R) is the polygon scaled by r/R with n*r evenly spaced
    vertices; consecutive rings are stitched with 2r-1 triangles per side.
    """
    if resolution < 1:
        raise ValueError(f"resolution must be >= 1, got {resolution}")
    poly = dom.polygon_vertices(n)
    R = int(resolution)
    pts = [np.zeros(2)]
    ring_start = [0]
    for r in range(1, R + 1):
        ring_start.append(len(pts))
        s = r / R
        for k in range(1, n + 1):
            a, b = poly.vertex(k), poly.vertex(k + 1)
            for m in range(r):
                t = m / r
                pts.append(s * ((1.0 - t) * a + t * b))
    pts = np.array(pts)

    def ring_vertex(r, k, m):
        # vertex m (0..r) on side k (0-based) of ring r
        if r == 0:
            return 0
        return ring_start[r] + (k * r + m) % (n * r)

    tris = []
    for r in range(1, R + 1):
        for k in range(n):
            for m in range(r):
                tris.append((ring_vertex(r, k, m), ring_vertex(r, k, m + 1), ring_vertex(r - 1, k, m)))
            for m in range(r - 1):
                tris.append((ring_vertex(r - 1, k, m), ring_vertex(r, k, m + 1), ring_vertex(r - 1, k, m + 1)))
    tris = np.array(tris, dtype=np.int64)
    a, b, c = pts[tris[:, 0]], pts[tris[:, 1]], pts[tris[:, 2]]
    area = (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])
    flip = area < 0
    tris[flip] = tris[flip][:, [0, 2, 1]]
    boundary = np.zeros(len(pts), dtype=bool)
    boundary[ring_start[R]:] = True
    return DomainTriangulation(pts, tris, boundary)


def _chunks(m, parts):
    bounds = np.linspace(0, m, parts + 1).astype(int)
    return [slice(bounds[k], bounds[k + 1]) for k in range(parts) if bounds[k] < bounds[k + 1]]


def thread_count():
    """Worker count from SPATCH_THREADS (0 or unset = automatic)."""
    try:
        value = int(os.environ.get("SPATCH_THREADS", "0"))
    except ValueError:
        value = 0
    return value if value > 0 else min(8, os.cpu_count() or 1)


def mesh_patch(net, resolution=16, scheme="wachspress", with_normals=True, threads=None):
    """Evaluate the patch over a ring tessellation of its domain."""
    tri = tessellate_domain(net.n, resolution)
    poly = net.domain
    threads = threads or thread_count()
    parts = _chunks(len(tri.points), threads)

    def positions(sl):
        return eval_at_domain_point(net, tri.points[sl], scheme)

    # normals are sampled at least NORMAL_OFFSET away from the boundary
    rho = 1.0 - NORMAL_OFFSET / poly.apothem
    probe = tri.points.copy()
    near = dom.boundary_distance(poly, probe) < NORMAL_OFFSET
    probe[near] *= rho
    step = NORMAL_OFFSET / 4

    def normals(sl):
        return sampled_normals(net, probe[sl], step, scheme)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        verts = np.concatenate(list(pool.map(positions, parts)))
        nrm = None
        meta = {"degenerate_normals": 0}
        if with_normals:
            results = list(pool.map(normals, parts))
            nrm = np.concatenate([r[0] for r in results])
            ok = np.concatenate([r[1] for r in results])
            meta["degenerate_normals"] = int((~ok).sum())
            if meta["degenerate_normals"]:
                logger.warning("%d degenerate normals emitted as zero vectors",
                               meta["degenerate_normals"])
    return SurfaceMesh(verts, tri.triangles, nrm, meta)


def write_obj(mesh, path):
    """Write ``v``/``vn``/``f`` records with 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for v in mesh.vertices + 0.0:  # + 0.0 turns -0.0 into 0.0
            fh.write("v %.17g %.17g %.17g\n" % tuple(v))
        if mesh.normals is not None:
            for v in mesh.normals + 0.0:
                fh.write("vn %.17g %.17g %.17g\n" % tuple(v))
            for a, b, c in mesh.triangles + 1:
                fh.write(f"f {a}//{a} {b}//{b} {c}//{c}\n")
        else:
            for a, b, c in mesh.triangles + 1:
                fh.write(f"f {a} {b} {c}\n")


def _point(value, where):
    if not isinstance(value, list) or len(value) != 3:
        raise ParseError(f"{where}: expected [x, y, z], got {value!r}")
    try:
        return [float(v) for v in value]
    except (TypeError, ValueError):
        raise ParseError(f"{where}: non-numeric coordinate in {value!r}") from None


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def ribbon_to_dict(r):
    return {
        "n": r.n,
        "d": r.d,
        "sides": [
            {"outer": r.outer[k].tolist(), "inner": r.inner[k].tolist()} for k in range(r.n)
        ],
    }


def ribbon_from_dict(data, source="ribbon"):
    try:
        n = int(data["n"])
        d = int(data["d"])
        sides = data["sides"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{source}: missing or invalid header field ({exc})") from None
    if not isinstance(sides, list):
        raise ParseError(f"{source}: 'sides' must be a list")
    if len(sides) != n:
        raise StructuralError(f"{source}: header says n={n} but {len(sides)} sides are given")
    if n < 3:
        raise MalformedRibbonError(f"{source}: a ribbon needs n >= 3 sides, got {n}")
    outer = []
    inner = []
    for k, side in enumerate(sides, start=1):
        try:
            o_raw, i_raw = side["outer"], side["inner"]
        except (KeyError, TypeError):
            raise ParseError(f"{source}: side {k} needs 'outer' and 'inner' rows") from None
        o = [_point(p, f"{source}: side {k} outer[{j}]") for j, p in enumerate(o_raw)]
        i = [_point(p, f"{source}: side {k} inner[{j}]") for j, p in enumerate(i_raw)]
        if len(o) != d + 1:
            raise StructuralError(
                f"{source}: side {k} outer row has {len(o)} points, expected d+1 = {d + 1}"
            )
        if len(i) not in (d + 1, d - 1):
            raise StructuralError(
                f"{source}: side {k} inner row has {len(i)} points, expected {d + 1} "
                f"(or {d - 1} with shared endpoints omitted)"
            )
        outer.append(o)
        inner.append(i)
    # omitted inner endpoints are the neighbours' outer points
    full_inner = []
    for k in range(n):
        row = inner[k]
        if len(row) == d - 1:
            prev_outer = outer[(k - 1) % n]
            next_outer = outer[(k + 1) % n]
            row = [prev_outer[d - 1]] + row + [next_outer[1]]
        full_inner.append(row)
    return Ribbon(np.array(outer), np.array(full_inner))


def write_ribbon(r, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ribbon_to_dict(r), fh)
        fh.write("\n")


def read_ribbon(path):
    return ribbon_from_dict(_load_json(path), str(path))


def net_to_dict(net):
    return {
        "n": net.n,
        "depth": net.depth,
        "points": [
            {"label": format_label(s), "p": net.points[o].tolist()}
            for o, s in enumerate(net.index.labels)
        ],
    }


def net_from_dict(data, source="net"):
    try:
        n = int(data["n"])
        depth = int(data["depth"])
        entries = data["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"{source}: missing or invalid header field ({exc})") from None
    index = enumerate_labels(n, depth)
    mapping = {}
    for k, entry in enumerate(entries):
        try:
            s = parse_label(entry["label"])
            p = _point(entry["p"], f"{source}: point {k}")
        except (KeyError, TypeError):
            raise ParseError(f"{source}: point {k} needs 'label' and 'p'") from None
        except LabelError as exc:
            raise ParseError(f"{source}: point {k}: {exc}") from None
        if len(s) != n or sum(s) != depth:
            raise StructuralError(f"{source}: label {format_label(s)} is not in L_{{{n},{depth}}}")
        if s in mapping:
            raise StructuralError(f"{source}: duplicate label {format_label(s)}")
        mapping[s] = p
    for s in index.labels:
        if s not in mapping:
            raise StructuralError(f"{source}: missing label {format_label(s)}")
    return SPatchNet.from_dict(n, depth, mapping)


def write_net(net, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(net_to_dict(net), fh)
        fh.write("\n")


def read_net(path):
    return net_from_dict(_load_json(path), str(path))
