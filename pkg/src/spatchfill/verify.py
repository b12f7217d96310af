"""
Numerical continuity checks for filled patches.

Every probe goes through the public evaluation, coordinate and ribbon
functions, so a report is an independent witness of the construction.
"""

from dataclasses import asdict, dataclass, field

import numpy as np

from . import domain as dom
from .bezier import bezier_eval, degree_elevate, ribbon_boundary_frame
from .errors import SPatchError
from .fill import panel_candidates, panel_homogeneous
from .labels import boundary_label, panel
from .spatch import boundary_curve, sampled_normals

DEFAULT_OFFSETS = (1e-2, 1e-3)
DEFAULT_SAMPLES = 33


def probe_parameters(samples):
    """``samples`` uniform edge parameters, endpoints excluded by one step."""
    return np.arange(1, samples + 1) / (samples + 1)


def _scale(net, r=None):
    pts = net.points if r is None else np.concatenate([net.points, r.points()])
    return float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0))) or 1.0


def check_c0(net, r, samples=50):
    """Max distance between each boundary curve and the ribbon's outer row.

    Returns one relative deviation per side.
    """
    if net.n != r.n:
        raise SPatchError(f"net has {net.n} sides, ribbon has {r.n}")
    extra = net.depth - r.d
    if extra not in (0, 3):
        raise SPatchError(
            f"net depth {net.depth} matches neither a C0 ({r.d}) nor a G1 ({r.d + 3}) fill"
        )
    scale = r.bbox_diagonal() or 1.0
    ts = np.linspace(0.0, 1.0, samples)
    out = []
    for i in range(1, r.n + 1):
        curve = boundary_curve(net, i)
        target = degree_elevate(r.side(i)[0], extra)
        worst = max(np.linalg.norm(bezier_eval(curve, t) - bezier_eval(target, t)) for t in ts)
        out.append(float(worst) / scale)
    return out


def _angle(a, b):
    return float(np.arctan2(np.linalg.norm(np.cross(a, b)), abs(np.dot(a, b))))


@dataclass
class G1Report:
    offsets: list
    max_angle: list  # [offset][side], radians
    shrink_ratio: list  # [side], angle at last offset / angle at first offset
    degenerate_samples: int = 0


def check_g1(net, r, samples=DEFAULT_SAMPLES, offsets=DEFAULT_OFFSETS, scheme="wachspress"):
    """Angles between patch normals just inside each edge and ribbon normals.

    For each side and offset ``eps`` the patch normal is sampled at the edge
    point moved ``eps`` inward (finite-difference step ``eps / 10``) and
    compared with tangent x cross-derivative of the ribbon at the same edge
    parameter.  Orientation is ignored.
    """
    poly = dom.polygon_vertices(net.n)
    ts = probe_parameters(samples)
    max_angle = []
    degenerate = 0
    for eps in offsets:
        per_side = []
        for i in range(1, net.n + 1):
            inward = dom.inward_normal(poly, i)
            xs = np.array([dom.edge_point(poly, i, t) + eps * inward for t in ts])
            normals, ok = sampled_normals(net, xs, eps / 10, scheme)
            worst = 0.0
            for t, nrm, good in zip(ts, normals, ok):
                _, tangent, cross = ribbon_boundary_frame(r, i, t)
                frame = np.cross(tangent, cross)
                if not good or np.linalg.norm(frame) <= 1e-14 * (
                    np.linalg.norm(tangent) * np.linalg.norm(cross) + 1e-300
                ):
                    degenerate += 1
                    continue
                worst = max(worst, _angle(nrm, frame / np.linalg.norm(frame)))
            per_side.append(worst)
        max_angle.append(per_side)
    ratios = []
    for k in range(net.n):
        first, last = max_angle[0][k], max_angle[-1][k]
        ratios.append(last / first if first > 0 else 0.0)
    return G1Report(list(offsets), max_angle, ratios, degenerate)


def panel_residual(points, n):
    """Largest row residual of a least-squares affine fit to the domain polygon."""
    if n == 3:
        return 0.0  # three points always admit an exact affine fit
    x = panel_homogeneous(n)
    coef, *_ = np.linalg.lstsq(x, points, rcond=None)
    return float(np.max(np.linalg.norm(x @ coef - points, axis=1)))


def check_panels(net):
    """Affine-fit residual of every boundary panel, ``[side][panel]``, relative."""
    scale = _scale(net)
    out = []
    for i in range(1, net.n + 1):
        row = []
        for j in range(net.depth):
            pts = np.array([net[s] for s in panel(i, j, net.n, net.depth)])
            row.append(panel_residual(pts, net.n) / scale)
        out.append(row)
    return out


def corner_consistency(r):
    """Worst relative disagreement between independently computed panel points."""
    _, elevated, candidates = panel_candidates(r)
    depth = r.d + 3
    seen = {}
    for i in range(1, r.n + 1):
        for j in range(depth + 1):
            seen.setdefault(boundary_label(i, j, r.n, depth), elevated[i - 1, j])
    scale = r.bbox_diagonal() or 1.0
    worst = 0.0
    for s, p, _ in candidates:
        if s in seen:
            worst = max(worst, float(np.linalg.norm(seen[s] - p)) / scale)
        else:
            seen[s] = p
    return worst


@dataclass
class CheckReport:
    n: int
    depth: int
    continuity: str
    c0_max_deviation: list
    g1_offsets: list = field(default_factory=list)
    g1_max_angle: list = field(default_factory=list)
    g1_shrink_ratio: list = field(default_factory=list)
    g1_degenerate_samples: int = 0
    panel_residual: list = field(default_factory=list)
    corner_consistency: float = 0.0
    tolerances: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)
    passed: bool = False

    def to_dict(self):
        return asdict(self)


def run_checks(net, r, continuity="g1", samples=DEFAULT_SAMPLES, offsets=DEFAULT_OFFSETS,
               scheme="wachspress", tol=1e-9, c0_tol=1e-11, g1_tol=2e-3, c0_samples=50):
    """Full report plus pass/fail flags against the given tolerances.

    G1 passes when, on every side, the angle at the smallest offset is below
    ``g1_tol`` and smaller than at the largest offset (or already below
    ``tol``, as for planar input).
    """
    c0 = check_c0(net, r, c0_samples)
    report = CheckReport(net.n, net.depth, continuity, c0)
    report.tolerances = {"relative": tol, "c0": c0_tol, "g1_angle": g1_tol}
    flags = {"c0": bool(max(c0) <= c0_tol)}
    if continuity == "g1":
        g1 = check_g1(net, r, samples, offsets, scheme)
        report.g1_offsets = g1.offsets
        report.g1_max_angle = g1.max_angle
        report.g1_shrink_ratio = g1.shrink_ratio
        report.g1_degenerate_samples = g1.degenerate_samples
        first, last = np.array(g1.max_angle[0]), np.array(g1.max_angle[-1])
        flags["g1"] = bool(np.all((last < g1_tol) & ((last < first) | (last <= tol))))
        report.panel_residual = check_panels(net)
        flags["panels"] = bool(max(max(row) for row in report.panel_residual) <= tol)
        if net.depth == r.d + 3:
            report.corner_consistency = corner_consistency(r)
        flags["corners"] = bool(report.corner_consistency <= tol)
    report.flags = flags
    report.passed = all(flags.values())
    return report
