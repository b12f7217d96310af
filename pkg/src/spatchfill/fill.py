"""
Building S-patch control nets from ribbons.

The G1 construction raises the depth to d + 3: boundary labels take the
three-times elevated boundary curves, one extra point per boundary panel
comes from a closed formula in the original ribbon points, and the rest of
each panel follows by requiring the panel to be an affine image of the
domain polygon.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .bezier import degree_elevate, validate_ribbon
from .errors import InconsistentPanelError, MalformedRibbonError, NumericalError
from .labels import boundary_label, enumerate_labels, is_fixed_g1, panel
from .spatch import SPatchNet

CORNER_TOL = 1e-9


@dataclass
class PartialNet:
    """Net with a fixed part and a set of free labels still to be placed.

    ``points`` rows of free labels hold NaN.
    """

    n: int
    depth: int
    points: np.ndarray
    fixed: np.ndarray  # bool, per canonical ordinal
    corner_deviation: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def index(self):
        return enumerate_labels(self.n, self.depth)

    @property
    def free_labels(self):
        return [s for s, f in zip(self.index.labels, self.fixed) if not f]

    @property
    def fixed_labels(self):
        return [s for s, f in zip(self.index.labels, self.fixed) if f]

    def fixed_points(self):
        return {s: self.points[o] for o, s in enumerate(self.index.labels) if self.fixed[o]}

    def to_net(self):
        if not self.fixed.all():
            raise NumericalError(f"{int((~self.fixed).sum())} labels are still free")
        return SPatchNet(self.n, self.depth, self.points)


def _validated(r, tol):
    report = validate_ribbon(r, tol)
    if not report.passed:
        v = report.violations[0]
        raise MalformedRibbonError(
            f"ribbon is not twist-compatible: {v['identity']} between sides "
            f"{v['other_side']} and {v['side']} deviates by {v['deviation']:.3e}"
        )
    return report.ribbon


def fill_c0(r, tol=1e-9):
    """Fix only the boundary labels: P_{j,1}^i = C_{j,0}^i."""
    r = _validated(r, tol)
    n, d = r.n, r.d
    index = enumerate_labels(n, d)
    points = np.full((len(index), 3), np.nan)
    fixed = np.zeros(len(index), dtype=bool)
    for i in range(1, n + 1):
        outer, _ = r.side(i)
        for j in range(d + 1):
            o = index.ordinal(boundary_label(i, j, n, d))
            if not fixed[o]:
                points[o] = outer[j]
                fixed[o] = True
    return PartialNet(n, d, points, fixed)


def _gate(lo, hi, j):
    return lo <= j <= hi


def panel_extra_point(r, i, j, boundary_point=None):
    """P_{j,n}^i, the panel point preceding s_{i,j} in the panel cycle.

    ``j`` runs over 0 .. d+2.  Uses the original degree-d rows of side i;
    ``boundary_point`` is P_{j,1}^i on the elevated boundary (computed when
    not given).
    """
    n, d = r.n, r.d
    if not 0 <= j <= d + 2:
        raise ValueError(f"panel index {j} outside 0..{d + 2}")
    outer, inner = r.side(i)
    if boundary_point is None:
        boundary_point = degree_elevate(outer, 3)[j]
    c = -np.cos(2.0 * np.pi / n)
    acc = np.zeros(3)
    if _gate(1, d, j):
        acc += (outer[j] - outer[j - 1]) * 2 * c * comb(d - 1, j - 1)
    if _gate(2, d + 1, j):
        acc += (outer[j - 1] - outer[j - 2]) * 4 * c * comb(d - 1, j - 2)
    if _gate(3, d + 2, j):
        acc += (outer[j - 2] - outer[j - 3]) * 2 * c * comb(d - 1, j - 3)
    if _gate(0, d, j):
        acc += (inner[j] - outer[j]) * comb(d, j)
    if _gate(1, d + 1, j):
        acc += (inner[j - 1] - outer[j - 1]) * (2 + 2 * c) * comb(d, j - 1)
    if _gate(2, d + 2, j):
        acc += (inner[j - 2] - outer[j - 2]) * comb(d, j - 2)
    return boundary_point + d / (d + 3) * acc / comb(d + 2, j)


def _solve3(a, b):
    # Gaussian elimination with partial pivoting on a 3x3 system
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    m = len(a)
    for col in range(m):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[piv, col]) < 1e-14:
            raise NumericalError("singular affine panel system")
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            b[[col, piv]] = b[[piv, col]]
        for row in range(col + 1, m):
            f = a[row, col] / a[col, col]
            a[row, col:] -= f * a[col, col:]
            b[row] -= f * b[col]
    x = np.zeros_like(b)
    for row in range(m - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1:] @ x[row + 1:]) / a[row, row]
    return x


def panel_homogeneous(n):
    """Rows (cos 2k pi/n, sin 2k pi/n, 1) for panel elements k = 1..n."""
    ang = 2.0 * np.pi * np.arange(1, n + 1) / n
    return np.column_stack([np.cos(ang), np.sin(ang), np.ones(n)])


def panel_frame(p_last, p_first, p_second, n):
    """3x3 matrix M with M @ (cos, sin, 1) reproducing the three panel points."""
    ang = 2.0 * np.pi / n
    a = np.array([
        [1.0, 0.0, 1.0],
        [np.cos(ang), np.sin(ang), 1.0],
        [np.cos(2 * ang), np.sin(2 * ang), 1.0],
    ])
    rhs = np.array([p_last, p_first, p_second], dtype=float)
    return _solve3(a, rhs).T


def affine_complete(p_last, p_first, p_second, n):
    """Panel elements 3..n-1 from elements n, 1 and 2."""
    if n <= 3:
        return np.zeros((0, 3))
    m = panel_frame(p_last, p_first, p_second, n)
    return panel_homogeneous(n)[2:n - 1] @ m.T


def panel_candidates(r):
    """Every independently computed panel point of the G1 construction.

    Returns ``(depth, elevated, candidates)`` where ``elevated[i-1]`` is side
    i's elevated boundary row and ``candidates`` is a list of
    ``(label, point, side)`` in side/panel/element order.
    """
    n, d = r.n, r.d
    depth = d + 3
    elevated = np.array([degree_elevate(r.side(i)[0], 3) for i in range(1, n + 1)])
    out = []
    for i in range(1, n + 1):
        row = elevated[i - 1]
        for j in range(depth):
            labels = panel(i, j, n, depth)
            first, second = row[j], row[j + 1]
            last = panel_extra_point(r, i, j, first)
            out.append((labels[0], first, i))
            out.append((labels[1], second, i))
            out.append((labels[-1], last, i))
            rest = affine_complete(last, first, second, n)
            for k, p in enumerate(rest, start=2):
                out.append((labels[k], p, i))
    return depth, elevated, out


def g1_panels(r, tol=1e-9, corner_tol=CORNER_TOL):
    """Fix every boundary-panel label for a G1 fill of depth d + 3.

    Labels reached from more than one side (near the corners) are computed
    independently by each; the values must agree within ``corner_tol``
    relative to the ribbon's bounding box.  The first computation in side
    order is kept, except that boundary labels always keep the elevated
    boundary value.
    """
    r = _validated(r, tol)
    n = r.n
    depth, elevated, candidates = panel_candidates(r)
    index = enumerate_labels(n, depth)
    scale = r.bbox_diagonal() or 1.0
    points = np.full((len(index), 3), np.nan)
    fixed = np.zeros(len(index), dtype=bool)
    for i in range(1, n + 1):
        for j in range(depth + 1):
            o = index.ordinal(boundary_label(i, j, n, depth))
            if not fixed[o]:
                points[o] = elevated[i - 1, j]
                fixed[o] = True
    worst = 0.0
    for s, p, _side in candidates:
        o = index.ordinal(s)
        if fixed[o]:
            dev = float(np.linalg.norm(points[o] - p)) / scale
            worst = max(worst, dev)
            if dev > corner_tol:
                raise InconsistentPanelError(s, points[o], p, dev)
        else:
            points[o] = p
            fixed[o] = True
    expected = np.array([is_fixed_g1(s, depth) for s in index.labels])
    if not np.array_equal(fixed, expected):
        raise NumericalError("panel construction did not cover the panel label set")
    return PartialNet(n, depth, points, fixed, corner_deviation=worst)


def fill_g1(r, mask_kind="biharmonic", tol=1e-9):
    """Complete G1 S-patch of depth d + 3 for a twist-compatible ribbon."""
    from .interior import solve_interior

    return solve_interior(g1_panels(r, tol), mask_kind)


def fill(r, continuity="g1", mask_kind=None, tol=1e-9):
    """Convenience front end; harmonic masks for C0, biharmonic for G1 by default."""
    from .interior import solve_interior

    if continuity == "g1":
        return solve_interior(g1_panels(r, tol), mask_kind or "biharmonic")
    if continuity == "c0":
        return solve_interior(fill_c0(r, tol), mask_kind or "harmonic")
    raise ValueError(f"unknown continuity {continuity!r}")

