"""
Bezier curves, ribbons (Sabin nets) and the Bezier-triangle oracle.

Sides and positions in public functions are 1-based like the rest of the
package; ``Ribbon.outer[i - 1, j]`` is the j-th boundary control point of
side i.
"""

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import MalformedRibbonError, ParameterRangeError, SPatchError

TWIST_TOL = 1e-9


def _check_t(t):
    if not 0.0 <= t <= 1.0:
        raise ParameterRangeError(f"curve parameter {t} outside [0, 1]")


def bezier_eval(ctrl, t):
    """Evaluate a Bezier curve by de Casteljau's algorithm."""
    _check_t(t)
    pts = np.array(ctrl, dtype=float)
    if len(pts) < 2:
        raise SPatchError("a Bezier curve needs at least 2 control points")
    for r in range(len(pts) - 1, 0, -1):
        pts = (1.0 - t) * pts[:r] + t * pts[1:r + 1]
    return pts[0]


def bezier_derivative(ctrl, t):
    ctrl = np.asarray(ctrl, dtype=float)
    d = len(ctrl) - 1
    diff = d * np.diff(ctrl, axis=0)
    if d == 1:
        _check_t(t)
        return diff[0]
    return bezier_eval(diff, t)


def bernstein(d, j, t):
    return comb(d, j) * t ** j * (1.0 - t) ** (d - j)


def degree_elevate(ctrl, times=1):
    """Raise the degree of a Bezier curve ``times`` times."""
    if times < 0:
        raise ValueError("elevation count must be non-negative")
    pts = np.array(ctrl, dtype=float)
    for _ in range(times):
        d = len(pts) - 1
        a = np.arange(1, d + 1)[:, None] / (d + 1)
        inner = a * pts[:-1] + (1.0 - a) * pts[1:]
        pts = np.concatenate([pts[:1], inner, pts[-1:]])
    return pts


@dataclass
class Ribbon:
    """Boundary curves plus cross-derivative rows around an n-sided hole.

    ``outer`` and ``inner`` have shape (n, d+1, 3).  Side i runs from the
    corner shared with side i-1 to the corner shared with side i+1.
    """

    outer: np.ndarray
    inner: np.ndarray

    def __post_init__(self):
        self.outer = np.array(self.outer, dtype=float)
        self.inner = np.array(self.inner, dtype=float)
        if self.outer.ndim != 3 or self.outer.shape[2] != 3:
            raise MalformedRibbonError(f"outer rows have shape {self.outer.shape}")
        if self.inner.shape != self.outer.shape:
            raise MalformedRibbonError(
                f"inner rows {self.inner.shape} do not match outer rows {self.outer.shape}"
            )
        if self.outer.shape[0] < 3:
            raise MalformedRibbonError(f"a ribbon needs n >= 3 sides, got {self.outer.shape[0]}")
        if self.outer.shape[1] < 2:
            raise MalformedRibbonError("ribbon rows need at least 2 points (d >= 1)")

    @property
    def n(self):
        return self.outer.shape[0]

    @property
    def d(self):
        return self.outer.shape[1] - 1

    def side(self, i):
        """(outer, inner) rows of side i (1-based, cyclic)."""
        k = (i - 1) % self.n
        return self.outer[k], self.inner[k]

    def points(self):
        return np.concatenate([self.outer.reshape(-1, 3), self.inner.reshape(-1, 3)])

    def bbox_diagonal(self):
        p = self.points()
        return float(np.linalg.norm(p.max(axis=0) - p.min(axis=0)))

    def transformed(self, matrix, offset=(0.0, 0.0, 0.0)):
        m = np.asarray(matrix, dtype=float)
        b = np.asarray(offset, dtype=float)
        return Ribbon(self.outer @ m.T + b, self.inner @ m.T + b)

    def copy(self):
        return Ribbon(self.outer.copy(), self.inner.copy())

    @classmethod
    def from_sides(cls, sides):
        """Build from ``[(outer_row, inner_row), ...]`` with structural checks."""
        if len(sides) < 3:
            raise MalformedRibbonError(f"a ribbon needs n >= 3 sides, got {len(sides)}")
        d = len(sides[0][0]) - 1
        for k, (outer, inner) in enumerate(sides, start=1):
            if len(outer) != d + 1:
                raise MalformedRibbonError(
                    f"side {k}: outer row has {len(outer)} points, expected {d + 1}"
                )
            if len(inner) != d + 1:
                raise MalformedRibbonError(
                    f"side {k}: inner row has {len(inner)} points, expected {d + 1}"
                )
        return cls([s[0] for s in sides], [s[1] for s in sides])


# (name, side-i key, side-(i-1) key) with keys (row, j) given d
def _identities(d):
    return [
        ("loop_closure", ("outer", 0), ("outer", d)),
        ("twist_outer", ("outer", 1), ("inner", d)),
        ("twist_inner", ("inner", 0), ("outer", d - 1)),
        ("twist_corner", ("inner", 1), ("inner", d - 1)),
    ]


def shared_pairs(n, d):
    """Every pair of ribbon slots that twist compatibility identifies.

    Slots are ``(side, j, row)`` with 1-based side and row 0 (outer) or
    1 (inner).  Yields ``(identity_name, side, slot_a, slot_b)``.
    """
    row = {"outer": 0, "inner": 1}
    for name, (ra, ja), (rb, jb) in _identities(d):
        for i in range(1, n + 1):
            prev = n if i == 1 else i - 1
            yield name, i, (i, ja, row[ra]), (prev, jb, row[rb])


def _slot(r, slot):
    side, j, row = slot
    rows = r.outer if row == 0 else r.inner
    return rows[side - 1, j]


@dataclass
class RibbonReport:
    passed: bool
    tolerance: float
    deviations: dict
    violations: list = field(default_factory=list)
    distinct_points: int = 0
    ribbon: Ribbon = None

    def to_dict(self):
        return {
            "passed": self.passed,
            "tolerance": self.tolerance,
            "deviations": self.deviations,
            "violations": self.violations,
            "distinct_points": self.distinct_points,
        }


def validate_ribbon(r, tol=TWIST_TOL):
    """Check loop closure and twist compatibility of a ribbon.

    Deviations are relative to the bounding-box diagonal.  On success the
    returned report carries a snapped copy in which every shared slot holds
    the value of its lexicographically smallest ``(side, j, row)`` copy.
    """
    if not isinstance(r, Ribbon):
        raise MalformedRibbonError("expected a Ribbon")
    n, d = r.n, r.d
    scale = r.bbox_diagonal() or 1.0
    deviations = {name: 0.0 for name, *_ in _identities(d)}
    violations = []
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for name, side, a, b in shared_pairs(n, d):
        dev = float(np.linalg.norm(_slot(r, a) - _slot(r, b))) / scale
        deviations[name] = max(deviations[name], dev)
        if dev > tol:
            violations.append(
                {"identity": name, "side": side, "other_side": b[0], "deviation": dev}
            )
        ra, rb = find(a), find(b)
        if ra != rb:
            lo, hi = min(ra, rb), max(ra, rb)
            parent[hi] = lo

    all_slots = [(i, j, row) for i in range(1, n + 1) for j in range(d + 1) for row in (0, 1)]
    distinct = len({find(s) for s in all_slots})
    passed = not violations
    snapped = None
    if passed:
        snapped = r.copy()
        for s in all_slots:
            root = find(s)
            if root != s:
                side, j, row = s
                rows = snapped.outer if row == 0 else snapped.inner
                rows[side - 1, j] = _slot(r, root)
    return RibbonReport(passed, tol, deviations, violations, distinct, snapped)


def ribbon_boundary_frame(r, i, t):
    """Point, boundary tangent and cross-derivative of side i at ``t``.

    The cross-derivative is the v-partial at v = 0 of the degree d x d
    tensor-product patch sharing side i's two rows.
    """
    _check_t(t)
    outer, inner = r.side(i)
    d = r.d
    point = bezier_eval(outer, t)
    tangent = bezier_derivative(outer, t)
    cross = d * bezier_eval(inner - outer, t)
    return point, tangent, cross


def ribbon_normal(r, i, t):
    _, tangent, cross = ribbon_boundary_frame(r, i, t)
    return np.cross(tangent, cross)


def bezier_triangle_eval(net, bary):
    """Triangular de Casteljau evaluation.

    ``net`` maps label triples of depth d to 3D points; ``bary`` are the
    three barycentric coordinates.
    """
    u = np.asarray(bary, dtype=float)
    if u.shape != (3,) or np.any(u < -1e-12) or abs(u.sum() - 1.0) > 1e-9:
        raise SPatchError(f"invalid triangle barycentric coordinates {bary}")
    d = sum(next(iter(net)))
    level = {tuple(k): np.asarray(v, dtype=float) for k, v in net.items()}
    for r in range(d, 0, -1):
        nxt = {}
        for a in range(r):
            for b in range(r - a):
                c = r - 1 - a - b
                nxt[(a, b, c)] = (
                    u[0] * level[(a + 1, b, c)]
                    + u[1] * level[(a, b + 1, c)]
                    + u[2] * level[(a, b, c + 1)]
                )
        level = nxt
    return level[(0, 0, 0)]
