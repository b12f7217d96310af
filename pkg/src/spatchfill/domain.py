"""
Regular n-gon parameter domain and generalized barycentric coordinates.

Vertex ``k`` (1-based) sits at angle ``2*k*pi/n`` on the unit circle, so
vertex ``n`` is ``(1, 0)``.  Arrays returned here are 0-based: row ``k - 1``
holds vertex ``k``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import InvalidPolygonError, OutOfDomainError, ParameterRangeError

INSIDE_TOL = 1e-12
SNAP_TOL = 1e-12

SCHEMES = ("wachspress", "meanvalue")


@dataclass(frozen=True)
class DomainPolygon:
    n: int
    vertices: np.ndarray  # (n, 2)

    def vertex(self, k):
        """Vertex ``k`` with cyclic 1-based indexing."""
        return self.vertices[(k - 1) % self.n]

    @property
    def apothem(self):
        return np.cos(np.pi / self.n)


def polygon_vertices(n):
    """Return the regular n-gon domain inscribed in the unit circle."""
    if int(n) != n or n < 3:
        raise InvalidPolygonError(f"a domain polygon needs n >= 3 sides, got {n}")
    n = int(n)
    angles = 2.0 * np.pi * np.arange(1, n + 1) / n
    verts = np.column_stack([np.cos(angles), np.sin(angles)])
    # exact values where trig rounding would leave noise
    verts[np.abs(verts) < 1e-15] = 0.0
    verts[n - 1] = (1.0, 0.0)
    verts.setflags(write=False)
    return DomainPolygon(n, verts)


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def edge_areas(domain, x):
    """Signed double areas of the triangles (x, v_k, v_{k+1}), one per edge.

    Works on a single point ``(2,)`` or a batch ``(m, 2)``; the edge axis is
    last.  Non-negative for points inside the polygon.
    """
    x = np.asarray(x, dtype=float)
    v = domain.vertices
    w = np.roll(v, -1, axis=0)
    a = v - x[..., None, :]
    b = w - x[..., None, :]
    return _cross(a, b)


def boundary_distance(domain, x):
    """Signed distance to the boundary (positive inside)."""
    v = domain.vertices
    edge_len = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    return np.min(edge_areas(domain, x) / edge_len, axis=-1)


def is_inside(domain, x, tol=INSIDE_TOL):
    return bool(np.all(edge_areas(domain, x) >= -tol))


def on_boundary(domain, x, tol=INSIDE_TOL):
    return is_inside(domain, x, tol) and abs(boundary_distance(domain, x)) <= tol


def snap_to_boundary(domain, x, tol=SNAP_TOL):
    """Project ``x`` onto the nearest edge when it lies within ``tol`` of it."""
    x = np.asarray(x, dtype=float)
    n = domain.n
    best = None
    for k in range(n):
        a = domain.vertices[k]
        b = domain.vertices[(k + 1) % n]
        ab = b - a
        t = np.clip(np.dot(x - a, ab) / np.dot(ab, ab), 0.0, 1.0)
        p = (1.0 - t) * a + t * b
        dist = np.linalg.norm(x - p)
        if dist <= tol and (best is None or dist < best[0]):
            best = (dist, p)
    return x.copy() if best is None else best[1]


def edge_point(domain, i, t):
    """Point at parameter ``t`` on edge ``i`` running from v_i to v_{i+1}."""
    if not 1 <= i <= domain.n:
        raise ParameterRangeError(f"side index {i} outside 1..{domain.n}")
    if not 0.0 <= t <= 1.0:
        raise ParameterRangeError(f"edge parameter {t} outside [0, 1]")
    return (1.0 - t) * domain.vertex(i) + t * domain.vertex(i + 1)


def inward_normal(domain, i):
    """Unit normal of edge ``i`` pointing into the polygon."""
    d = domain.vertex(i + 1) - domain.vertex(i)
    nrm = np.array([-d[1], d[0]])
    return nrm / np.linalg.norm(nrm)


def _wachspress(domain, x):
    n = domain.n
    areas = edge_areas(domain, x)  # (..., n), edge k joins v_k and v_{k+1}
    v = domain.vertices
    corner = _cross(np.roll(v, 1, axis=0) - v, np.roll(v, -1, axis=0) - v)
    corner = -corner  # (v_{k-1}, v_k, v_{k+1}) is counter-clockwise
    w = np.empty_like(areas)
    for k in range(n):
        # edges k-1 and k touch vertex k
        others = [e for e in range(n) if e not in (k, (k - 1) % n)]
        w[..., k] = corner[k] * np.prod(areas[..., others], axis=-1)
    return w / np.sum(w, axis=-1, keepdims=True)


def _mean_value_single(domain, x):
    n = domain.n
    d = domain.vertices - x
    r = np.linalg.norm(d, axis=1)
    lam = np.zeros(n)
    k = int(np.argmin(r))
    if r[k] <= SNAP_TOL:
        lam[k] = 1.0
        return lam
    dn = np.roll(d, -1, axis=0)
    rn = np.roll(r, -1)
    area = _cross(d, dn)
    dot = np.sum(d * dn, axis=1)
    for e in range(n):
        if abs(area[e]) <= INSIDE_TOL and dot[e] < 0:
            # on edge e: linear interpolation between its endpoints
            t = r[e] / (r[e] + rn[e])
            lam[e] = 1.0 - t
            lam[(e + 1) % n] = t
            return lam
    tan_half = (r * rn - dot) / area  # tan(alpha_e / 2)
    w = (np.roll(tan_half, 1) + tan_half) / r
    return w / np.sum(w)


def barycentric(domain, x, scheme="wachspress"):
    """Generalized barycentric coordinates of ``x`` in the domain polygon.

    Parameters
    ----------
    domain : DomainPolygon
    x : array_like, shape (2,) or (m, 2)
        Point(s) inside or on the boundary of the polygon.
    scheme : {'wachspress', 'meanvalue'}

    Returns
    -------
    ndarray, shape (n,) or (m, n)
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown coordinate scheme {scheme!r}")
    x = np.asarray(x, dtype=float)
    areas = edge_areas(domain, x)
    if np.any(areas < -INSIDE_TOL):
        raise OutOfDomainError(f"point(s) outside the domain polygon: {x.tolist()}")
    if scheme == "wachspress":
        return _wachspress(domain, x)
    if x.ndim == 1:
        return _mean_value_single(domain, x)
    return np.array([_mean_value_single(domain, p) for p in x])


def domain_point(domain, lam):
    """Inverse map: the point with coordinates ``lam`` (linear precision)."""
    return np.asarray(lam) @ domain.vertices
