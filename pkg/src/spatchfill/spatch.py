"""S-patch control nets and their evaluation."""

from dataclasses import dataclass
from math import factorial

import numpy as np

from . import domain as dom
from .errors import DegenerateNormalError, SPatchError, StructuralError
from .labels import boundary_label, enumerate_labels

DEGENERATE_NORMAL = 1e-14


def multinomial(s):
    """d! / prod(s_i!) computed exactly."""
    out = factorial(sum(s))
    for v in s:
        out //= factorial(v)
    return out


def _coefficients(index):
    return np.array([float(multinomial(s)) for s in index.labels])


def basis(s, lam):
    """Multinomial Bernstein function B_s(lam), with 0**0 == 1."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape[-1] != len(s):
        raise SPatchError(f"label of length {len(s)} vs {lam.shape[-1]} coordinates")
    return float(multinomial(s)) * np.prod(lam ** np.asarray(s), axis=-1)


def basis_matrix(index, lam):
    """All basis functions at every coordinate row: shape (m, |L|)."""
    lam = np.atleast_2d(np.asarray(lam, dtype=float))
    exps = index.array
    # powers[m, k, e] = lam[m, k] ** e for e = 0..d
    powers = lam[:, :, None] ** np.arange(index.d + 1)[None, None, :]
    out = np.ones((lam.shape[0], len(index)))
    for k in range(index.n):
        out *= powers[:, k, exps[:, k]]
    return out * _coefficients(index)[None, :]


@dataclass
class SPatchNet:
    """Complete control net of an n-sided S-patch of the given depth.

    ``points[o]`` is the control point of label ``index[o]``.
    """

    n: int
    depth: int
    points: np.ndarray

    def __post_init__(self):
        self.points = np.array(self.points, dtype=float)
        if self.n < 3 or self.depth < 1:
            raise StructuralError(f"invalid net header n={self.n}, depth={self.depth}")
        expected = len(self.index)
        if self.points.shape != (expected, 3):
            raise StructuralError(
                f"net with n={self.n}, depth={self.depth} needs {expected} points, "
                f"got array of shape {self.points.shape}"
            )

    @property
    def index(self):
        return enumerate_labels(self.n, self.depth)

    @property
    def domain(self):
        return dom.polygon_vertices(self.n)

    def __getitem__(self, s):
        return self.points[self.index.ordinal(s)]

    def as_dict(self):
        return {s: self.points[o] for o, s in enumerate(self.index.labels)}

    @classmethod
    def from_dict(cls, n, depth, mapping):
        index = enumerate_labels(n, depth)
        missing = [s for s in index.labels if s not in mapping]
        if missing:
            raise StructuralError(f"net is missing label {missing[0]}")
        extra = [s for s in mapping if s not in index]
        if extra:
            raise StructuralError(f"label {extra[0]} does not belong to L_{{{n},{depth}}}")
        return cls(n, depth, [mapping[s] for s in index.labels])

    def bbox_diagonal(self):
        return float(np.linalg.norm(self.points.max(axis=0) - self.points.min(axis=0)))

    def transformed(self, matrix, offset=(0.0, 0.0, 0.0)):
        m = np.asarray(matrix, dtype=float)
        return SPatchNet(self.n, self.depth, self.points @ m.T + np.asarray(offset, dtype=float))


def evaluate(net, lam):
    """Surface point(s) for barycentric coordinates ``lam`` of shape (n,) or (m, n)."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape[-1] != net.n:
        raise SPatchError(f"{lam.shape[-1]} coordinates for an {net.n}-sided patch")
    single = lam.ndim == 1
    out = basis_matrix(net.index, lam) @ net.points
    return out[0] if single else out


def eval_at_domain_point(net, x, scheme="wachspress"):
    """Surface point(s) above domain point(s) ``x``."""
    poly = net.domain
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = dom.snap_to_boundary(poly, x)
    return evaluate(net, dom.barycentric(poly, x, scheme))


def boundary_curve(net, i):
    """Control polygon of the net along side i: labels s_{i,0} .. s_{i,D}."""
    return np.array(
        [net[boundary_label(i, j, net.n, net.depth)] for j in range(net.depth + 1)]
    )


def partials(net, x, h, scheme="wachspress"):
    """Central-difference partials along the two domain axes."""
    x = np.asarray(x, dtype=float)
    ex = np.array([h, 0.0])
    ey = np.array([0.0, h])
    pts = eval_at_domain_point(net, np.array([x + ex, x - ex, x + ey, x - ey]), scheme)
    return (pts[0] - pts[1]) / (2 * h), (pts[2] - pts[3]) / (2 * h)


def sampled_normal(net, x, h=1e-5, scheme="wachspress"):
    """Unit surface normal at an interior domain point by finite differences."""
    du, dv = partials(net, x, h, scheme)
    nrm = np.cross(du, dv)
    length = np.linalg.norm(nrm)
    scale = np.linalg.norm(du) * np.linalg.norm(dv)
    if not np.isfinite(length) or length <= DEGENERATE_NORMAL * max(scale, 1e-300):
        raise DegenerateNormalError(f"degenerate normal at domain point {x.tolist()}")
    return nrm / length


def sampled_normals(net, xs, h=1e-5, scheme="wachspress"):
    """Vectorised :func:`sampled_normal`; degenerate rows come back as zeros."""
    xs = np.asarray(xs, dtype=float)
    m = len(xs)
    ex = np.array([h, 0.0])
    ey = np.array([0.0, h])
    probe = np.concatenate([xs + ex, xs - ex, xs + ey, xs - ey])
    pts = eval_at_domain_point(net, probe, scheme).reshape(4, m, 3)
    du = (pts[0] - pts[1]) / (2 * h)
    dv = (pts[2] - pts[3]) / (2 * h)
    nrm = np.cross(du, dv)
    length = np.linalg.norm(nrm, axis=1)
    scale = np.linalg.norm(du, axis=1) * np.linalg.norm(dv, axis=1)
    ok = np.isfinite(length) & (length > DEGENERATE_NORMAL * np.maximum(scale, 1e-300))
    out = np.zeros_like(nrm)
    out[ok] = nrm[ok] / length[ok, None]
    return out, ok
