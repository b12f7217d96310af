"""
Seeded twist-compatible ribbons for tests and demos.

The 2D layout puts the outer rows on the edges of the regular n-gon and the
inner rows one step inward, with the four points around every corner shared
between the two sides meeting there.  A smooth random map R^2 -> R^3 then
lifts the layout, which keeps every shared point shared exactly.
"""

import numpy as np

from .bezier import Ribbon
from .domain import polygon_vertices


def ribbon_layout(n, d):
    """Planar (z = 0) twist-compatible ribbon on the regular n-gon."""
    if d < 3:
        raise ValueError(f"generated ribbons need d >= 3, got {d}")
    v = polygon_vertices(n).vertices

    def vert(k):
        return v[(k - 1) % n]

    def twist(k):
        # parallelogram point at corner k
        return vert(k) + (vert(k + 1) - vert(k)) / d + (vert(k - 1) - vert(k)) / d

    outer = np.zeros((n, d + 1, 2))
    inner = np.zeros((n, d + 1, 2))
    for i in range(1, n + 1):
        a, b = vert(i), vert(i + 1)
        t = np.arange(d + 1)[:, None] / d
        outer[i - 1] = (1 - t) * a + t * b
        # inward step interpolated between the two corner directions
        start = (vert(i - 1) - a) / d
        end = (vert(i + 2) - b) / d
        row = outer[i - 1] + (1 - t) * start + t * end
        row[1] = twist(i)
        row[d - 1] = twist(i + 1)
        inner[i - 1] = row
    # shared slots copied, not recomputed, so the identities hold bit for bit
    for k in range(n):
        inner[k, 0] = outer[k - 1, d - 1]
        inner[k, d] = outer[(k + 1) % n, 1]
    return outer, inner


class SmoothMap:
    """Random smooth map (x, y) -> (x', y', z) built from a few sinusoids."""

    def __init__(self, rng, amplitude=0.2, warp=0.05, terms=4, frequency=0.8):
        self.freq = rng.normal(0.0, frequency, size=(3, terms, 2))
        self.phase = rng.uniform(0, 2 * np.pi, size=(3, terms))
        self.coef = rng.normal(0.0, 1.0, size=(3, terms)) / np.sqrt(terms)
        self.quad = rng.normal(0.0, 1.0, size=3)
        self.amplitude = amplitude
        self.warp = warp

    def _field(self, c, xy):
        arg = xy @ self.freq[c].T + self.phase[c]
        return np.sin(arg) @ self.coef[c]

    def __call__(self, xy):
        xy = np.asarray(xy, dtype=float)
        x, y = xy[..., 0], xy[..., 1]
        q = self.quad
        z = self.amplitude * (
            self._field(2, xy) + 0.5 * (q[0] * x * x + q[1] * x * y + q[2] * y * y)
        )
        return np.stack([
            x + self.warp * self._field(0, xy),
            y + self.warp * self._field(1, xy),
            z,
        ], axis=-1)


def random_ribbon(n, d, seed=0, amplitude=0.2, warp=0.05, frequency=0.8):
    """Twist-compatible ribbon lifted by a seeded smooth height field."""
    rng = np.random.default_rng(seed)
    outer, inner = ribbon_layout(n, d)
    lift = SmoothMap(rng, amplitude=amplitude, warp=warp, frequency=frequency)
    return Ribbon(lift(outer), lift(inner))


def planar_ribbon(n, d):
    outer, inner = ribbon_layout(n, d)
    pad = np.zeros(outer.shape[:-1] + (1,))
    return Ribbon(np.concatenate([outer, pad], -1), np.concatenate([inner, pad], -1))
