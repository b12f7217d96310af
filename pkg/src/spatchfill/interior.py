"""
Placement of free control points with harmonic or biharmonic masks.

A mask is a sparse integer stencil over the control-net adjacency graph.
Every free label contributes one equation ``sum_k mask[k] * P_k = 0``;
fixed labels move to the right-hand side and the resulting symmetric system
is solved once for all three coordinates.
"""

from collections import defaultdict
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import NumericalError
from .labels import neighbors
from .spatch import SPatchNet

KINDS = ("harmonic", "biharmonic")
DENSE_LIMIT = 5000
RESIDUAL_TOL = 1e-9


def harmonic_mask(s, index=None):
    """Weight 1 on each neighbor of ``s`` and minus the valence on ``s``."""
    nbrs = neighbors(s)
    mask = {t: 1 for t in nbrs}
    mask[tuple(s)] = -len(nbrs)
    return mask


def biharmonic_mask(s, index=None):
    """Harmonic mask applied to itself."""
    mask = defaultdict(int)
    for j, wj in harmonic_mask(s).items():
        for k, wk in harmonic_mask(j).items():
            mask[k] += wj * wk
    return {k: w for k, w in mask.items() if w != 0}


def mask_for(kind):
    if kind == "harmonic":
        return harmonic_mask
    if kind == "biharmonic":
        return biharmonic_mask
    raise ValueError(f"unknown mask kind {kind!r}; expected one of {KINDS}")


@dataclass
class InteriorSystem:
    kind: str
    free: np.ndarray  # ordinals of free labels, canonical order
    fixed: np.ndarray  # ordinals of fixed labels
    matrix: scipy.sparse.csr_matrix  # free x free
    coupling: scipy.sparse.csr_matrix  # free x fixed
    rhs: np.ndarray  # (len(free), 3)

    @property
    def size(self):
        return len(self.free)


def mask_matrix(index, kind):
    """Sparse |L| x |L| matrix whose row o is the mask of label o."""
    make = mask_for(kind)
    rows, cols, vals = [], [], []
    for o, s in enumerate(index.labels):
        for t, w in make(s).items():
            rows.append(o)
            cols.append(index.ordinal(t))
            vals.append(w)
    size = len(index)
    return scipy.sparse.csr_matrix(
        (np.array(vals, dtype=float), (rows, cols)), shape=(size, size)
    )


def assemble(partial, kind):
    """Linear system for the free labels of a partial net."""
    index = partial.index
    free = np.flatnonzero(~partial.fixed)
    fixed = np.flatnonzero(partial.fixed)
    full = mask_matrix(index, kind)
    rows = full[free]
    matrix = rows[:, free].tocsr()
    coupling = rows[:, fixed].tocsr()
    rhs = -(coupling @ partial.points[fixed]) if len(free) else np.zeros((0, 3))
    asym = abs(matrix - matrix.T).max() if len(free) else 0.0
    if asym != 0:
        raise NumericalError(f"mask system is not symmetric (max asymmetry {asym})")
    return InteriorSystem(kind, free, fixed, matrix, coupling, np.asarray(rhs))


def _solve(system):
    a = system.matrix
    n = system.size
    # harmonic rows are negative definite, biharmonic positive definite
    sign = -1.0 if system.kind == "harmonic" else 1.0
    if n <= DENSE_LIMIT:
        try:
            factor = scipy.linalg.cho_factor(sign * a.toarray(), lower=True, check_finite=True)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"interior system is not definite: {exc}") from None
        return scipy.linalg.cho_solve(factor, sign * system.rhs)
    out = np.empty_like(system.rhs)
    op = (sign * a).tocsr()
    for c in range(3):
        sol, info = scipy.sparse.linalg.cg(
            op, sign * system.rhs[:, c], rtol=1e-12, atol=0.0, maxiter=10 * n
        )
        if info != 0:
            raise NumericalError(f"conjugate gradient did not converge (info={info})")
        out[:, c] = sol
    return out


def residuals(system, solution):
    """Per-equation residual norms of ``solution`` (one row per free label)."""
    res = system.matrix @ solution - system.rhs
    return np.linalg.norm(res, axis=1)


def solve_interior(partial, kind="biharmonic"):
    """Place every free label of ``partial`` and return the complete net."""
    if kind not in KINDS:
        raise ValueError(f"unknown mask kind {kind!r}; expected one of {KINDS}")
    points = partial.points.copy()
    if partial.fixed.all():
        return SPatchNet(partial.n, partial.depth, points)
    system = assemble(partial, kind)
    sol = _solve(system)
    res = residuals(system, sol)
    if not np.all(np.isfinite(sol)):
        worst = int(np.argmax(~np.isfinite(sol).all(axis=1)))
        label = partial.index[system.free[worst]]
        raise NumericalError(f"non-finite interior solution, first bad row at label {label}")
    fixed_pts = partial.points[partial.fixed]
    scale = float(np.linalg.norm(fixed_pts.max(axis=0) - fixed_pts.min(axis=0))) or 1.0
    if res.max() > RESIDUAL_TOL * scale:
        worst = int(np.argmax(res))
        raise NumericalError(
            f"mask residual {res[worst] / scale:.3e} at label "
            f"{partial.index[system.free[worst]]} exceeds {RESIDUAL_TOL}"
        )
    points[system.free] = sol
    return SPatchNet(partial.n, partial.depth, points)


def mask_residuals(net, fixed, kind):
    """Residual norm of every free-label mask equation on a complete net."""
    full = mask_matrix(net.index, kind)
    free = np.flatnonzero(~np.asarray(fixed))
    return np.linalg.norm(full[free] @ net.points, axis=1)


def laplacian_energy(net):
    """Sum of squared harmonic-mask values over all labels."""
    h = mask_matrix(net.index, "harmonic")
    return float(np.sum((h @ net.points) ** 2))


def dirichlet_energy(net):
    """Half the sum of squared edge lengths of the control-net graph."""
    h = mask_matrix(net.index, "harmonic")
    return float(-0.5 * np.sum(net.points * (h @ net.points)))
