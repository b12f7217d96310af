"""
Harmonic and biharmonic interiors
=================================

The free control points come from a sparse symmetric system; the two
masks give different interiors for the same fixed panels.
"""

import numpy as np

from spatchfill import interior as it
from spatchfill.fill import g1_panels
from spatchfill.generate import random_ribbon

print("harmonic mask at (2,1,1):", it.harmonic_mask((2, 1, 1)))
print("biharmonic centre weight at (3,3,3):", it.biharmonic_mask((3, 3, 3))[(3, 3, 3)])

partial = g1_panels(random_ribbon(5, 5, seed=1))
system = it.assemble(partial, "biharmonic")
print("free labels:", system.size, "nonzeros:", system.matrix.nnz)

a = it.solve_interior(partial, "harmonic")
b = it.solve_interior(partial, "biharmonic")
print("max difference between interiors: %.3f" % np.abs(a.points - b.points).max())
print("laplacian energy  harmonic %.3f  biharmonic %.3f"
      % (it.laplacian_energy(a), it.laplacian_energy(b)))
