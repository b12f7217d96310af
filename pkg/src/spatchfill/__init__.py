"""G1 hole filling with S-patches.

Typical use::

    from spatchfill import random_ribbon, fill_g1, mesh_patch

    ribbon = random_ribbon(5, 5, seed=1)
    net = fill_g1(ribbon)
    mesh = mesh_patch(net, resolution=16)
"""

from .bezier import Ribbon, degree_elevate, validate_ribbon
from .domain import barycentric, polygon_vertices
from .fill import fill_c0, fill_g1, g1_panels
from .generate import planar_ribbon, random_ribbon
from .interior import solve_interior
from .labels import enumerate_labels
from .meshio import mesh_patch, read_net, read_ribbon, write_net, write_obj, write_ribbon
from .spatch import SPatchNet, eval_at_domain_point, evaluate
from .verify import run_checks

__version__ = "0.1.0"
