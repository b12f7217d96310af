"""
Filling a five-sided hole
=========================

A seeded quintic ribbon around a pentagonal hole, filled with a G1
S-patch and written out as a mesh.
"""

import numpy as np

from spatchfill import (eval_at_domain_point, fill_g1, mesh_patch, random_ribbon,
                        run_checks, write_obj)

# ribbon: an outer row (the boundary curve) and an inner row per side
r = random_ribbon(5, 5, seed=1)
print("sides:", r.n, "degree:", r.d, "bbox diagonal: %.3f" % r.bbox_diagonal())

# the G1 fill raises the depth by three
net = fill_g1(r)
print("depth:", net.depth, "control points:", len(net.points))

# surface at the centre of the domain
print("centre point:", eval_at_domain_point(net, np.zeros(2)))

report = run_checks(net, r)
print("flags:", report.flags)
print("max normal angle per offset (rad):",
      [float("%.2e" % max(row)) for row in report.g1_max_angle])

mesh = mesh_patch(net, resolution=16)
write_obj(mesh, "pentagon.obj")
print(len(mesh.vertices), "vertices,", len(mesh.triangles), "triangles -> pentagon.obj")
