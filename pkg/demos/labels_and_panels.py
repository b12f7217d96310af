"""
Labels, neighbours and boundary panels
======================================

How the control points of an S-patch are indexed.
"""

from spatchfill import labels as lab

n, depth = 5, 8
index = lab.enumerate_labels(n, depth)
print(len(index), "labels; the first few:", index.labels[:4])

# classes used by the G1 construction
counts = lab.class_counts(index)
print("boundary:", counts[lab.BOUNDARY], "panel ring:", counts[lab.RING], "free:", counts[lab.FREE])

s = (3, 2, 1, 1, 1)
print(lab.format_label(s), "->", lab.classify(s))
print("neighbours:", lab.neighbors(s))

# one shift moves a unit of the label to an adjacent slot
print("shift 1 forward:", lab.shift(s, 1, "+"))

# the boundary of side 2 and one of its panels
print("side 2:", [lab.boundary_label(2, j, n, depth) for j in range(depth + 1)][:3], "...")
for k, t in enumerate(lab.panel(2, 3, n, depth), start=1):
    print("  panel element", k, lab.format_label(t))
