"""
C0 versus G1
============

Both fills reproduce the boundary; only the G1 fill matches the ribbon's
tangent planes.  Normal deviations shrink tenfold per decade of offset for
G1 and stay put for C0.
"""

from spatchfill import fill_g1, random_ribbon, verify
from spatchfill.fill import fill

r = random_ribbon(6, 3, seed=4)
offsets = (1e-1, 1e-2, 1e-3, 1e-4)

for name, net in (("c0", fill(r, "c0")), ("g1", fill_g1(r))):
    print(name, "boundary deviation: %.1e" % max(verify.check_c0(net, r)))
    rep = verify.check_g1(net, r, offsets=offsets)
    for eps, row in zip(offsets, rep.max_angle):
        print("   offset %.0e  max angle %.2e rad" % (eps, max(row)))

# corner panels are computed from two sides and must agree
print("corner consistency: %.1e" % verify.corner_consistency(r))
