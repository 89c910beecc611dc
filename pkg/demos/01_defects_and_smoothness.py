"""
Defects of marked quiver settings
=================================

Walk through the three local settings of the order-two quantum plane and
check where its representation scheme is smooth.
"""

from qsing import MarkedQuiverSetting, defect, expected_dim, is_smooth_setting

# Over a generic central point the local data is a single vertex of
# dimension 1 carrying two loops: a smooth point of a 2-dimensional center.
azumaya = MarkedQuiverSetting.make([1], [[2]])
print("azumaya point   defect =", defect(azumaya, 2))

# Over a ramified point two one-dimensional simples appear: a loop on one
# vertex and single arrows both ways.
ramified = MarkedQuiverSetting.make([1, 1], [[1, 1], [1, 0]])
print("ramified point  defect =", defect(ramified, 2))

# Over the origin both trace conditions bite: one vertex of dimension 2 with
# two *marked* loops.  The defect is 1, so the representation scheme is
# singular over this point.
origin = MarkedQuiverSetting.make([2], [[0]], [2])
print("origin          defect =", defect(origin, 2))

# The smooth/singular verdict comes from reducing the setting and matching
# the terminal form against the six smooth shapes.
report = is_smooth_setting(origin)
print("origin smooth?", report.smooth, "(two marked loops at dimension 2 is terminal)")

# The conifold setting: two vertices, two arrows each way.  Its central
# dimension is three and it is singular: the unique three-dimensional type.
conifold = MarkedQuiverSetting.make([1, 1], [[0, 2], [2, 0]])
print("conifold        expected_dim =", expected_dim(conifold))
print("conifold smooth?", is_smooth_setting(conifold).smooth)
