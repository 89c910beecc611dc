"""
The reduction calculus
======================

Reduce settings to their terminal forms while tracking the polynomial-ring
shift z between the invariant rings.
"""

from qsing import MarkedQuiverSetting, applicable_moves, expected_dim, reduce_setting

# A dimension-1 vertex with three loops: each loop is a free invariant, so
# three loop removals strip it to a bare vertex with z = 3.
loops = MarkedQuiverSetting.make([1], [[3]])
result = reduce_setting(loops)
print("three loops ->", result.reduced.to_json(), " z =", result.z)

# The worked big-loop example: dims (2, 1) with a marked loop at the big
# vertex, one arrow out, two back.  Expected dimension 5.
worked = MarkedQuiverSetting.make([2, 1], [[0, 1], [2, 0]], [1, 0])
print("\nbefore:", worked.to_json())
print("expected_dim =", expected_dim(worked))
for move in applicable_moves(worked):
    print("applicable:", move.describe())

# The first step removes the marked loop (z += dims[v] - 1 = 1) and doubles
# the single arrow; the full reduction continues down to a point.
result = reduce_setting(worked)
print("terminal:", result.reduced.to_json(), " total z =", result.z)
for move in result.trace:
    print("  ", move.describe())

# The conifold setting admits no moves at all: every vertex has weighted
# in- and out-degree 2 > 1 and there are no loops.
conifold = MarkedQuiverSetting.make([1, 1], [[0, 2], [2, 0]])
print("\nconifold applicable moves:", applicable_moves(conifold))
