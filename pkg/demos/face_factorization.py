"""Faces of the secondary polytope and how they factor.

A face corresponds to a regular subdivision; the triangulations refining it
form a product of smaller secondary polytopes, one factor per cell.
"""

from fractions import Fraction

from air import PointConfig, face_factorization, lift_subdivision
from air.secondary import secondary_face_lattice

hexagon = PointConfig.of([
    ("p1", 4, 0), ("p2", 2, 3), ("p3", -2, 3),
    ("p4", -4, 0), ("p5", -2, -3), ("p6", 2, -3),
])

# Lift by |y|: convex piecewise linear with a crease along the horizontal
# diagonal, so the lower hull projects to two quadrilaterals.
heights = {l: abs(hexagon.point(l).y) for l in hexagon.labels}
cells = lift_subdivision(hexagon, heights)
print("coarse subdivision from the |y| lift:")
for cell in sorted(map(sorted, cells)):
    print("  ", cell)

fact = face_factorization(hexagon, cells)
print("\nits face factorization:")
for factor, count in zip(fact.factors, fact.factor_counts):
    print(f"  cell {factor.labels}: {count} triangulations")
product = 1
for count in fact.factor_counts:
    product *= count
print(f"refining triangulations: {len(fact.refinements)}"
      f" = product of factor counts {product}; verified={fact.verified}")

# The full face lattice, counted by dimension. The hexagon's secondary
# polytope is the 3-dimensional associahedron.
lattice = secondary_face_lattice(hexagon)
by_dim = {}
for f in lattice.faces:
    by_dim[f.dim] = by_dim.get(f.dim, 0) + 1
print("\nface lattice of the secondary polytope:")
for d in sorted(by_dim):
    print(f"  dimension {d}: {by_dim[d]} faces")
print("(14 vertices, 21 edges, 9 facets, 1 body for the associahedron)")
