"""Regular triangulations of a point configuration and its secondary polytope.

Walks a hexagon through the full pipeline: enumerate triangulations by
bistellar flips, compute GKZ vectors, and inspect the secondary polytope.
"""

from fractions import Fraction

from air import (
    PointConfig,
    enumerate_triangulations,
    flip,
    gkz_vector,
    secondary_polytope,
)

# A convex hexagon with rational vertices.
hexagon = PointConfig.of([
    ("p1", 4, 0), ("p2", 2, 3), ("p3", -2, 3),
    ("p4", -4, 0), ("p5", -2, -3), ("p6", 2, -3),
])

tris = enumerate_triangulations(hexagon)
print(f"hexagon: {len(tris)} regular triangulations (Catalan number C_4 = 14)")

first = tris[0]
print("\none triangulation, as vertex-label cells:")
for cell in sorted(first):
    print("  ", sorted(cell))

# Every triangulation has a GKZ vector: per point, the total normalized
# volume of the cells containing it. These are the secondary polytope's
# vertex coordinates.
g = gkz_vector(hexagon, first)
print("\nits GKZ vector:", [str(c) for c in g])
print("coordinate sum (same for every triangulation):", sum(g, Fraction(0)))

# Flipping a diagonal moves to an adjacent secondary-polytope vertex.
diag = next(
    tuple(sorted(set(c) & set(d)))
    for c in first for d in first
    if c != d and len(set(c) & set(d)) == 2
)
flipped = flip(hexagon, first, diag)
print(f"\nflip across diagonal {diag}:")
print("  new GKZ vector:", [str(c) for c in gkz_vector(hexagon, flipped)])

poly = secondary_polytope(hexagon)
print(f"\nsecondary polytope: {len(poly.gkz_vectors)} vertices,"
      f" {len(poly.edges)} edges, affine dimension {poly.dim}")
print("(dimension is n - 3 = 3 for a convex n-gon)")
