"""Matrix diagrams, parallel transport, and the braid group action.

A matrix diagram assigns a vector space to each point and transport matrices
to ordered pairs. Braid generators mutate the diagram; the characteristic
polynomial of the total monodromy is the invariant that survives.
"""

from fractions import Fraction

from air import PointConfig, monodromy_charpoly, total_monodromy
from air.perv import MatrixDiagram, PathWord, Straight, braid_mutate, transport

cfg = PointConfig.of([("w1", 0, 0), ("w2", 2, 1), ("w3", 1, -3)])
md = MatrixDiagram(
    cfg,
    {"w1": 1, "w2": 1, "w3": 1},
    {l: [[Fraction(-1)]] for l in cfg.labels},
    {("w2", "w1"): [[Fraction(2)]],
     ("w3", "w1"): [[Fraction(5)]],
     ("w2", "w3"): [[Fraction(7)]]},
)

print("diagram on 3 points, all spaces 1-dimensional")
print("transports: t(w2,w1) = 2, t(w3,w1) = 5, t(w2,w3) = 7")

# Transport along a straight path word is just the matrix.
word = PathWord("w2", "w1", [Straight("w2", "w1")])
print("\ntransport along the straight path w2 -> w1:",
      transport(md, word))

T = total_monodromy(md)
print("\ntotal monodromy in the spider order", md.order, ":")
for row in T:
    print("  ", [str(c) for c in row])
p0 = monodromy_charpoly(md)
print("charpoly:", [str(c) for c in p0])

# Mutate at position 1 (swap the first two points in the spider order),
# then undo it. The diagram comes back exactly.
m1 = braid_mutate(md, 1)
back = braid_mutate(m1, 1, inverse=True)
print("\nsigma_1 then sigma_1^{-1} restores the diagram:",
      back.to_json() == md.to_json())

# The charpoly is invariant under any braid word.
m2 = braid_mutate(braid_mutate(m1, 2), 1)
print("charpoly after sigma_1 sigma_2 sigma_1:",
      [str(c) for c in monodromy_charpoly(m2)])
print("equal to the original:", monodromy_charpoly(m2) == p0)

# Both sides of the braid relation give the same diagram.
lhs = braid_mutate(braid_mutate(braid_mutate(md, 1), 2), 1)
rhs = braid_mutate(braid_mutate(braid_mutate(md, 2), 1), 2)
print("braid relation s1 s2 s1 == s2 s1 s2:", lhs.to_json() == rhs.to_json())
