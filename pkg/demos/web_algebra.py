"""The web CDGA of a configuration and the A-infinity algebra of convex chains.

Both structures are built from secondary polytopes: the CDGA from the face
lattices of sub-configurations, the A-infinity operations from extended
configurations with one far point in a fixed direction.
"""

from air import (
    Direction,
    PointConfig,
    build_ainf,
    build_web_cdga,
    check_d_squared,
    check_stasheff,
    convex_chains,
)

cfg = PointConfig.of([("w1", 0, 0), ("w2", 3, 1), ("w3", 1, 4), ("w4", 5, 5)])

cdga = build_web_cdga(cfg)
print(f"web CDGA on 4 points: {len(cdga.generators)} generators")
degrees = {}
for gen in cdga.generators:
    degrees[gen.degree] = degrees.get(gen.degree, 0) + 1
for d in sorted(degrees):
    print(f"  degree {d}: {degrees[d]}")

report = check_d_squared(cdga)
print(f"d^2 = 0 on all generators: {report.ok}")

# Convex chains in a direction eta are the basis of the A-infinity algebra.
eta = Direction.of(1, 0)
chains = convex_chains(cfg, eta)
print(f"\neta-convex chains for eta = (1,0): {len(chains)}")
for ch in chains:
    print("  ", " -> ".join(ch))

alg = build_ainf(cfg, eta)
report = check_stasheff(alg, max_arity=4)
print(f"\nStasheff identities up to arity 4: {report.ok}")

# A sample product: m_2 of two composable chains, by basis index.
index = {ch: i for i, ch in enumerate(alg.basis)}
pairs = [(a, b) for a in alg.basis for b in alg.basis
         if len(a) > 1 and len(b) > 1 and a[-1] == b[0]]
for a, b in pairs:
    val = alg.m(2, [index[a], index[b]])
    if val:
        terms = ", ".join(f"{c} * {'->'.join(alg.basis[k])}"
                          for k, c in val.items())
        print(f"\nm_2({'->'.join(a)}, {'->'.join(b)}) = {terms}")
        break
