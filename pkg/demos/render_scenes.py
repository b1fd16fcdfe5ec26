"""Deterministic SVG scenes: configurations with overlays.

Overlays draw a triangulation, a convex path, the hull, or the Stokes rays
on top of the labeled points. Output bytes are identical run to run.
"""

from air import (
    Direction,
    PointConfig,
    Overlay,
    Scene,
    enumerate_convex_paths,
    enumerate_triangulations,
    render_svg,
)

cfg = PointConfig.of([
    ("p1", 0, 0), ("p2", 4, 0), ("p3", 6, 3), ("p4", 3, 6), ("p5", -1, 3),
])

tri = enumerate_triangulations(cfg)[0]
scene = Scene(cfg, [
    Overlay("triangulation", cells=[sorted(c) for c in tri]),
    Overlay("hull"),
])
svg = render_svg(scene)
print("triangulation scene:", len(svg), "bytes of SVG")
print("deterministic:", render_svg(scene) == svg)

with open("/tmp/triangulation.svg", "wb") as fh:
    fh.write(svg)
print("wrote /tmp/triangulation.svg")

# A convex-path overlay on the same configuration.
zeta = Direction.of(0, 1)
path = enumerate_convex_paths(cfg, zeta, "p4", "p1")[-1]
scene2 = Scene(cfg, [Overlay("path", vertices=list(path)),
                     Overlay("rays")])
with open("/tmp/path_and_rays.svg", "wb") as fh:
    fh.write(render_svg(scene2))
print("wrote /tmp/path_and_rays.svg"
      f" (path {' -> '.join(path)}, rays from the centroid)")

# Scenes serialize to JSON and come back byte-identical.
again = Scene.from_json(scene2.to_json())
print("JSON round trip:", render_svg(again) == render_svg(scene2))
