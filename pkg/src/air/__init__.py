"""Exact tools for planar point configurations: secondary polytopes, their
face lattices and induced algebraic structures, and Stokes matrices of the
associated one-variable Landau-Ginzburg data."""

from .exactgeom import (
    DegenerateConfig,
    Direction,
    GeometryError,
    Point,
    PointConfig,
    check_genericity,
    convex_hull,
)
from .secondary import (
    SecondaryPolytope,
    enumerate_triangulations,
    face_factorization,
    flip,
    gkz_vector,
    is_regular,
    lift_subdivision,
    regular_triangulations,
    secondary_face_lattice,
    secondary_polytope,
)
from .homotopy import (
    build_ainf,
    build_web_cdga,
    check_d_squared,
    check_stasheff,
    convex_chains,
    extended_triangulations,
)
from .perv import (
    GmvDiagram,
    MatrixDiagram,
    braid_mutate,
    braid_word,
    gmv_to_matrix_diagram,
    monodromy_charpoly,
    realize_matrix_diagram,
    total_monodromy,
    transport,
    validate_gmv,
)
from .infrared import (
    StokesMatrix,
    chamber_sample,
    enumerate_convex_paths,
    fs_filtration,
    hull_vertex_convex_path,
    is_convex_path,
    polygon_trace,
    stokes_matrix,
    stokes_matrix_oracle,
    stokes_rays,
    wall_cross_report,
    zeta_order,
)
from .lefschetz import (
    Superpotential,
    critical_data,
    fiber_basis,
    loop_permutation,
    matrix_diagram_from_W,
    total_monodromy_check,
    track_fiber,
)
from .render import Overlay, Scene, render_svg

__version__ = "0.1.0"

__all__ = [
    "DegenerateConfig",
    "Direction",
    "GeometryError",
    "GmvDiagram",
    "MatrixDiagram",
    "Overlay",
    "Point",
    "PointConfig",
    "Scene",
    "SecondaryPolytope",
    "StokesMatrix",
    "Superpotential",
    "braid_mutate",
    "braid_word",
    "build_ainf",
    "build_web_cdga",
    "chamber_sample",
    "check_d_squared",
    "check_genericity",
    "check_stasheff",
    "convex_chains",
    "convex_hull",
    "critical_data",
    "enumerate_convex_paths",
    "enumerate_triangulations",
    "extended_triangulations",
    "face_factorization",
    "fiber_basis",
    "flip",
    "fs_filtration",
    "gkz_vector",
    "gmv_to_matrix_diagram",
    "hull_vertex_convex_path",
    "is_convex_path",
    "is_regular",
    "lift_subdivision",
    "loop_permutation",
    "matrix_diagram_from_W",
    "monodromy_charpoly",
    "polygon_trace",
    "realize_matrix_diagram",
    "regular_triangulations",
    "render_svg",
    "secondary_face_lattice",
    "secondary_polytope",
    "stokes_matrix",
    "stokes_matrix_oracle",
    "stokes_rays",
    "total_monodromy",
    "total_monodromy_check",
    "track_fiber",
    "transport",
    "validate_gmv",
    "wall_cross_report",
    "zeta_order",
]
