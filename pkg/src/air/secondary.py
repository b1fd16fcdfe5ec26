"""Regular subdivisions and secondary polytopes of planar point configurations.

A subdivision is stored as a tuple of cells; each cell is a tuple of labels in
counterclockwise order starting from the lexicographically smallest point, and
the cells are sorted.  Cells are vertex sets of strictly convex polygons: a
configuration point lying inside a cell is simply not listed.  Where the
distinction matters (faces of the secondary polytope) a cell additionally
carries its set of *marked* points: the points lying on the cell's lifted
plane, vertices included.

Regularity is decided exactly: the defining height system (equalities on each
cell's plane, strict inequalities elsewhere) goes to the Fourier-Motzkin
solver, and the witness heights it returns reproduce the subdivision on lift.

The standing assumption throughout is a generic configuration (no three points
collinear, see exactgeom.check_genericity); validation is complete under that
assumption and best-effort otherwise.
"""

from __future__ import annotations

import random
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .exactgeom import (
    GeometryError,
    Point,
    PointConfig,
    angle_sorted,
    convex_hull,
    normvol,
    orient,
    parse_rational,
    point_in_convex_polygon,
    polygon_area2,
    segments_cross,
    vsub,
)
from .linalg import rank as mat_rank
from .linalg import solve
from .lp import LinearSystem

Cell = Tuple[str, ...]
Cells = Tuple[Cell, ...]


class SubdivisionError(ValueError):
    pass


class InvalidSubdivision(SubdivisionError):
    pass


class NotFlippable(SubdivisionError):
    pass


class NotRegular(SubdivisionError):
    pass


def cell_points(config: PointConfig, cell: Sequence[str]) -> List[Point]:
    return [config.point(l) for l in cell]


def normalize_cell(config: PointConfig, labels: Iterable[str]) -> Cell:
    """Canonical form of a cell: ccw from the lex-smallest point.

    Raises InvalidSubdivision unless the labelled points are the vertex set of
    a strictly convex polygon.
    """
    labs = list(dict.fromkeys(labels))
    if len(labs) < 3:
        raise InvalidSubdivision(f"cell {labs} has fewer than 3 points")
    try:
        sub = config.subconfig(labs)
    except GeometryError as exc:
        raise InvalidSubdivision(str(exc)) from exc
    hull = convex_hull(sub)
    if len(hull) != len(labs):
        raise InvalidSubdivision(f"cell {sorted(labs)} is not strictly convex")
    return tuple(hull)


def validate_subdivision(config: PointConfig, cells: Iterable[Iterable[str]]) -> Cells:
    """Canonicalize and check that the cells tile the convex hull."""
    raw = list(cells)
    if not raw:
        raise InvalidSubdivision("no cells")
    hull = convex_hull(config)
    if len(hull) < 3:
        raise InvalidSubdivision("configuration is degenerate")
    norm = sorted({normalize_cell(config, c) for c in raw})
    if len(norm) != len(raw):
        raise InvalidSubdivision("duplicate cells")
    directed: Dict[Tuple[str, str], Cell] = {}
    for cell in norm:
        for i in range(len(cell)):
            e = (cell[i], cell[(i + 1) % len(cell)])
            if e in directed:
                raise InvalidSubdivision(f"directed edge {e} used twice")
            directed[e] = cell
    hull_edges = {(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))}
    for e in directed:
        if (e[1], e[0]) not in directed and e not in hull_edges:
            raise InvalidSubdivision(f"interior edge {e} appears only once")
    for e in hull_edges:
        if e not in directed:
            raise InvalidSubdivision(f"hull edge {e} not covered")
    total = sum(normvol(cell_points(config, cell)) for cell in norm)
    if total != normvol(cell_points(config, hull)):
        raise InvalidSubdivision("cells do not tile the hull")
    return tuple(norm)


def is_triangulation(cells: Cells) -> bool:
    return all(len(c) == 3 for c in cells)


@dataclass(frozen=True)
class MarkedSubdivision:
    """A subdivision together with, per cell, the points on its lifted plane."""

    cells: Cells
    marks: Tuple[Tuple[str, ...], ...]  # sorted labels, aligned with cells

    def mark_sets(self) -> List[FrozenSet[str]]:
        return [frozenset(m) for m in self.marks]


# -- lifting ------------------------------------------------------------------


def _lower_faces(config: PointConfig, heights: Dict[str, Fraction]) -> List[FrozenSet[str]]:
    labels = config.labels
    h = {l: parse_rational(heights[l]) for l in labels}
    faces = set()
    for a, b, c in combinations(labels, 3):
        pa, pb, pc = config.point(a), config.point(b), config.point(c)
        m = [[pa.x, pa.y, Fraction(1)],
             [pb.x, pb.y, Fraction(1)],
             [pc.x, pc.y, Fraction(1)]]
        sol = solve(m, [h[a], h[b], h[c]])
        if sol is None or mat_rank(m) < 3:  # collinear base triple
            continue
        ca, cb, cc = sol
        vals = {l: ca * config.point(l).x + cb * config.point(l).y + cc for l in labels}
        if any(h[l] < vals[l] for l in labels):
            continue
        faces.add(frozenset(l for l in labels if h[l] == vals[l]))
    return sorted(faces, key=sorted)


def lift_marked_subdivision(config: PointConfig, heights: Dict[str, Fraction]) -> MarkedSubdivision:
    """The marked subdivision induced by the lower hull of the lifted points."""
    missing = [l for l in config.labels if l not in heights]
    if missing:
        raise SubdivisionError(f"heights missing for labels: {missing}")
    items = []
    for face in _lower_faces(config, heights):
        cell = normalize_cell(config, convex_hull(config.subconfig(face)))
        items.append((cell, tuple(sorted(face))))
    items.sort()
    cells = tuple(c for c, _ in items)
    validate_subdivision(config, cells)
    return MarkedSubdivision(cells, tuple(m for _, m in items))


def lift_subdivision(config: PointConfig, heights: Dict[str, Fraction]) -> Cells:
    """The subdivision induced by the lower hull of the lifted points."""
    return lift_marked_subdivision(config, heights).cells


# -- regularity ---------------------------------------------------------------


@dataclass
class RegularityWitness:
    regular: bool
    heights: Optional[Dict[str, Fraction]]

    def __bool__(self) -> bool:
        return self.regular


def _add_cell_constraints(sys: LinearSystem, config: PointConfig, cell: Cell,
                          on_plane: FrozenSet[str], index: Dict[str, int],
                          strict_inside: bool) -> None:
    base = cell[:3]
    pts = [config.point(l) for l in base]
    m = [[pts[0].x, pts[1].x, pts[2].x],
         [pts[0].y, pts[1].y, pts[2].y],
         [Fraction(1)] * 3]
    poly = cell_points(config, cell)
    for s in config.labels:
        if s in base:
            continue
        p = config.point(s)
        lam = solve(m, [p.x, p.y, Fraction(1)])
        # row encodes plane(s) - h_s; the point lies above its cell plane
        # when the row value is <= 0 (or == 0 for points on the plane)
        row = [Fraction(0)] * len(index)
        for l, coeff in zip(base, lam):
            row[index[l]] += coeff
        row[index[s]] -= 1
        if s in on_plane:
            sys.add_eq(row, 0)
        elif point_in_convex_polygon(p, poly) > 0:
            if strict_inside:
                sys.add_lt(row, 0)
            else:
                sys.add_le(row, 0)
        else:
            sys.add_lt(row, 0)


def is_regular(config: PointConfig, cells: Iterable[Iterable[str]]) -> RegularityWitness:
    """Decide regularity of a subdivision; the witness heights lift back to it."""
    norm = validate_subdivision(config, cells)
    index = {l: i for i, l in enumerate(config.labels)}
    sys = LinearSystem(len(index))
    for cell in norm:
        _add_cell_constraints(sys, config, cell, frozenset(cell), index,
                              strict_inside=False)
    x = sys.feasible_point()
    if x is None:
        return RegularityWitness(False, None)
    return RegularityWitness(True, {l: x[index[l]] for l in config.labels})


def marked_is_regular(config: PointConfig, msub: MarkedSubdivision) -> RegularityWitness:
    """Regularity of a marked subdivision: marked points must land exactly on
    their cell's plane, every other point strictly above."""
    norm = validate_subdivision(config, msub.cells)
    if norm != msub.cells:
        raise InvalidSubdivision("marked subdivision is not in canonical form")
    index = {l: i for i, l in enumerate(config.labels)}
    sys = LinearSystem(len(index))
    for cell, marks in zip(msub.cells, msub.mark_sets()):
        if not marks.issuperset(cell):
            raise InvalidSubdivision(f"marks of cell {cell} omit a vertex")
        poly = cell_points(config, cell)
        for s in marks - set(cell):
            if point_in_convex_polygon(config.point(s), poly) == 0:
                raise InvalidSubdivision(f"marked point {s} lies outside cell {cell}")
        _add_cell_constraints(sys, config, cell, marks, index, strict_inside=True)
    x = sys.feasible_point()
    if x is None:
        return RegularityWitness(False, None)
    return RegularityWitness(True, {l: x[index[l]] for l in config.labels})


# -- flips --------------------------------------------------------------------


def _flip_core(config: PointConfig, tri: Cells, edge: Tuple[str, str]) -> Cells:
    a, b = edge
    inc = [c for c in tri if a in c and b in c]
    if len(inc) != 2:
        raise NotFlippable(f"edge ({a},{b}) is not an interior edge of the triangulation")
    c1 = next(l for l in inc[0] if l not in (a, b))
    c2 = next(l for l in inc[1] if l not in (a, b))
    if not segments_cross(config.point(a), config.point(b),
                          config.point(c1), config.point(c2)):
        raise NotFlippable(f"quadrilateral around edge ({a},{b}) is not convex")
    rest = [c for c in tri if c not in inc]
    rest.append(normalize_cell(config, (a, c1, c2)))
    rest.append(normalize_cell(config, (b, c1, c2)))
    return tuple(sorted(rest))


def flip(config: PointConfig, cells: Iterable[Iterable[str]], edge: Sequence[str]) -> Cells:
    """Replace the diagonal `edge` of its surrounding quadrilateral by the other one."""
    tri = validate_subdivision(config, cells)
    if not is_triangulation(tri):
        raise NotFlippable("flips operate on triangulations")
    a, b = edge
    for l in (a, b):
        if l not in config.coords:
            raise NotFlippable(f"unknown label {l!r}")
    return _flip_core(config, tri, (a, b))


def _neighbors(config: PointConfig, tri: Cells) -> List[Cells]:
    """All triangulations one bistellar move away (diagonal, insert, remove)."""
    out = set()
    seen_edges = set()
    for cell in tri:
        for i in range(3):
            e = tuple(sorted((cell[i], cell[(i + 1) % 3])))
            if e in seen_edges:
                continue
            seen_edges.add(e)
            try:
                out.add(_flip_core(config, tri, e))
            except NotFlippable:
                pass
    used = {l for c in tri for l in c}
    for p in config.labels:
        if p in used:
            continue
        pp = config.point(p)
        for cell in tri:
            if point_in_convex_polygon(pp, cell_points(config, cell)) == 2:
                rest = [c for c in tri if c != cell]
                for i in range(3):
                    rest.append(normalize_cell(config, (p, cell[i], cell[(i + 1) % 3])))
                out.add(tuple(sorted(rest)))
                break
    hull = set(convex_hull(config))
    incident: Dict[str, List[Cell]] = {}
    for c in tri:
        for l in c:
            incident.setdefault(l, []).append(c)
    for p in used - hull:
        cs = incident[p]
        if len(cs) != 3:
            continue
        ring = {l for c in cs for l in c} - {p}
        if len(ring) != 3:
            continue
        rest = [c for c in tri if c not in cs]
        rest.append(normalize_cell(config, ring))
        out.add(tuple(sorted(rest)))
    return sorted(out)


def _seed_triangulation(config: PointConfig) -> Cells:
    rng = random.Random(0)
    for _ in range(200):
        heights = {l: Fraction(rng.randint(-10 ** 9, 10 ** 9)) for l in config.labels}
        msub = lift_marked_subdivision(config, heights)
        if all(len(m) == 3 for m in msub.marks):
            return msub.cells
    raise SubdivisionError("no generic lift found; is the configuration generic?")


def enumerate_triangulations(config: PointConfig) -> List[Cells]:
    """All triangulations of the configuration (any subset of the points may
    be used as vertices), by breadth-first search over bistellar moves."""
    start = _seed_triangulation(config)
    seen = {start}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        for nb in _neighbors(config, t):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return sorted(seen)


def brute_force_triangulations(config: PointConfig) -> List[Cells]:
    """Direct enumeration, independent of the flip search: grow triangles over
    the lexicographically smallest uncovered boundary edge."""
    hull = convex_hull(config)
    if len(hull) < 3:
        raise SubdivisionError("configuration is degenerate")
    interior = [l for l in config.labels if l not in hull]
    results: List[Cells] = []
    for r in range(len(interior) + 1):
        for extra in combinations(interior, r):
            results.extend(_triangulations_using_all(config, hull, list(extra)))
    return sorted(set(results))


def _triangulations_using_all(config: PointConfig, hull: List[str],
                              extra: List[str]) -> List[Cells]:
    labels = hull + extra
    pts = {l: config.point(l) for l in labels}
    start = frozenset((hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))
    out: List[Cells] = []

    def rec(boundary: FrozenSet[Tuple[str, str]], cells: Tuple[Cell, ...]) -> None:
        if not boundary:
            out.append(tuple(sorted(cells)))
            return
        a, b = min(boundary)
        for c in labels:
            if c in (a, b) or orient(pts[a], pts[b], pts[c]) != 1:
                continue
            tri_pts = [pts[a], pts[b], pts[c]]
            if any(point_in_convex_polygon(pts[d], tri_pts) > 0
                   for d in labels if d not in (a, b, c)):
                continue
            # a triangle edge may coincide with a boundary edge (cancellation),
            # so only distinct segments count as crossings
            blocked = False
            for u, v in boundary:
                uv = {u, v}
                if uv != {a, c} and segments_cross(pts[u], pts[v], pts[a], pts[c]):
                    blocked = True
                    break
                if uv != {b, c} and segments_cross(pts[u], pts[v], pts[b], pts[c]):
                    blocked = True
                    break
            if blocked:
                continue
            nb = set(boundary)
            nb.remove((a, b))
            for u, v in ((b, c), (c, a)):
                if (u, v) in nb:
                    nb.remove((u, v))
                else:
                    if (v, u) in nb:  # region on both sides of an edge: impossible bite
                        raise SubdivisionError("inconsistent region boundary")
                    nb.add((v, u))
            rec(frozenset(nb), cells + (normalize_cell(config, (a, b, c)),))

    rec(start, ())
    return out


def regular_triangulations(config: PointConfig) -> List[Cells]:
    return [t for t in enumerate_triangulations(config) if is_regular(config, t)]


# -- GKZ vectors and the secondary polytope ------------------------------------


def gkz_vector(config: PointConfig, cells: Cells) -> Tuple[Fraction, ...]:
    """Per point, the total normalized volume of its incident cells."""
    vol = {l: Fraction(0) for l in config.labels}
    for cell in cells:
        v = normvol(cell_points(config, cell))
        for l in cell:
            vol[l] += v
    return tuple(vol[l] for l in config.labels)


def _affine_rank(vectors: Sequence[Tuple[Fraction, ...]]) -> int:
    if len(vectors) <= 1:
        return 0
    v0 = vectors[0]
    return mat_rank([[x - y for x, y in zip(v, v0)] for v in vectors[1:]])


@dataclass
class SecondaryPolytope:
    config: PointConfig
    triangulations: List[Cells]         # every triangulation
    regular: List[Cells]                # the vertices, as triangulations
    gkz_vectors: List[Tuple[Fraction, ...]]  # aligned with `regular`
    edges: List[Tuple[int, int]]        # index pairs joined by a flip
    dim: int


def secondary_polytope(config: PointConfig) -> SecondaryPolytope:
    tris = enumerate_triangulations(config)
    regular = [t for t in tris if is_regular(config, t)]
    gkz = [gkz_vector(config, t) for t in regular]
    pos = {t: i for i, t in enumerate(regular)}
    edges = set()
    for i, t in enumerate(regular):
        for nb in _neighbors(config, t):
            j = pos.get(nb)
            if j is not None and i < j:
                edges.add((i, j))
    return SecondaryPolytope(config, tris, regular, gkz, sorted(edges),
                             _affine_rank(gkz))


# -- all polyhedral subdivisions and the face lattice ---------------------------


def enumerate_subdivisions(config: PointConfig) -> List[Cells]:
    """Every polyhedral subdivision (cells strictly convex, vertices in the
    configuration), enumerated over non-crossing edge subsets."""
    hull = convex_hull(config)
    if len(hull) < 3:
        raise SubdivisionError("configuration is degenerate")
    labels = config.labels
    hull_edges = {frozenset((hull[i], hull[(i + 1) % len(hull)]))
                  for i in range(len(hull))}
    candidates = []
    for a, b in combinations(labels, 2):
        if frozenset((a, b)) in hull_edges:
            continue
        # skip segments with a third point on them (non-generic configs)
        if any(point_in_convex_polygon(config.point(c),
                                       [config.point(a), config.point(b)]) == 1
               for c in labels if c not in (a, b)):
            continue
        candidates.append((a, b))
    crossing = {}
    for i, e in enumerate(candidates):
        for j in range(i + 1, len(candidates)):
            f = candidates[j]
            if segments_cross(config.point(e[0]), config.point(e[1]),
                              config.point(f[0]), config.point(f[1])):
                crossing.setdefault(i, set()).add(j)
                crossing.setdefault(j, set()).add(i)
    base = [tuple(sorted(e)) for e in
            ((hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))]
    results = set()
    for mask in range(1 << len(candidates)):
        chosen = [i for i in range(len(candidates)) if mask >> i & 1]
        ok = True
        for i in chosen:
            if crossing.get(i) and any(j in crossing[i] for j in chosen):
                ok = False
                break
        if not ok:
            continue
        edges = base + [candidates[i] for i in chosen]
        cells = _faces_of_edge_set(config, edges)
        if cells is not None:
            results.add(cells)
    return sorted(results)


def _faces_of_edge_set(config: PointConfig, edges: List[Tuple[str, str]]) -> Optional[Cells]:
    """Bounded faces of the planar graph, or None unless they are all strictly
    convex and tile the hull."""
    nbrs: Dict[str, List[str]] = {}
    for a, b in edges:
        nbrs.setdefault(a, []).append(b)
        nbrs.setdefault(b, []).append(a)
    order = {}
    for v, ns in nbrs.items():
        pv = config.point(v)
        ordered = angle_sorted((vsub(config.point(w), pv), w) for w in ns)
        order[v] = [w for _, w in ordered]
    succ = {}
    for a, b in edges:
        for u, v in ((a, b), (b, a)):
            ring = order[v]
            k = ring.index(u)
            succ[(u, v)] = (v, ring[k - 1])  # next edge ccw around the face
    faces = []
    remaining = set(succ)
    while remaining:
        e = remaining.pop()
        walk = [e]
        cur = succ[e]
        while cur != e:
            remaining.discard(cur)
            walk.append(cur)
            cur = succ[cur]
        faces.append([u for u, _ in walk])
    hull_vol = normvol(cell_points(config, convex_hull(config)))
    cells = []
    outer = 0
    total = Fraction(0)
    for face in faces:
        poly = cell_points(config, face)
        area2 = polygon_area2(poly)
        if area2 <= 0:
            outer += 1
            if -area2 != hull_vol:
                return None
            continue
        if len(set(face)) != len(face):
            return None
        n = len(face)
        if any(orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) != 1
               for i in range(n)):
            return None
        total += area2
        cells.append(tuple(face))
    if outer != 1 or total != hull_vol:
        return None
    try:
        return validate_subdivision(config, cells)
    except InvalidSubdivision:
        return None


def enumerate_marked_subdivisions(config: PointConfig) -> List[MarkedSubdivision]:
    out = []
    for cells in enumerate_subdivisions(config):
        choices: List[List[Tuple[str, ...]]] = []
        for cell in cells:
            poly = cell_points(config, cell)
            inside = [p for p in config.labels if p not in cell
                      and point_in_convex_polygon(config.point(p), poly) == 2]
            per_cell = []
            for r in range(len(inside) + 1):
                for chosen in combinations(inside, r):
                    per_cell.append(tuple(sorted(set(cell) | set(chosen))))
            choices.append(per_cell)

        def expand(i: int, acc: Tuple[Tuple[str, ...], ...]) -> None:
            if i == len(cells):
                out.append(MarkedSubdivision(cells, acc))
                return
            for marks in choices[i]:
                expand(i + 1, acc + (marks,))

        expand(0, ())
    return out


@dataclass(frozen=True)
class Face:
    subdivision: MarkedSubdivision
    vertices: Tuple[int, ...]  # indices into FaceLattice.regular
    dim: int


@dataclass
class FaceLattice:
    config: PointConfig
    regular: List[Cells]
    gkz_vectors: List[Tuple[Fraction, ...]]
    faces: List[Face]  # sorted by (dim, vertices); includes vertices and top

    @property
    def dim(self) -> int:
        return max(f.dim for f in self.faces)

    def faces_of_dim(self, d: int) -> List[Face]:
        return [f for f in self.faces if f.dim == d]

    def top(self) -> Face:
        return max(self.faces, key=lambda f: len(f.vertices))

    def facets_of(self, face: Face) -> List[Face]:
        below = [g for g in self.faces
                 if set(g.vertices) < set(face.vertices)]
        return [g for g in below
                if not any(set(g.vertices) < set(h.vertices) for h in below)]


def _refines_marked(tri: Cells, mark_sets: List[FrozenSet[str]]) -> bool:
    return all(any(set(cell) <= m for m in mark_sets) for cell in tri)


def secondary_face_lattice(config: PointConfig) -> FaceLattice:
    """All faces of the secondary polytope, as regular marked subdivisions.

    Exhaustive over subdivisions, so limited to small configurations.
    """
    if len(config) > 6:
        raise SubdivisionError("face lattice enumeration supports at most 6 points")
    regular = regular_triangulations(config)
    gkz = [gkz_vector(config, t) for t in regular]
    by_vertices: Dict[Tuple[int, ...], Face] = {}
    for msub in enumerate_marked_subdivisions(config):
        if not marked_is_regular(config, msub):
            continue
        marks = msub.mark_sets()
        vs = tuple(i for i, t in enumerate(regular) if _refines_marked(t, marks))
        if not vs:
            raise SubdivisionError(f"regular marked subdivision with no refinement: {msub}")
        if vs in by_vertices:
            continue
        by_vertices[vs] = Face(msub, vs, _affine_rank([gkz[i] for i in vs]))
    faces = sorted(by_vertices.values(), key=lambda f: (f.dim, f.vertices))
    return FaceLattice(config, regular, gkz, faces)


# -- face factorization ---------------------------------------------------------


@dataclass
class FaceFactorization:
    cells: Cells
    factors: List[PointConfig]      # configuration points inside each closed cell
    factor_counts: List[int]        # regular triangulation count per factor
    refinements: List[Cells]        # regular triangulations refining the cells
    problems: List[str]

    @property
    def verified(self) -> bool:
        return not self.problems


def face_factorization(config: PointConfig, cells: Iterable[Iterable[str]]) -> FaceFactorization:
    """Factor the face of the secondary polytope given by a regular subdivision
    as a product over its cells, and verify the factorization on the nose."""
    norm = validate_subdivision(config, cells)
    if not is_regular(config, norm):
        raise NotRegular("subdivision is not regular")
    polys = [cell_points(config, cell) for cell in norm]
    factors = []
    for cell, poly in zip(norm, polys):
        inside = [l for l in config.labels
                  if point_in_convex_polygon(config.point(l), poly) > 0]
        factors.append(config.subconfig(inside))
    factor_tris = [regular_triangulations(f) for f in factors]
    counts = [len(ft) for ft in factor_tris]

    all_marks = [frozenset(f.labels) for f in factors]
    refinements = [t for t in regular_triangulations(config)
                   if _refines_marked(t, all_marks)]

    problems: List[str] = []
    product = 1
    for c in counts:
        product *= c
    if len(refinements) != product:
        problems.append(f"refinement count {len(refinements)} != factor product {product}")

    seen = set()
    for t in refinements:
        key = []
        ok = True
        for cell, poly, factor, ft in zip(norm, polys, factors, factor_tris):
            part = []
            for tri in t:
                cx = sum(config.point(l).x for l in tri) / 3
                cy = sum(config.point(l).y for l in tri) / 3
                if point_in_convex_polygon(Point(cx, cy), poly) == 2:
                    part.append(tri)
            restriction = tuple(sorted(part))
            if restriction not in ft:
                problems.append(f"restriction of {t} to cell {cell} is not a "
                                f"regular triangulation of the factor")
                ok = False
                break
            key.append(restriction)
        if not ok:
            continue
        key = tuple(key)
        if key in seen:
            problems.append(f"two refinements restrict identically: {key}")
        seen.add(key)
        # per-point volumes must add up cell by cell
        g = gkz_vector(config, t)
        total = [Fraction(0)] * len(config.labels)
        for factor, part in zip(factors, key):
            gf = gkz_vector(factor, part)
            for lab, val in zip(factor.labels, gf):
                total[config.labels.index(lab)] += val
        if tuple(total) != g:
            problems.append(f"volume vector of {t} does not split over the cells")
    return FaceFactorization(norm, factors, counts, refinements, problems)
