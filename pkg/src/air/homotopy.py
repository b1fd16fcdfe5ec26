"""Web algebra of a planar configuration and the algebra of infinite polygons.

Two graded structures are built here, both with exact rational coefficients.

The web CDGA is the free graded-commutative algebra on one generator per face
of the secondary polytope of every sub-configuration A' (|A'| >= 2, pairs give
a single degree-0 generator).  Generator degree = face dimension.  The
differential of a *top* generator rewrites each facet, i.e. each coarse
regular marked subdivision, as the product of the top generators of its cells'
mark sets; the differential of any other face generator is the plain cellular
boundary inside its own secondary polytope.  Orientations come from greedy
bases of GKZ-vertex differences taken in lexicographic vertex order, incidence
signs from determinants against an outward vector, and product signs from the
Koszul rule in sorted-generator order.  d^2 = 0 is checked, never assumed.

The A-infinity algebra R has one basis element per infinite polygon: a chain
of configuration points, strictly increasing in the eta-order and turning
right at every interior point, closed off by two rays to infinity in the
direction eta.  Infinity is modeled as a far rational point M*eta whose
combinatorics must be stable under doubling M.  m2 glues two polygons sharing
a ray and its sign is the incidence coefficient of the corresponding facet of
the glued polygon's secondary polytope; all higher products vanish (gluings of
three or more cells sit in codimension >= 2), which the Stasheff checker
verifies rather than trusts.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .exactgeom import (
    DegenerateConfig,
    Direction,
    Point,
    PointConfig,
    check_genericity,
    cross,
    convex_hull,
    dot,
    point_in_convex_polygon,
    pt,
    rho,
    vsub,
)
from .linalg import Matrix, det, mat_mul, solve, zeros
from .secondary import (
    Cells,
    Cell,
    FaceLattice,
    SubdivisionError,
    enumerate_triangulations,
    gkz_vector,
    normalize_cell,
    secondary_face_lattice,
)


class FaceLatticeUnavailable(ValueError):
    pass


class SignInconsistency(AssertionError):
    """Raised when the implemented orientation convention fails d^2 = 0."""


class UnstableM(ValueError):
    pass


# -- orientation data ----------------------------------------------------------


def _greedy_basis(vectors: Sequence[Tuple[Fraction, ...]]) -> List[Tuple[Fraction, ...]]:
    """Maximal independent subsequence, greedily in the given order."""
    basis: List[List[Fraction]] = []  # row-echelon shadow of the chosen vectors
    chosen: List[Tuple[Fraction, ...]] = []
    for v in vectors:
        row = list(v)
        for b in basis:
            lead = next(i for i, x in enumerate(b) if x != 0)
            if row[lead] != 0:
                f = row[lead] / b[lead]
                row = [x - f * y for x, y in zip(row, b)]
        if any(x != 0 for x in row):
            basis.append(row)
            chosen.append(v)
    return chosen


def _coords_in(basis: List[Tuple[Fraction, ...]], v: Tuple[Fraction, ...]) -> List[Fraction]:
    m = [[b[i] for b in basis] for i in range(len(v))]
    x = solve(m, list(v))
    if x is None:
        raise SignInconsistency("vector does not lie in the face's span")
    return x


def _det_sign_of_columns(cols: List[List[Fraction]]) -> int:
    n = len(cols)
    if n == 0:
        return 1
    m = [[cols[j][i] for j in range(n)] for i in range(n)]
    d = det(m)
    if d == 0:
        raise SignInconsistency("degenerate orientation comparison")
    return 1 if d > 0 else -1


@dataclass
class _FaceData:
    vertices: Tuple[int, ...]
    gkz: List[Tuple[Fraction, ...]]
    basis: List[Tuple[Fraction, ...]]
    barycenter: Tuple[Fraction, ...]
    dim: int


def _face_data(vertex_ids: Sequence[int], gkz_vectors) -> _FaceData:
    vs = tuple(vertex_ids)
    g = [gkz_vectors[i] for i in vs]
    v0 = g[0]
    basis = _greedy_basis([tuple(x - y for x, y in zip(v, v0)) for v in g[1:]])
    n = len(vs)
    bary = tuple(sum(v[i] for v in g) / n for i in range(len(v0)))
    return _FaceData(vs, g, basis, bary, len(basis))


def _incidence_sign(face: _FaceData, facet: _FaceData) -> int:
    """Sign comparing the facet's orientation, preceded by an outward vector,
    with the face's orientation."""
    out = tuple(b - a for a, b in zip(face.barycenter, facet.barycenter))
    cols = [_coords_in(face.basis, out)]
    cols += [_coords_in(face.basis, b) for b in facet.basis]
    if len(cols) != face.dim:
        raise SignInconsistency("facet dimension mismatch")
    return _det_sign_of_columns(cols)


# -- polyhedral chain complexes -------------------------------------------------


@dataclass
class ChainComplex:
    generators: List[Tuple[int, int]]        # (id, degree), id = face index
    boundary: Dict[int, Matrix]              # degree k -> matrix C_k -> C_{k-1}
    lattice: FaceLattice

    def degree_indices(self, d: int) -> List[int]:
        return [gid for gid, deg in self.generators if deg == d]


def polyhedral_chain_complex(source) -> ChainComplex:
    """Cellular chains of a secondary polytope, from its face lattice.

    Accepts a PointConfig or a prebuilt FaceLattice.
    """
    if isinstance(source, FaceLattice):
        lattice = source
    elif isinstance(source, PointConfig):
        try:
            lattice = secondary_face_lattice(source)
        except SubdivisionError as exc:
            raise FaceLatticeUnavailable(str(exc)) from exc
    else:
        raise TypeError("expected a PointConfig or FaceLattice")
    data = [_face_data(f.vertices, lattice.gkz_vectors) for f in lattice.faces]
    generators = [(i, d.dim) for i, d in enumerate(data)]
    top_dim = max(d.dim for d in data)
    pos_in_degree: Dict[int, Dict[int, int]] = {}
    for k in range(top_dim + 1):
        ids = [i for i, d in enumerate(data) if d.dim == k]
        pos_in_degree[k] = {gid: r for r, gid in enumerate(ids)}
    boundary: Dict[int, Matrix] = {}
    vertex_set = {i: set(d.vertices) for i, d in enumerate(data)}
    for k in range(1, top_dim + 1):
        rows = pos_in_degree[k - 1]
        cols = pos_in_degree[k]
        mat = zeros(len(rows), len(cols))
        for gid, c in cols.items():
            face = lattice.faces[gid]
            for facet in lattice.facets_of(face):
                fid = lattice.faces.index(facet)
                if data[fid].dim != k - 1:
                    raise SignInconsistency("facet does not drop dimension by 1")
                mat[rows[fid]][c] = Fraction(_incidence_sign(data[gid], data[fid]))
        boundary[k] = mat
    for k in range(2, top_dim + 1):
        sq = mat_mul(boundary[k - 1], boundary[k])
        if any(x != 0 for row in sq for x in row):
            raise SignInconsistency("boundary does not square to zero")
    return ChainComplex(generators, boundary, lattice)


# -- graded-commutative monomial algebra ----------------------------------------

# An element is a dict: sorted tuple of generator ids -> coefficient.
Element = Dict[Tuple[int, ...], Fraction]


def _merge_sorted(m1: Tuple[int, ...], m2: Tuple[int, ...],
                  degree: Dict[int, int]) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Koszul merge of two sorted monomials; None when an odd generator repeats."""
    out: List[int] = []
    sign = 1
    i = j = 0
    odd_left = sum(1 for g in m1 if degree[g] % 2)
    while i < len(m1) or j < len(m2):
        if j == len(m2) or (i < len(m1) and m1[i] <= m2[j]):
            g = m1[i]
            i += 1
            if degree[g] % 2:
                odd_left -= 1
            out.append(g)
        else:
            g = m2[j]
            j += 1
            if degree[g] % 2:
                if i < len(m1) and m1[i] == g:
                    return None  # odd generator squared
                if out and out[-1] == g:
                    return None
                if odd_left % 2:
                    sign = -sign
            out.append(g)
    return tuple(out), sign


def el_add(a: Element, b: Element, coeff: Fraction = Fraction(1)) -> Element:
    out = dict(a)
    for m, c in b.items():
        c = c * coeff
        if m in out:
            c = out[m] + c
            if c == 0:
                del out[m]
                continue
        if c != 0:
            out[m] = c
        elif m in out:
            del out[m]
    return out


def el_mul(a: Element, b: Element, degree: Dict[int, int]) -> Element:
    out: Element = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            merged = _merge_sorted(m1, m2, degree)
            if merged is None:
                continue
            mono, sign = merged
            c = out.get(mono, Fraction(0)) + sign * c1 * c2
            if c == 0:
                out.pop(mono, None)
            else:
                out[mono] = c
    return out


# -- the web CDGA ----------------------------------------------------------------


@dataclass(frozen=True)
class WebGenerator:
    gid: int
    labels: Tuple[str, ...]               # the sub-configuration
    face_index: Optional[int]             # index into its lattice; None for pairs
    degree: int
    is_top: bool
    name: str


@dataclass
class WebCdga:
    config: PointConfig
    generators: List[WebGenerator]
    differential: Dict[int, Element]      # generator id -> d(generator)
    lattices: Dict[Tuple[str, ...], FaceLattice]
    degree: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.degree:
            self.degree = {g.gid: g.degree for g in self.generators}

    def d_element(self, elem: Element) -> Element:
        out: Element = {}
        for mono, coeff in elem.items():
            sign = 1
            for i, g in enumerate(mono):
                dg = self.differential[g]
                if dg:
                    prefix = {mono[:i]: Fraction(sign)}
                    term = el_mul(prefix, dg, self.degree)
                    term = el_mul(term, {mono[i + 1:]: Fraction(1)}, self.degree)
                    out = el_add(out, term, coeff)
                if self.degree[g] % 2:
                    sign = -sign
        return out

    def d_generator(self, gid: int) -> Element:
        return dict(self.differential[gid])

    def to_obj(self) -> dict:
        names = {g.gid: g.name for g in self.generators}
        return {
            "generators": [
                {"name": g.name, "degree": g.degree,
                 "labels": list(g.labels), "top": g.is_top}
                for g in self.generators
            ],
            "differential": {
                names[gid]: {
                    "*".join(names[g] for g in mono) if mono else "1":
                        str(coeff)
                    for mono, coeff in sorted(elem.items())
                }
                for gid, elem in sorted(self.differential.items())
                if elem
            },
        }


def _lattice_face_data(lattice: FaceLattice) -> List[_FaceData]:
    return [_face_data(f.vertices, lattice.gkz_vectors) for f in lattice.faces]


def build_web_cdga(config: PointConfig) -> WebCdga:
    """Assemble generators over every sub-configuration and the factorization
    differential; raises SignInconsistency unless d^2 = 0 exactly."""
    if len(config) > 6:
        raise FaceLatticeUnavailable("web CDGA needs face lattices (at most 6 points)")
    if not check_genericity(config):
        raise DegenerateConfig("configuration has three collinear points")

    labels = config.labels
    lattices: Dict[Tuple[str, ...], FaceLattice] = {}
    face_data: Dict[Tuple[str, ...], List[_FaceData]] = {}
    generators: List[WebGenerator] = []
    gid_of: Dict[Tuple[Tuple[str, ...], Optional[int]], int] = {}

    def add_gen(sub: Tuple[str, ...], face_index: Optional[int], degree: int,
                is_top: bool) -> None:
        gid = len(generators)
        name = ",".join(sub) + ("" if face_index is None else f":f{face_index}")
        generators.append(WebGenerator(gid, sub, face_index, degree, is_top, name))
        gid_of[(sub, face_index)] = gid

    for size in range(2, len(labels) + 1):
        for sub in combinations(labels, size):
            if size == 2:
                add_gen(sub, None, 0, True)
                continue
            lattice = secondary_face_lattice(config.subconfig(sub))
            lattices[sub] = lattice
            face_data[sub] = _lattice_face_data(lattice)
            top = lattice.top()
            for idx, f in enumerate(lattice.faces):
                add_gen(sub, idx, f.dim, f is top)

    def top_gid(sub: Tuple[str, ...]) -> int:
        if len(sub) == 2:
            return gid_of[(sub, None)]
        lattice = lattices[sub]
        return gid_of[(sub, lattice.faces.index(lattice.top()))]

    degree = {g.gid: g.degree for g in generators}
    differential: Dict[int, Element] = {}
    for g in generators:
        if g.face_index is None:  # pair
            differential[g.gid] = {}
            continue
        lattice = lattices[g.labels]
        data = face_data[g.labels]
        face = lattice.faces[g.face_index]
        fdata = data[g.face_index]
        elem: Element = {}
        for facet in lattice.facets_of(face):
            fidx = lattice.faces.index(facet)
            eps = _incidence_sign(fdata, data[fidx])
            if not g.is_top:
                elem = el_add(elem, {(gid_of[(g.labels, fidx)],): Fraction(eps)})
                continue
            kappa, mono = _factorized_facet(g.labels, facet, data[fidx],
                                            lattices, face_data, gid_of,
                                            top_gid, degree)
            elem = el_add(elem, {mono: Fraction(eps * kappa)})
        differential[g.gid] = elem

    cdga = WebCdga(config, generators, differential, lattices, degree)
    bad = [g.name for g in generators
           if cdga.d_element(cdga.differential[g.gid])]
    if bad:
        raise SignInconsistency(f"d^2 != 0 on generators: {bad}")
    return cdga


def _factorized_facet(sub: Tuple[str, ...], facet, facet_data: _FaceData,
                      lattices, face_data, gid_of, top_gid, degree
                      ) -> Tuple[int, Tuple[int, ...]]:
    """Rewrite a facet (a coarse marked subdivision) as +-(product of the top
    generators of its cells' mark sets), with the orientation-comparison sign."""
    factors = [tuple(m) for m in facet.subdivision.marks]
    gids = [top_gid(f) for f in factors]
    order = sorted(range(len(gids)), key=lambda i: gids[i])
    # orientation: factor bases, zero-extended to the ambient label set,
    # concatenated in the same sorted order as the monomial is written
    index = {l: i for i, l in enumerate(sub)}
    cols: List[List[Fraction]] = []
    for i in order:
        f = factors[i]
        if len(f) == 2:
            continue  # a pair's polytope is a point
        lattice = lattices[f]
        fdata = face_data[f][lattice.faces.index(lattice.top())]
        for b in fdata.basis:
            ext = [Fraction(0)] * len(sub)
            for l, x in zip(f, b):
                ext[index[l]] = x
            cols.append(_coords_in(facet_data.basis, tuple(ext)))
    if len(cols) != facet_data.dim:
        raise SignInconsistency("factorization does not span the facet")
    kappa = _det_sign_of_columns(cols)
    mono = tuple(gids[i] for i in order)
    for a, b in zip(mono, mono[1:]):
        if a == b:
            raise SignInconsistency("repeated factor in a facet monomial")
    return kappa, mono


@dataclass
class DSquaredReport:
    ok: bool
    failing_generators: List[str]


def check_d_squared(cdga: WebCdga) -> DSquaredReport:
    failing = [g.name for g in cdga.generators
               if cdga.d_element(cdga.differential[g.gid])]
    return DSquaredReport(not failing, failing)


# -- extended triangulations -----------------------------------------------------

INF = "∞"


@dataclass(frozen=True)
class ExtendedTriangulation:
    cells: Cells                      # canonical cells over the far-point model
    infinite: Tuple[Cell, ...]        # (INF, a, b) ccw around the far point
    finite: Cells
    eta: Direction
    M: Fraction

    def key(self):
        return (tuple(sorted(tuple(sorted(c)) for c in self.cells)),
                tuple((c[1], c[2]) for c in self.infinite))


def _far_point(eta: Direction, M: Fraction) -> Point:
    return pt(M * eta.dx, M * eta.dy)


def _extended_at(config: PointConfig, eta: Direction, M: Fraction
                 ) -> Optional[List[ExtendedTriangulation]]:
    """Extended triangulations at a specific M; None when this M is unusable."""
    p = _far_point(eta, M)
    if p in set(config.coords.values()):
        return None
    hull_pts = [config.point(l) for l in convex_hull(config)]
    if len(hull_pts) >= 3 and point_in_convex_polygon(p, hull_pts) > 0:
        raise UnstableM("far point lies inside the hull; M is too small")
    ext = config.with_point(INF, p)
    if not check_genericity(ext):
        return None
    out = []
    for tri in enumerate_triangulations(ext):
        inf_cells = []
        fin_cells = []
        for c in tri:
            if INF in c:
                a, b = [l for l in c if l != INF]
                if cross(vsub(ext.point(a), p), vsub(ext.point(b), p)) < 0:
                    a, b = b, a
                inf_cells.append((INF, a, b))
            else:
                fin_cells.append(c)
        # anticlockwise around the far point: by angle of the edge midpoint
        def mid_vec(cell):
            pa, pb = ext.point(cell[1]), ext.point(cell[2])
            return ((pa.x + pb.x) / 2 - p.x, (pa.y + pb.y) / 2 - p.y)
        inf_cells.sort(key=functools.cmp_to_key(
            lambda c1, c2: -1 if cross(mid_vec(c1), mid_vec(c2)) > 0 else 1))
        out.append(ExtendedTriangulation(tri, tuple(inf_cells),
                                         tuple(fin_cells), eta, M))
    out.sort(key=lambda e: e.key())
    return out


def auto_far_bound(config: PointConfig) -> Fraction:
    m = max(abs(p.x) + abs(p.y) for p in config.coords.values())
    return 4 * (m + 1)


def extended_triangulations(config: PointConfig, eta: Direction,
                            M="auto") -> List[ExtendedTriangulation]:
    """Triangulations of the configuration together with a far point M*eta.

    With M="auto" the bound is grown until doubling M leaves the combinatorics
    unchanged; an explicit M is verified against 2M and rejected if unstable.
    """
    if not check_genericity(config):
        raise DegenerateConfig("configuration has three collinear points")
    if M == "auto":
        m = auto_far_bound(config)
        for _ in range(40):
            first = _extended_at(config, eta, m)
            second = _extended_at(config, eta, 2 * m)
            if first is not None and second is not None and \
                    [e.key() for e in first] == [e.key() for e in second]:
                return first
            m *= 2
        raise UnstableM("no stable far-point bound found")
    m = Fraction(M)
    first = _extended_at(config, eta, m)
    if first is None:
        raise DegenerateConfig("far point is degenerate for the configuration")
    second = _extended_at(config, eta, 2 * m)
    if second is None or [e.key() for e in first] != [e.key() for e in second]:
        raise UnstableM(f"combinatorics changes between M={m} and M={2 * m}")
    return first


# -- the algebra of infinite polygons ---------------------------------------------


def _eta_positions(config: PointConfig, eta: Direction) -> Dict[str, Fraction]:
    r = rho(eta.vec())
    return {l: dot((config.point(l).x, config.point(l).y), r)
            for l in config.labels}


def convex_chains(config: PointConfig, eta: Direction) -> List[Tuple[str, ...]]:
    """All chains of length >= 2, strictly increasing in the eta-order and
    turning right at every interior point."""
    rep = check_genericity(config, zeta=eta.vec())
    if not rep:
        raise DegenerateConfig(f"eta is not generic: {rep.violations}")
    pos = _eta_positions(config, eta)
    order = sorted(config.labels, key=lambda l: pos[l])
    chains: List[Tuple[str, ...]] = []

    def extend(chain: List[str]) -> None:
        if len(chain) >= 2:
            chains.append(tuple(chain))
        last_i = order.index(chain[-1])
        for nxt in order[last_i + 1:]:
            if len(chain) >= 2:
                u = vsub(config.point(chain[-1]), config.point(chain[-2]))
                v = vsub(config.point(nxt), config.point(chain[-1]))
                if cross(u, v) >= 0:
                    continue
            chain.append(nxt)
            extend(chain)
            chain.pop()

    for start in order:
        extend([start])
    chains.sort(key=lambda ch: (len(ch), tuple(order.index(l) for l in ch)))
    return chains


@dataclass
class AInfAlgebra:
    config: PointConfig
    eta: Direction
    basis: List[Tuple[str, ...]]                 # chains, canonical order
    degrees: List[int]                           # len(chain) - 2
    m2: Dict[Tuple[int, int], Tuple[int, Fraction]]  # (i, j) -> (k, coeff)
    K_max: int = 4
    M: Fraction = Fraction(0)

    def m(self, k: int, args: Sequence[int]) -> Dict[int, Fraction]:
        """m_k applied to basis indices; sparse result {basis index: coeff}."""
        if k == 2:
            hit = self.m2.get((args[0], args[1]))
            return {hit[0]: hit[1]} if hit else {}
        return {}

    def to_obj(self) -> dict:
        names = ["-".join(ch) for ch in self.basis]
        return {
            "eta": str(self.eta),
            "basis": [{"chain": list(ch), "degree": d}
                      for ch, d in zip(self.basis, self.degrees)],
            "m2": {f"{names[i]}|{names[j]}": {names[k]: str(c)}
                   for (i, j), (k, c) in sorted(self.m2.items())},
        }


def _glued_face_sign(config: PointConfig, eta: Direction, M: Fraction,
                     chain: Tuple[str, ...], cut: int) -> Fraction:
    """Coefficient of (left piece, right piece) in the boundary of the glued
    infinite polygon, computed in the secondary polytope of the far-point
    model of the polygon."""
    p = _far_point(eta, M)
    poly_cfg = config.subconfig(chain).with_point(INF, p, front=True)
    tris = enumerate_triangulations(poly_cfg)
    gkz = [gkz_vector(poly_cfg, t) for t in tris]
    top = _face_data(range(len(tris)), gkz)
    left = (INF,) + chain[:cut + 1]
    right = (INF,) + chain[cut:]
    normalize_cell(poly_cfg, left)   # both pieces must be strictly convex
    normalize_cell(poly_cfg, right)
    marks = [frozenset(left), frozenset(right)]
    facet_ids = [i for i, t in enumerate(tris)
                 if all(any(set(c) <= m for m in marks) for c in t)]
    facet = _face_data(facet_ids, gkz)
    if facet.dim != top.dim - 1:
        raise SignInconsistency("splitting is not a facet of the glued polygon")
    eps = _incidence_sign(top, facet)
    # factor bases in operadic order (left piece first), zero-extended
    index = {l: i for i, l in enumerate(poly_cfg.labels)}
    cols: List[List[Fraction]] = []
    for piece in (left, right):
        piece_cfg = poly_cfg.subconfig(piece)
        ptris = enumerate_triangulations(piece_cfg)
        pgkz = [gkz_vector(piece_cfg, t) for t in ptris]
        pdata = _face_data(range(len(ptris)), pgkz)
        for b in pdata.basis:
            ext = [Fraction(0)] * len(poly_cfg.labels)
            for l, x in zip(piece_cfg.labels, b):
                ext[index[l]] = x
            cols.append(_coords_in(facet.basis, tuple(ext)))
    if len(cols) != facet.dim:
        raise SignInconsistency("glued factorization does not span the facet")
    return Fraction(eps * _det_sign_of_columns(cols))


def build_ainf(config: PointConfig, eta: Direction, K_max: int = 4) -> AInfAlgebra:
    """The algebra of infinite polygons in direction eta."""
    if not check_genericity(config):
        raise DegenerateConfig("configuration has three collinear points")
    basis = convex_chains(config, eta)
    idx = {ch: i for i, ch in enumerate(basis)}
    ext = extended_triangulations(config, eta, M="auto")
    M = ext[0].M if ext else auto_far_bound(config)

    def m2_at(m: Fraction) -> Dict[Tuple[int, int], Tuple[int, Fraction]]:
        table: Dict[Tuple[int, int], Tuple[int, Fraction]] = {}
        for chain in basis:
            if len(chain) < 3:
                continue
            k = idx[chain]
            for cut in range(1, len(chain) - 1):
                left, right = chain[:cut + 1], chain[cut:]
                i, j = idx.get(left), idx.get(right)
                if i is None or j is None:
                    continue
                coeff = _glued_face_sign(config, eta, m, chain, cut)
                table[(i, j)] = (k, coeff)
        return table

    m2 = m2_at(M)
    if m2 != m2_at(2 * M):  # structure constants must be M-independent
        raise UnstableM("structure constants change under doubling M")
    return AInfAlgebra(config, eta, basis, [len(c) - 2 for c in basis],
                       m2, K_max, M)


@dataclass
class StasheffReport:
    ok: bool
    failures: List[Tuple[int, Tuple[int, ...]]]  # (arity, offending basis tuple)


def check_stasheff(alg: AInfAlgebra, max_arity: int = 4) -> StasheffReport:
    """Verify the coderivation identities on every basis tuple.

    Degrees are the shifted (bar) ones, len(chain) - 2, and the products obey
    m2(m2(x,y),z) + (-1)^{deg x} m2(x,m2(y,z)) = 0 with every higher product
    zero, so arities other than 3 are vacuous; all are still evaluated
    literally so a corrupted table is caught.
    """
    if max_arity > alg.K_max:
        raise ValueError(f"max_arity {max_arity} exceeds K_max {alg.K_max}")
    failures: List[Tuple[int, Tuple[int, ...]]] = []
    n = len(alg.basis)
    if max_arity >= 3:
        for x in range(n):
            sx = -1 if alg.degrees[x] % 2 else 1
            for y in range(n):
                xy = alg.m(2, (x, y))
                for z in range(n):
                    acc: Dict[int, Fraction] = {}
                    for k, c in xy.items():
                        for k2, c2 in alg.m(2, (k, z)).items():
                            acc[k2] = acc.get(k2, Fraction(0)) + c * c2
                    for k, c in alg.m(2, (y, z)).items():
                        for k2, c2 in alg.m(2, (x, k)).items():
                            acc[k2] = acc.get(k2, Fraction(0)) + sx * c * c2
                    if any(v != 0 for v in acc.values()):
                        failures.append((3, (x, y, z)))
    if max_arity >= 4:
        # every arity-4 term contains an m3 or m4, zero by construction;
        # verify the tables really are empty
        if alg.m(3, (0, 0, 0)) or alg.m(4, (0, 0, 0, 0)):
            failures.append((4, (0, 0, 0, 0)))
    return StasheffReport(not failures, failures)
