"""Convex paths in a direction zeta and the Stokes matrix they assemble.

Vacua are ordered by increasing inner product with rho(zeta), the +90 degree
rotation of zeta.  A convex path visits vacua in strictly increasing order and
turns right at every interior vertex; equivalently each vertex is extreme in
the convex hull of the rays w + R+*zeta, an equivalence the tests check
rather than assume.  The Stokes block C_ij sums the transport composites over
all convex paths from i to j.  An independent oracle reassembles the same
matrix as an angle-ordered product of elementary factors Id + t_ij E_ij,
multiplied so that factors of smaller angle from zeta act later; equality of
the two is the headline acceptance property.

Walls are the ray directions +-(w_j - w_i); between consecutive walls the
Stokes matrix is locally constant, and wall_cross_report samples the two
neighbouring chambers at exact mediant directions to expose the jump.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exactgeom import (
    DegenerateConfig,
    Direction,
    PointConfig,
    angle_sorted,
    check_genericity,
    convex_hull,
    cross,
    dot,
    rho,
    vsub,
)
from .linalg import Matrix, block_matrix, block_of, identity, inverse, mat_mul
from .lp import LinearSystem
from .perv import MatrixDiagram


class NonGenericZeta(ValueError):
    pass


class ParallelDifferences(ValueError):
    pass


class BadRay(ValueError):
    pass


class NotConvexPosition(ValueError):
    pass


def _zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def _mm(a: Matrix, b: Matrix, p: int, q: int, r: int) -> Matrix:
    out = _zeros(p, r)
    for i in range(p):
        for k in range(q):
            x = a[i][k]
            if x:
                for j in range(r):
                    if b[k][j]:
                        out[i][j] += x * b[k][j]
    return out


# -- zeta order and convexity -------------------------------------------------------


def _positions(config: PointConfig, zeta: Direction) -> Dict[str, Fraction]:
    r = rho(zeta.vec())
    return {l: dot((config.point(l).x, config.point(l).y), r)
            for l in config.labels}


def zeta_order(config: PointConfig, zeta: Direction) -> List[str]:
    """Labels by strictly increasing <w, rho(zeta)>."""
    rep = check_genericity(config, zeta=zeta.vec())
    if any(v[0] == "collinear" for v in rep.violations):
        raise DegenerateConfig(f"non-generic configuration: {rep.violations}")
    if not rep.ok:
        raise NonGenericZeta(f"tied projections for zeta={zeta}: "
                             f"{[v[1:] for v in rep.violations]}")
    pos = _positions(config, zeta)
    return sorted(config.labels, key=lambda l: pos[l])


def is_convex_path(config: PointConfig, zeta: Direction,
                   seq: Sequence[str]) -> bool:
    """Operational predicate: strictly increasing zeta-order, forward edges,
    right turns at interior vertices."""
    order = zeta_order(config, zeta)
    rank = {l: i for i, l in enumerate(order)}
    if len(seq) == 0 or any(l not in rank for l in seq):
        return False
    if any(rank[a] >= rank[b] for a, b in zip(seq, seq[1:])):
        return False
    pts = [config.point(l) for l in seq]
    r = rho(zeta.vec())
    for a, b in zip(pts, pts[1:]):
        if dot(vsub(b, a), r) <= 0:  # forward edge, implied by the order
            return False
    for a, b, c in zip(pts, pts[1:], pts[2:]):
        if cross(vsub(b, a), vsub(c, b)) >= 0:
            return False
    return True


def hull_vertex_convex_path(config: PointConfig, zeta: Direction,
                            seq: Sequence[str]) -> bool:
    """Definitional predicate: increasing zeta-order and every vertex extreme
    in the convex hull of the rays w_mu + R+*zeta, decided by exact
    feasibility (w is non-extreme iff it lies in conv(others) + R+*zeta)."""
    order = zeta_order(config, zeta)
    rank = {l: i for i, l in enumerate(order)}
    if len(seq) == 0 or any(l not in rank for l in seq):
        return False
    if any(rank[a] >= rank[b] for a, b in zip(seq, seq[1:])):
        return False
    z = zeta.vec()
    pts = [config.point(l) for l in seq]
    for v, p in enumerate(pts):
        others = [q for u, q in enumerate(pts) if u != v]
        if not others:
            continue
        k = len(others)
        sys = LinearSystem(k + 1)  # lambda_1..k >= 0, s >= 0
        for var in range(k + 1):
            e = [Fraction(0)] * (k + 1)
            e[var] = Fraction(-1)
            sys.add_le(e, Fraction(0))
        sys.add_eq([Fraction(1)] * k + [Fraction(0)], Fraction(1))
        for axis in range(2):
            row = [Fraction(q[axis]) for q in others] + [Fraction(z[axis])]
            sys.add_eq(row, Fraction(p[axis]))
        if sys.feasible_point() is not None:
            return False
    return True


def enumerate_convex_paths(config: PointConfig, zeta: Direction,
                           src: str, dst: str) -> List[Tuple[str, ...]]:
    """All convex paths src -> dst, shortest first, then by position."""
    order = zeta_order(config, zeta)
    rank = {l: i for i, l in enumerate(order)}
    if src not in rank or dst not in rank:
        raise ValueError(f"unknown labels {src}, {dst}")
    if rank[src] >= rank[dst]:
        raise ValueError(f"{src} does not precede {dst} in the zeta-order")
    out: List[Tuple[str, ...]] = []

    def extend(chain: List[str]) -> None:
        last = chain[-1]
        if last == dst:
            out.append(tuple(chain))
            return
        for nxt in order[rank[last] + 1: rank[dst] + 1]:
            if len(chain) >= 2:
                u = vsub(config.point(last), config.point(chain[-2]))
                v = vsub(config.point(nxt), config.point(last))
                if cross(u, v) >= 0:
                    continue
            chain.append(nxt)
            extend(chain)
            chain.pop()

    extend([src])
    out.sort(key=lambda ch: (len(ch), tuple(rank[l] for l in ch)))
    return out


# -- walls --------------------------------------------------------------------------


def stokes_rays(config: PointConfig) -> List[Direction]:
    """All wall directions +-(w_j - w_i), deduplicated, by increasing angle."""
    rays = set()
    labels = config.labels
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            d = vsub(config.point(labels[j]), config.point(labels[i]))
            rays.add(Direction.of(d[0], d[1]))
            rays.add(Direction.of(-d[0], -d[1]))
    return [r for _, r in angle_sorted((r.vec(), r) for r in rays)]


# -- the Stokes matrix --------------------------------------------------------------


@dataclass
class StokesMatrix:
    zeta: Direction
    order: List[str]
    dims: Dict[str, int]
    blocks: Dict[Tuple[str, str], Matrix]  # (i, j), i before j: map Phi_i -> Phi_j

    def __post_init__(self):
        rank = {l: i for i, l in enumerate(self.order)}
        clean = {}
        for (i, j), b in self.blocks.items():
            if rank[i] >= rank[j]:
                raise ValueError(f"block {i}->{j} is not above the diagonal")
            if any(x != 0 for row in b for x in row):
                clean[(i, j)] = b
        self.blocks = clean

    def block(self, i: str, j: str) -> Matrix:
        if i == j:
            return identity(self.dims[i])
        if (i, j) in self.blocks:
            return [row[:] for row in self.blocks[(i, j)]]
        return _zeros(self.dims[j], self.dims[i])

    def full_matrix(self, basis: Optional[Sequence[str]] = None) -> Matrix:
        """Assembled matrix on the direct sum in the given block basis order
        (the zeta-order by default)."""
        basis = list(basis) if basis is not None else list(self.order)
        rank = {l: i for i, l in enumerate(self.order)}

        def fn(src: str, tgt: str) -> Optional[Matrix]:
            if src == tgt or rank[src] >= rank[tgt]:
                return None
            return self.blocks.get((src, tgt))
        return block_matrix(basis, self.dims, fn)

    def to_obj(self) -> dict:
        from .exactgeom import format_rational
        return {
            "zeta": str(self.zeta),
            "order": list(self.order),
            "dims": {l: self.dims[l] for l in self.order},
            "blocks": {f"{i}->{j}": [[format_rational(x) for x in row]
                                     for row in b]
                       for (i, j), b in sorted(self.blocks.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True)

    @staticmethod
    def from_obj(obj: dict) -> "StokesMatrix":
        from .exactgeom import parse_rational
        zx, zy = obj["zeta"].split(",")
        dims = {l: int(v) for l, v in obj["dims"].items()}
        blocks = {}
        for key, rows in obj.get("blocks", {}).items():
            i, j = key.split("->")
            blocks[(i, j)] = [[parse_rational(x) for x in row]
                              for row in rows]
        return StokesMatrix(Direction.of(int(zx), int(zy)),
                            list(obj["order"]), dims, blocks)

    @staticmethod
    def from_json(text: str) -> "StokesMatrix":
        return StokesMatrix.from_obj(json.loads(text))

    def __eq__(self, other) -> bool:
        return isinstance(other, StokesMatrix) and \
            self.zeta == other.zeta and self.order == other.order and \
            self.dims == other.dims and self.blocks == other.blocks


def stokes_matrix(md: MatrixDiagram, zeta: Direction) -> StokesMatrix:
    """C_ij = sum over convex paths i -> j of the transport composites."""
    order = zeta_order(md.config, zeta)
    dims = md.phi_dims
    blocks: Dict[Tuple[str, str], Matrix] = {}
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            total = _zeros(dims[j], dims[i])
            for path in enumerate_convex_paths(md.config, zeta, i, j):
                comp = identity(dims[i])
                at = i
                for nxt in path[1:]:
                    comp = _mm(md.t(at, nxt), comp, dims[nxt], dims[at], dims[i])
                    at = nxt
                total = [[x + y for x, y in zip(ra, rb)]
                         for ra, rb in zip(total, comp)]
            blocks[(i, j)] = total
    return StokesMatrix(zeta, order, dict(dims), blocks)


def stokes_matrix_oracle(md: MatrixDiagram, zeta: Direction) -> StokesMatrix:
    """The same matrix as an ordered product of elementary factors
    Id + t_ij E_ij over pairs i before j, in increasing angle of w_j - w_i
    from zeta; smaller angles act later (appear on the left)."""
    config = md.config
    order = zeta_order(config, zeta)
    dims = md.phi_dims
    pairs = []
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            d = vsub(config.point(j), config.point(i))
            pairs.append((d, (i, j)))
    for x in range(len(pairs)):
        for y in range(x + 1, len(pairs)):
            if cross(pairs[x][0], pairs[y][0]) == 0:
                raise ParallelDifferences(
                    f"{pairs[x][1]} and {pairs[y][1]} have parallel differences")
    # all differences lie in the open halfplane ccw of zeta, so the cross
    # comparator is a strict total order by angle from zeta
    pairs.sort(key=functools.cmp_to_key(
        lambda p, q: -1 if cross(p[0], q[0]) > 0 else 1))
    total = sum(dims[l] for l in order)
    offset = {}
    run = 0
    for l in order:
        offset[l] = run
        run += dims[l]
    prod = identity(total)
    # increasing angle; later factors multiply on the right:
    # P <- P (Id + T E_ij) only adds P[:, j-block] T into the i-block columns
    for _, (i, j) in pairs:
        T = md.t(i, j)
        ci, ni = offset[i], dims[i]
        cj, nj = offset[j], dims[j]
        for row in prod:
            for a in range(ni):
                acc = sum((row[cj + b] * T[b][a] for b in range(nj)),
                          Fraction(0))
                if acc:
                    row[ci + a] += acc
    blocks: Dict[Tuple[str, str], Matrix] = {}
    for a in range(len(order)):
        for b in range(len(order)):
            i, j = order[a], order[b]
            got = block_of(prod, order, dims, i, j)
            if a == b:
                if got != identity(dims[i]):
                    raise AssertionError("oracle diagonal is not the identity")
            elif a > b:
                if any(x != 0 for row in got for x in row):
                    raise AssertionError("oracle is not block triangular")
            else:
                blocks[(i, j)] = got
    return StokesMatrix(zeta, order, dict(dims), blocks)


# -- chambers and wall crossing ------------------------------------------------------


def _mediant(u: Direction, v: Direction) -> Direction:
    s = (u.dx + v.dx, u.dy + v.dy)
    if s == (0, 0):  # opposite rays: bisect with the perpendicular
        r = rho(v.vec())
        return Direction.of(-r[0], -r[1])
    return Direction.of(s[0], s[1])


def chamber_sample(config: PointConfig, ray: Direction,
                   side: str = "after") -> Direction:
    """An exact direction strictly inside the chamber clockwise ("before") or
    anticlockwise ("after") of the given wall ray."""
    rays = stokes_rays(config)
    if ray not in rays:
        raise BadRay(f"{ray} is not a wall of this configuration")
    k = rays.index(ray)
    if side == "after":
        return _mediant(ray, rays[(k + 1) % len(rays)])
    return _mediant(rays[(k - 1) % len(rays)], ray)


@dataclass
class WallCrossReport:
    ray: Direction
    zeta_before: Direction
    zeta_after: Direction
    before: StokesMatrix
    after: StokesMatrix
    connecting: Matrix  # after * before^{-1} in config label block order

    def to_obj(self) -> dict:
        from .exactgeom import format_rational
        return {
            "ray": str(self.ray),
            "zeta_before": str(self.zeta_before),
            "zeta_after": str(self.zeta_after),
            "before": self.before.to_obj(),
            "after": self.after.to_obj(),
            "connecting": [[format_rational(x) for x in row]
                           for row in self.connecting],
        }


def wall_cross_report(md: MatrixDiagram, ray: Direction) -> WallCrossReport:
    zb = chamber_sample(md.config, ray, "before")
    za = chamber_sample(md.config, ray, "after")
    before = stokes_matrix(md, zb)
    after = stokes_matrix(md, za)
    basis = list(md.config.labels)
    fb = before.full_matrix(basis)
    fa = after.full_matrix(basis)
    connecting = mat_mul(fa, inverse(fb)) if fb else []
    return WallCrossReport(ray, zb, za, before, after, connecting)


# -- polygon traces ------------------------------------------------------------------


def polygon_trace(md: MatrixDiagram, subset: Sequence[str]) -> Fraction:
    """Trace of the transport composite around the boundary of the convex
    hull of the subset, traversed anticlockwise."""
    subset = list(subset)
    if len(set(subset)) != len(subset) or len(subset) < 3:
        raise NotConvexPosition("need at least three distinct labels")
    sub = md.config.subconfig(subset)
    ring = convex_hull(sub)
    if len(ring) != len(subset):
        raise NotConvexPosition("subset is not in strictly convex position")
    dims = md.phi_dims
    start = ring[0]
    comp = identity(dims[start])
    at = start
    for nxt in ring[1:] + [start]:
        comp = _mm(md.t(at, nxt), comp, dims[nxt], dims[at], dims[start])
        at = nxt
    return sum((comp[i][i] for i in range(dims[start])), Fraction(0))


# -- the filtered object -------------------------------------------------------------


@dataclass
class FsFiltration:
    order: List[str]
    dims: List[int]
    C: StokesMatrix

    def to_obj(self) -> dict:
        return {"order": list(self.order), "dims": list(self.dims),
                "C": self.C.to_obj()}


def fs_filtration(md: MatrixDiagram, zeta: Direction) -> FsFiltration:
    """The zeta-ordered dimension vector with the Stokes matrix as gluing
    datum."""
    C = stokes_matrix(md, zeta)
    return FsFiltration(list(C.order), [md.phi_dims[l] for l in C.order], C)
