"""Linear-algebra diagrams modeling local systems on the punctured plane.

A GMV diagram keeps one global space Psi of dimension m and, per marked point
i, a space Phi_i of dimension n_i with maps a_i: Phi_i -> Psi and
a'_i: Psi -> Phi_i; it is valid when 1 - a_i a'_i and 1 - a'_i a_i are both
invertible.  A matrix diagram forgets Psi and keeps the rectilinear data it
induces: monodromies mu_i = 1 - a'_i a_i and transports t_ij = a'_j a_i, of
shape n_j x n_i, for every ordered pair.  Matrices are nested lists of
Fraction; zero-dimensional Phi_i are fully supported, so products carry their
shapes explicitly instead of inferring them.

Transport along a path word multiplies the moves right-to-left.  A detour
around p corrects the straight transport by the composite through p: left
adds t_pl t_kp, right subtracts it, so sliding a path across p and back is
exactly the identity.  Winding detours (which would pick up mu_p twists) are
not expressible in this word encoding.

Braid mutations act on the linear spider order carried by the diagram. The
strand passing behind picks up the Picard-Lefschetz correction; the exact
convention is the one under which sigma_k and its inverse cancel, the braid
relations hold, and the characteristic polynomial of the total monodromy is
preserved, all of which the tests enforce.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exactgeom import (
    DegenerateConfig,
    PointConfig,
    check_genericity,
    on_segment,
    parse_rational,
    format_rational,
)
from .linalg import Matrix, block_matrix, charpoly, det, identity, inverse


class InvalidGmv(ValueError):
    pass


class MalformedPath(ValueError):
    pass


class BadGenerator(ValueError):
    pass


# -- shape-explicit matrix helpers (dimensions may be zero) ----------------------


def _zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def _mm(a: Matrix, b: Matrix, p: int, q: int, r: int) -> Matrix:
    """Product of a (p x q) and b (q x r)."""
    out = _zeros(p, r)
    for i in range(p):
        for k in range(q):
            x = a[i][k]
            if x:
                row = b[k]
                for j in range(r):
                    if row[j]:
                        out[i][j] += x * row[j]
    return out


def _madd(a: Matrix, b: Matrix, sign: int = 1) -> Matrix:
    return [[x + sign * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _one_minus(a: Matrix) -> Matrix:
    n = len(a)
    return [[(1 if i == j else 0) - a[i][j] for j in range(n)] for i in range(n)]


def _mat_obj(a: Matrix) -> list:
    return [[format_rational(x) for x in row] for row in a]


def _mat_parse(obj, rows: int, cols: int) -> Matrix:
    m = [[parse_rational(x) for x in row] for row in obj]
    if len(m) != rows or any(len(r) != cols for r in m):
        raise ValueError(f"expected a {rows}x{cols} matrix")
    return m


# -- GMV diagrams -----------------------------------------------------------------


@dataclass
class GmvDiagram:
    config: PointConfig
    psi_dim: int
    phi_dims: Dict[str, int]
    a: Dict[str, Matrix]          # label -> m x n_i
    a_prime: Dict[str, Matrix]    # label -> n_i x m

    def __post_init__(self):
        if self.psi_dim < 0:
            raise ValueError("psi_dim must be nonnegative")
        for l in self.config.labels:
            n = self.phi_dims.get(l)
            if n is None or n < 0:
                raise ValueError(f"missing or negative phi_dim for {l}")
            ai, api = self.a.get(l), self.a_prime.get(l)
            if ai is None or len(ai) != self.psi_dim or \
                    any(len(r) != n for r in ai):
                raise ValueError(f"a[{l}] must be {self.psi_dim}x{n}")
            if api is None or len(api) != n or \
                    any(len(r) != self.psi_dim for r in api):
                raise ValueError(f"a_prime[{l}] must be {n}x{self.psi_dim}")

    def to_obj(self) -> dict:
        return {
            "points": self.config.to_obj()["points"],
            "psi_dim": self.psi_dim,
            "phi_dims": {l: self.phi_dims[l] for l in self.config.labels},
            "a": {l: _mat_obj(self.a[l]) for l in self.config.labels},
            "a_prime": {l: _mat_obj(self.a_prime[l]) for l in self.config.labels},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True)

    @staticmethod
    def from_obj(obj: dict) -> "GmvDiagram":
        config = PointConfig.from_obj({"points": obj["points"]})
        m = int(obj["psi_dim"])
        dims = {l: int(v) for l, v in obj["phi_dims"].items()}
        a = {l: _mat_parse(obj["a"][l], m, dims[l]) for l in config.labels}
        ap = {l: _mat_parse(obj["a_prime"][l], dims[l], m) for l in config.labels}
        return GmvDiagram(config, m, dims, a, ap)

    @staticmethod
    def from_json(text: str) -> "GmvDiagram":
        return GmvDiagram.from_obj(json.loads(text))


@dataclass
class GmvReport:
    ok: bool
    det_psi_side: Dict[str, Fraction]   # det(1 - a_i a'_i)
    det_phi_side: Dict[str, Fraction]   # det(1 - a'_i a_i)
    violations: List[str]

    def __bool__(self):
        return self.ok


def validate_gmv(g: GmvDiagram) -> GmvReport:
    """Check both monodromy factors are invertible at every point."""
    dpsi, dphi, bad = {}, {}, []
    m = g.psi_dim
    for l in g.config.labels:
        n = g.phi_dims[l]
        psi = _one_minus(_mm(g.a[l], g.a_prime[l], m, n, m))
        phi = _one_minus(_mm(g.a_prime[l], g.a[l], n, m, n))
        dpsi[l] = det(psi)
        dphi[l] = det(phi)
        if dpsi[l] == 0 or dphi[l] == 0:
            bad.append(l)
    return GmvReport(not bad, dpsi, dphi, bad)


# -- matrix diagrams ---------------------------------------------------------------


@dataclass
class MatrixDiagram:
    config: PointConfig
    phi_dims: Dict[str, int]
    monodromies: Dict[str, Matrix]               # label -> n_i x n_i, invertible
    transports: Dict[Tuple[str, str], Matrix]    # (i, j) -> t_ij, n_j x n_i
    order: List[str] = field(default_factory=list)  # linear spider order

    def __post_init__(self):
        labels = self.config.labels
        if not self.order:
            self.order = list(labels)
        if sorted(self.order) != sorted(labels):
            raise ValueError("order must be a permutation of the labels")
        rep = check_genericity(self.config)
        if not rep:
            raise DegenerateConfig(f"non-generic configuration: {rep.violations}")
        for l in labels:
            n = self.phi_dims.get(l)
            if n is None or n < 0:
                raise ValueError(f"missing or negative phi_dim for {l}")
            mu = self.monodromies.get(l)
            if mu is None or len(mu) != n or any(len(r) != n for r in mu):
                raise ValueError(f"monodromy at {l} must be {n}x{n}")
            if det(mu) == 0:
                raise ValueError(f"monodromy at {l} is singular")
        for i in labels:
            for j in labels:
                if i == j:
                    continue
                t = self.transports.setdefault((i, j),
                                               _zeros(self.phi_dims[j],
                                                      self.phi_dims[i]))
                if len(t) != self.phi_dims[j] or \
                        any(len(r) != self.phi_dims[i] for r in t):
                    raise ValueError(f"t[{i}->{j}] must be "
                                     f"{self.phi_dims[j]}x{self.phi_dims[i]}")

    def t(self, i: str, j: str) -> Matrix:
        return self.transports[(i, j)]

    def dim(self, l: str) -> int:
        return self.phi_dims[l]

    def copy(self) -> "MatrixDiagram":
        return MatrixDiagram(
            self.config, dict(self.phi_dims),
            {l: [row[:] for row in m] for l, m in self.monodromies.items()},
            {k: [row[:] for row in m] for k, m in self.transports.items()},
            list(self.order))

    def to_obj(self) -> dict:
        return {
            "points": self.config.to_obj()["points"],
            "order": list(self.order),
            "phi_dims": {l: self.phi_dims[l] for l in self.config.labels},
            "monodromies": {l: _mat_obj(self.monodromies[l])
                            for l in self.config.labels},
            "transports": {
                f"{i}->{j}": _mat_obj(t)
                for (i, j), t in sorted(self.transports.items())
                if any(x != 0 for row in t for x in row)
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, sort_keys=True)

    @staticmethod
    def from_obj(obj: dict) -> "MatrixDiagram":
        config = PointConfig.from_obj({"points": obj["points"]})
        dims = {l: int(v) for l, v in obj["phi_dims"].items()}
        mono = {l: _mat_parse(obj["monodromies"][l], dims[l], dims[l])
                for l in config.labels}
        trans = {}
        for key, m in obj.get("transports", {}).items():
            i, j = key.split("->")
            trans[(i, j)] = _mat_parse(m, dims[j], dims[i])
        return MatrixDiagram(config, dims, mono, trans,
                             list(obj.get("order", [])))

    @staticmethod
    def from_json(text: str) -> "MatrixDiagram":
        return MatrixDiagram.from_obj(json.loads(text))


def gmv_to_matrix_diagram(g: GmvDiagram,
                          spider_order: Optional[Sequence[str]] = None
                          ) -> MatrixDiagram:
    """Rectilinear data induced by a GMV diagram: t_ij = a'_j a_i and
    mu_i = 1 - a'_i a_i, read in the given spider order."""
    rep = validate_gmv(g)
    if not rep.ok:
        raise InvalidGmv(f"monodromy factors are singular at: {rep.violations}")
    m = g.psi_dim
    dims = g.phi_dims
    mono = {l: _one_minus(_mm(g.a_prime[l], g.a[l], dims[l], m, dims[l]))
            for l in g.config.labels}
    trans = {}
    for i in g.config.labels:
        for j in g.config.labels:
            if i != j:
                trans[(i, j)] = _mm(g.a_prime[j], g.a[i], dims[j], m, dims[i])
    order = list(spider_order) if spider_order is not None else list(g.config.labels)
    return MatrixDiagram(g.config, dict(dims), mono, trans, order)


def realize_matrix_diagram(md: MatrixDiagram) -> GmvDiagram:
    """A canonical GMV diagram inducing the given rectilinear data, with
    Psi the direct sum of the Phi_i."""
    labels = md.config.labels
    dims = md.phi_dims
    m = sum(dims[l] for l in labels)
    offset, at = {}, 0
    for l in labels:
        offset[l] = at
        at += dims[l]
    a: Dict[str, Matrix] = {}
    ap: Dict[str, Matrix] = {}
    for i in labels:
        n = dims[i]
        col = _zeros(m, n)
        for r in range(n):
            col[offset[i] + r][r] = Fraction(1)
        a[i] = col
    for j in labels:
        n = dims[j]
        row = _zeros(n, m)
        for k in labels:
            block = _one_minus(md.monodromies[j]) if k == j else md.t(k, j)
            for r in range(n):
                for c in range(dims[k]):
                    row[r][offset[k] + c] = block[r][c]
        ap[j] = row
    return GmvDiagram(md.config, m, dict(dims), a, ap)


# -- transport along path words ----------------------------------------------------


@dataclass(frozen=True)
class Straight:
    src: str
    dst: str


@dataclass(frozen=True)
class Detour:
    src: str
    dst: str
    around: str
    side: str  # "left" or "right"


Move = Union[Straight, Detour]


@dataclass
class PathWord:
    source: str
    target: str
    moves: List[Move]


def _validate_path(md: MatrixDiagram, path: PathWord) -> None:
    labels = set(md.config.labels)
    if not path.moves:
        raise MalformedPath("empty move list")
    at = path.source
    for mv in path.moves:
        if mv.src != at:
            raise MalformedPath(f"move starts at {mv.src}, path is at {at}")
        if mv.src not in labels or mv.dst not in labels or mv.src == mv.dst:
            raise MalformedPath(f"bad endpoints {mv.src}->{mv.dst}")
        if isinstance(mv, Detour):
            if mv.around in (mv.src, mv.dst) or mv.around not in labels:
                raise MalformedPath(f"bad detour point {mv.around}")
            if mv.side not in ("left", "right"):
                raise MalformedPath(f"bad side {mv.side}")
        else:
            p, q = md.config.point(mv.src), md.config.point(mv.dst)
            for l in labels - {mv.src, mv.dst}:
                if on_segment(md.config.point(l), p, q):
                    raise MalformedPath(f"{l} blocks the segment "
                                        f"{mv.src}->{mv.dst}")
        at = mv.dst
    if at != path.target:
        raise MalformedPath(f"path ends at {at}, declared {path.target}")


def transport(md: MatrixDiagram, path: PathWord) -> Matrix:
    """Composite transport of the word, later moves acting on the left.

    Straight(k->l) is t_kl; a detour around p corrects it by the composite
    through p, +t_pl t_kp on the left and -t_pl t_kp on the right, so the two
    rewrites around the same point cancel exactly.
    """
    _validate_path(md, path)
    dims = md.phi_dims
    acc: Optional[Matrix] = None
    acc_src = path.source
    for mv in path.moves:
        k, l = mv.src, mv.dst
        step = [row[:] for row in md.t(k, l)]
        if isinstance(mv, Detour):
            p = mv.around
            corr = _mm(md.t(p, l), md.t(k, p), dims[l], dims[p], dims[k])
            step = _madd(step, corr, 1 if mv.side == "left" else -1)
        if acc is None:
            acc = step
        else:
            acc = _mm(step, acc, dims[l], dims[k], dims[acc_src])
    return acc


# -- braid mutations ---------------------------------------------------------------


def braid_mutate(md: MatrixDiagram, k: int, inverse: bool = False
                 ) -> MatrixDiagram:
    """Apply sigma_k (or its inverse) to the spider order: strands k and k+1
    (1-based) swap, the strand passing behind picking up the correction
    through the other."""
    n = len(md.order)
    if not isinstance(k, int) or not 1 <= k < n:
        raise BadGenerator(f"sigma_{k} needs 1 <= k < {n}")
    out = md.copy()
    P, Q = md.order[k - 1], md.order[k]
    out.order[k - 1], out.order[k] = Q, P
    dims = md.phi_dims
    nP, nQ = dims[P], dims[Q]
    others = [l for l in md.config.labels if l not in (P, Q)]
    if not inverse:
        muP_inv = inverse_mu(md, P)
        for i in others:
            corr = mat_chain3(md.t(P, Q), muP_inv, md.t(i, P), nQ, nP, dims[i])
            out.transports[(i, Q)] = _madd(md.t(i, Q), corr, 1)
        for j in others:
            corr = _mm(md.t(P, j), md.t(Q, P), dims[j], nP, nQ)
            out.transports[(Q, j)] = _madd(md.t(Q, j), corr, -1)
        out.transports[(Q, P)] = _mm(md.monodromies[P], md.t(Q, P), nP, nP, nQ)
        out.transports[(P, Q)] = _mm(md.t(P, Q), muP_inv, nQ, nP, nP)
    else:
        muQ_inv = inverse_mu(md, Q)
        for i in others:
            corr = _mm(md.t(Q, P), md.t(i, Q), nP, nQ, dims[i])
            out.transports[(i, P)] = _madd(md.t(i, P), corr, -1)
        for j in others:
            corr = mat_chain3(md.t(Q, j), muQ_inv, md.t(P, Q), dims[j], nQ, nP)
            out.transports[(P, j)] = _madd(md.t(P, j), corr, 1)
        out.transports[(P, Q)] = _mm(muQ_inv, md.t(P, Q), nQ, nQ, nP)
        out.transports[(Q, P)] = _mm(md.t(Q, P), md.monodromies[Q], nP, nQ, nQ)
    return out


def inverse_mu(md: MatrixDiagram, l: str) -> Matrix:
    n = md.phi_dims[l]
    return inverse(md.monodromies[l]) if n else []


def mat_chain3(a: Matrix, b: Matrix, c: Matrix, p: int, q: int, r: int) -> Matrix:
    """a (p x q) * b (q x q) * c (q x r)."""
    return _mm(_mm(a, b, p, q, q), c, p, q, r)


def braid_word(md: MatrixDiagram, word: Sequence[Tuple[int, bool]]
               ) -> MatrixDiagram:
    """Apply generators left to right; each item is (k, inverse)."""
    for k, inv in word:
        md = braid_mutate(md, k, inv)
    return md


# -- total monodromy ---------------------------------------------------------------


def total_monodromy(md: MatrixDiagram,
                    order: Optional[Sequence[str]] = None) -> Matrix:
    """Composite of the local monodromy contributions in the given order
    (the diagram's spider order by default), on the direct sum of the Phi_i
    in configuration label order."""
    labels = md.config.labels
    dims = md.phi_dims
    if order is None:
        order = md.order
    if sorted(order) != sorted(labels):
        raise ValueError("order must be a permutation of the labels")

    def local(i: str) -> Matrix:
        def block(src: str, tgt: str) -> Optional[Matrix]:
            if tgt != i:
                return None  # identity row elsewhere
            if src == i:
                return md.monodromies[i]
            t = md.t(src, i)
            return [[-x for x in row] for row in t]
        return block_matrix(labels, dims, block)

    # written left to right in spider order: T = L_{o_1} L_{o_2} ... L_{o_N};
    # this is the composite under which braid mutations act by conjugation
    total = identity(sum(dims[l] for l in labels))
    for l in reversed(order):
        total = _mm(local(l), total, len(total), len(total), len(total))
    return total


def monodromy_charpoly(md: MatrixDiagram,
                       order: Optional[Sequence[str]] = None) -> List[Fraction]:
    return charpoly(total_monodromy(md, order))
