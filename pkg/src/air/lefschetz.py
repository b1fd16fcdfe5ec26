"""One-variable superpotentials: critical data, root tracking, exact output.

This is the only module that touches floating point.  Roots of W' come from
companion-matrix eigenvalues and are polished by high-precision Newton until
the residual drops below 1e-30; fibers W(x) = p are tracked along polylines
by a predictor-corrector loop whose steps halve until Newton stays well
inside the current root separation.  Everything exported downstream is
snapped to exact rationals or integers, with hard failure when a snap is
ambiguous, so the exact modules never see a float.

The vanishing class of a critical value is the difference [p] - [q] of the
two fiber roots that collide there, the pair ordered by the angle at which
the roots approach the critical point.  Transport to a segment midpoint and
the integer pairing <[p]-[q], [r]-[s]> = d_pr + d_qs - d_ps - d_qr give the
rank-one transports; local loops give mu = -1.  Absolute signs are
convention-relative, so tests pin magnitudes and composite identities.
"""

from __future__ import annotations

import cmath
import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .exactgeom import DegenerateConfig, PointConfig, parse_rational
from .perv import MatrixDiagram


class NotMorse(ValueError):
    pass


class CriticalValueCollision(ValueError):
    pass


class PathTooClose(ValueError):
    pass


class StepUnderflow(RuntimeError):
    pass


class SnapFailure(ValueError):
    pass


class CollinearCriticalValues(DegenerateConfig):
    pass


# -- polynomials over the rationals --------------------------------------------------


@dataclass(frozen=True)
class Superpotential:
    coefficients: Tuple[Fraction, ...]  # ascending degree

    def __post_init__(self):
        if len(self.coefficients) < 3:
            raise ValueError("degree must be at least 2")
        if self.coefficients[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @staticmethod
    def of(coeffs: Sequence) -> "Superpotential":
        return Superpotential(tuple(parse_rational(c) if isinstance(c, str)
                                    else Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: complex) -> complex:
        w = 0j
        for c in reversed(self.coefficients):
            w = w * x + complex(c)
        return w

    def to_obj(self) -> list:
        from .exactgeom import format_rational
        return [format_rational(c) for c in self.coefficients]


def _derivative(coeffs: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(k * c for k, c in enumerate(coeffs))[1:]


def _poly_gcd_degree(a: List[Fraction], b: List[Fraction]) -> int:
    """Degree of gcd(a, b) over the rationals, by the Euclidean algorithm."""
    a, b = [list(x) for x in (a, b)]
    while b and all(c == 0 for c in b):
        b = []
    while b:
        while a and a[-1] == 0:
            a.pop()
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        if len(a) < len(b):
            a, b = b, a
            continue
        lead = b[-1]
        shift = len(a) - len(b)
        q = a[-1] / lead
        for i in range(len(b)):
            a[i + shift] -= q * b[i]
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return max(len(a) - 1, 0)


def _ceval(coeffs_desc: List[complex], x: complex) -> complex:
    w = 0j
    for c in coeffs_desc:
        w = w * x + c
    return w


# -- critical data -------------------------------------------------------------------


@dataclass
class FiberBasis:
    basepoint: complex
    roots: List[complex]
    sep: float  # certified separation radius; pairwise distances > 3*sep


@dataclass
class CriticalData:
    points: List[complex]       # roots of W', sorted by critical value
    values: List[complex]       # W at each, double precision
    values_mp: List            # the same at 1e-30 residual precision
    pairing: List[Tuple[int, int]]  # colliding root pair per value, in basis
    basis: FiberBasis           # fiber basis at the canonical basepoint


def _scale(ws: Sequence[complex]) -> float:
    return 1.0 + max((abs(w) for w in ws), default=0.0)


def _min_pairwise(xs: Sequence[complex]) -> float:
    return min((abs(a - b) for a, b in itertools.combinations(xs, 2)),
               default=math.inf)


def _newton_mp(coeffs: Sequence[Fraction], seed: complex):
    """Polish a root of the rational polynomial to residual below 1e-30."""
    with mpmath.workdps(60):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in coeffs]
        ds = _derivative_mp(cs)
        z = mpmath.mpc(seed)
        for _ in range(200):
            f = _horner_mp(cs, z)
            if abs(f) < mpmath.mpf("1e-32"):
                break
            d = _horner_mp(ds, z)
            if d == 0:
                raise NotMorse("Newton stalled on a degenerate root")
            z = z - f / d
        if abs(_horner_mp(cs, z)) >= mpmath.mpf("1e-30"):
            raise NotMorse("critical point refinement did not converge")
        return z


def _horner_mp(cs_ascending, z):
    w = mpmath.mpc(0)
    for c in reversed(cs_ascending):
        w = w * z + c
    return w


def _derivative_mp(cs_ascending):
    return [k * c for k, c in enumerate(cs_ascending)][1:]


def _fiber_newton(wc_desc: List[complex], dc_desc: List[complex],
                  p: complex, x: complex) -> Optional[complex]:
    for _ in range(60):
        f = _ceval(wc_desc, x) - p
        d = _ceval(dc_desc, x)
        if d == 0:
            return None
        step = f / d
        x -= step
        if abs(step) < 1e-14 * (1.0 + abs(x)):
            return x
    return None


def _coeffs_desc(W: Superpotential) -> List[complex]:
    return [complex(c) for c in reversed(W.coefficients)]


def fiber_basis(W: Superpotential, p: complex) -> FiberBasis:
    """Roots of W(x) = p, polished and sorted, with separation radius."""
    wc = _coeffs_desc(W)
    dc = [complex(c) for c in reversed(_derivative(W.coefficients))]
    shifted = list(wc)
    shifted[-1] -= p
    raw = np.roots(shifted)
    roots = []
    for r in raw:
        x = _fiber_newton(wc, dc, p, complex(r))
        if x is None:
            raise PathTooClose(f"fiber at {p} did not refine")
        roots.append(x)
    roots.sort(key=lambda z: (z.real, z.imag))
    mp = _min_pairwise(roots)
    if not mp > 1e-9 * _scale(roots):
        raise PathTooClose(f"fiber at {p} is nearly critical")
    return FiberBasis(complex(p), roots, mp / 4.0)


@functools.lru_cache(maxsize=64)
def _critical_core(coeffs: Tuple[Fraction, ...]):
    W = Superpotential(coeffs)
    dW = _derivative(W.coefficients)
    ddW = _derivative(dW)
    if _poly_gcd_degree(list(dW), list(ddW)) > 0:
        raise NotMorse("W' has a repeated root")
    raw = np.roots([complex(c) for c in reversed(dW)])
    zs = [_newton_mp(dW, complex(r)) for r in raw]
    ws_mp = []
    with mpmath.workdps(60):
        cs = [mpmath.mpf(c.numerator) / c.denominator for c in W.coefficients]
        for z in zs:
            ws_mp.append(_horner_mp(cs, z))
    order = sorted(range(len(zs)),
                   key=lambda k: (float(ws_mp[k].real), float(ws_mp[k].imag)))
    zs = [zs[k] for k in order]
    ws_mp = [ws_mp[k] for k in order]
    ws = [complex(float(w.real), float(w.imag)) for w in ws_mp]
    s = _scale(ws)
    for a, b in itertools.combinations(ws_mp, 2):
        if abs(a - b) < 1e-20 * s:
            raise CriticalValueCollision("two critical values coincide")
    return zs, ws, ws_mp


def _basepoint(ws: Sequence[complex]) -> complex:
    """A point well below the critical values from which every straight leg
    to a critical value clears all the others."""
    c = sum(ws) / len(ws)
    spread = max(abs(w - c) for w in ws)
    d = 2.0 * spread + 1.0 + 0.25 * _scale(ws)
    clearance = 1e-5 * _scale(ws)
    for k in range(64):
        p0 = c + d * cmath.exp(1j * (-math.pi / 2 + 0.37 * k))
        if all(_segment_distance(p0, wi, wj) > clearance
               for i, wi in enumerate(ws)
               for j, wj in enumerate(ws) if i != j):
            return p0
    raise PathTooClose("no clear basepoint direction found")


def critical_data(W: Superpotential) -> CriticalData:
    """Critical points and values of W, plus the colliding fiber pair at
    each critical value, identified from a common basepoint below them."""
    zs_mp, ws, ws_mp = _critical_core(W.coefficients)
    ws = list(ws)  # the core result is cached; do not hand out the originals
    zs = [complex(float(z.real), float(z.imag)) for z in zs_mp]
    p0 = _basepoint(ws)
    basis = fiber_basis(W, p0)
    pairing = []
    for i, w in enumerate(ws):
        pr, _ = _vanishing_pair(W, basis, w, zs[i])
        pairing.append(pr)
    return CriticalData(zs, ws, list(ws_mp), pairing, basis)


def _vanishing_pair(W: Superpotential, basis: FiberBasis, w: complex,
                    z: complex,
                    max_step: float = 0.25) -> Tuple[Tuple[int, int],
                                                     List[complex]]:
    """Track the fiber from the basis basepoint straight toward the critical
    value w, stopping short; return the colliding pair as basis indices,
    ordered by approach angle at the critical point z, plus the stop fiber."""
    d = w - basis.basepoint
    if d == 0:
        raise PathTooClose("basepoint sits on a critical value")
    delta = 1e-4 * _scale([w, basis.basepoint])
    for _ in range(4):
        stop = w - delta * d / abs(d)
        res = track_fiber(W, [basis.basepoint, stop], basis, max_step)
        xs = res.roots
        pairs = sorted(itertools.combinations(range(len(xs)), 2),
                       key=lambda pq: abs(xs[pq[0]] - xs[pq[1]]))
        (p, q) = pairs[0]
        best = abs(xs[p] - xs[q])
        second = abs(xs[pairs[1][0]] - xs[pairs[1][1]]) if len(pairs) > 1 \
            else math.inf
        if best < 0.25 * second:
            theta = cmath.phase(xs[p] - z)  # in (-pi, pi]
            if not 0 <= theta < math.pi:
                p, q = q, p
            return (p, q), xs
        delta /= 16.0
    raise PathTooClose(f"could not isolate the vanishing pair at {w}")


# -- root tracking -------------------------------------------------------------------


@dataclass
class TrackResult:
    roots: List[complex]          # end fiber, ordered by starting index
    perm: Optional[List[int]]     # for closed paths: end index k sits at
    #                               basis position perm[k]


def _as_complex_path(path: Sequence) -> List[complex]:
    out = []
    for p in path:
        if isinstance(p, complex):
            out.append(p)
        elif isinstance(p, (int, float)):
            out.append(complex(p))
        else:
            out.append(complex(float(p[0]), float(p[1])))
    return out


def track_fiber(W: Superpotential, path: Sequence, basis: FiberBasis,
                max_step: float = 0.25) -> TrackResult:
    """Continue all fiber roots along the polyline by predictor-corrector
    steps, halving the step until Newton stays well inside the current
    separation.  For closed paths the end-to-start matching is returned."""
    pts = _as_complex_path(path)
    if len(pts) < 1:
        raise ValueError("empty path")
    if abs(pts[0] - basis.basepoint) > basis.sep:
        raise ValueError("path must start at the basis basepoint")
    _, ws, _ = _critical_core(W.coefficients)
    s = _scale(ws + pts)
    margin = 1e-9 * s
    for a, b in zip(pts, pts[1:]):
        for w in ws:
            if _segment_distance(a, b, w) < margin:
                raise PathTooClose(f"path passes within {margin} of {w}")
    wc = _coeffs_desc(W)
    dc = [complex(c) for c in reversed(_derivative(W.coefficients))]
    xs = list(basis.roots)
    for a, b in zip(pts, pts[1:]):
        if a == b:
            continue
        t, h = 0.0, max_step
        while t < 1.0:
            step = min(h, 1.0 - t)
            target = a + (t + step) * (b - a)
            sep_now = _min_pairwise(xs)
            nxt = []
            ok = True
            for x in xs:
                y = _fiber_newton(wc, dc, target, x)
                if y is None or abs(y - x) > sep_now / 3.0:
                    ok = False
                    break
                nxt.append(y)
            if ok and _min_pairwise(nxt) < 1e-9 * s:
                ok = False
            if ok:
                xs = nxt
                t += step
                h = min(h * 2.0, max_step)
            else:
                h /= 2.0
                if h < 1e-9:
                    raise StepUnderflow(f"step collapsed near {target}")
    perm = None
    if pts[-1] == pts[0]:
        perm = []
        for x in xs:
            dists = [abs(x - r) for r in basis.roots]
            j = min(range(len(dists)), key=dists.__getitem__)
            if dists[j] > basis.sep:
                raise StepUnderflow("end fiber does not match the basis")
            perm.append(j)
        if sorted(perm) != list(range(len(xs))):
            raise StepUnderflow("end matching is not a permutation")
    return TrackResult(xs, perm)


def _segment_distance(a: complex, b: complex, w: complex) -> float:
    if a == b:
        return abs(w - a)
    t = ((w - a) / (b - a)).real
    t = min(max(t, 0.0), 1.0)
    return abs(w - (a + t * (b - a)))


def _circle(center: complex, through: complex, segments: int = 24,
            clockwise: bool = False) -> List[complex]:
    r = through - center
    sgn = -1.0 if clockwise else 1.0
    pts = [center + r * cmath.exp(sgn * 2j * math.pi * k / segments)
           for k in range(segments)]
    return pts + [through]  # close the loop exactly


def loop_permutation(W: Superpotential, center: complex, basepoint: complex,
                     max_step: float = 0.25) -> List[int]:
    """Permutation of the fiber at basepoint from one anticlockwise circle
    around center through the basepoint."""
    basis = fiber_basis(W, basepoint)
    res = track_fiber(W, _circle(center, basepoint), basis, max_step)
    return res.perm


# -- exact output --------------------------------------------------------------------


def _snap_value(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10 ** 6)


def _vanishing_class(W: Superpotential, basis: FiberBasis, w: complex,
                     z: complex, max_step: float = 0.25) -> Dict[int, int]:
    (p, q), _ = _vanishing_pair(W, basis, w, z, max_step)
    return {p: 1, q: -1}


def matrix_diagram_from_W(W: Superpotential,
                          max_step: float = 0.25) -> MatrixDiagram:
    """Rank-one matrix diagram on the snapped critical values: transports
    are integer intersection pairings of vanishing classes tracked to the
    midpoint of each pair of critical values, monodromies are -1.

    The result carries a `snap_error` attribute, the largest distance moved
    by any coordinate when the critical values were snapped to rationals
    with denominator at most 10^6 (zero when exactly representable)."""
    data = critical_data(W)
    ws, zs = data.values, data.points
    n = len(ws)
    labels = [f"w{i + 1}" for i in range(n)]
    snapped = [(_snap_value(w.real), _snap_value(w.imag)) for w in ws]
    snap_error = max(max(abs(float(sx) - w.real), abs(float(sy) - w.imag))
                     for (sx, sy), w in zip(snapped, ws))
    if len(set(snapped)) != n:
        raise CriticalValueCollision("critical values collide after snapping")
    config = PointConfig.of([(labels[i], snapped[i][0], snapped[i][1])
                             for i in range(n)])
    if n >= 3:
        from .exactgeom import check_genericity
        rep = check_genericity(config)
        if not rep.ok:
            raise CollinearCriticalValues(f"critical values: {rep.violations}")
    transports: Dict[Tuple[str, str], List[List[Fraction]]] = {}
    for i, j in itertools.combinations(range(n), 2):
        mid = (ws[i] + ws[j]) / 2.0
        basis = fiber_basis(W, mid)
        vi = _vanishing_class(W, basis, ws[i], zs[i], max_step)
        vj = _vanishing_class(W, basis, ws[j], zs[j], max_step)
        raw = sum(vi.get(k, 0) * vj.get(k, 0) for k in set(vi) | set(vj))
        if raw not in (-1, 0, 1):
            raise SnapFailure(f"pairing {raw} for {labels[i]},{labels[j]} "
                              "is outside the allowed range")
        t = [[Fraction(raw)]]
        transports[(labels[i], labels[j])] = t
        transports[(labels[j], labels[i])] = [[Fraction(raw)]]
    mono = {l: [[Fraction(-1)]] for l in labels}
    for i in range(n):
        nbr = min((abs(ws[j] - ws[i]) for j in range(n) if j != i),
                  default=2.0)
        base = ws[i] + 0.45 * nbr
        perm = loop_permutation(W, ws[i], base, max_step)
        moved = [k for k, v in enumerate(perm) if v != k]
        if len(moved) != 2 or perm[moved[0]] != moved[1]:
            raise SnapFailure(f"local loop at {labels[i]} is not a "
                              "transposition")
    dims = {l: 1 for l in labels}
    md = MatrixDiagram(config, dims, mono, transports)
    md.snap_error = snap_error
    return md


# -- global consistency --------------------------------------------------------------


def _compose(first: List[int], then: List[int]) -> List[int]:
    return [then[k] for k in first]


def _cycle_lengths(perm: List[int]) -> List[int]:
    seen = [False] * len(perm)
    out = []
    for k in range(len(perm)):
        if seen[k]:
            continue
        c, at = 0, k
        while not seen[at]:
            seen[at] = True
            at = perm[at]
            c += 1
        out.append(c)
    return sorted(out)


@dataclass
class MonodromyReport:
    degree: int
    big_perm: List[int]
    is_full_cycle: bool
    spider_order: List[int]       # critical value indices, leg order
    local_perms: List[List[int]]  # same order as spider_order
    composition_matches: bool

    @property
    def ok(self) -> bool:
        return self.is_full_cycle and self.composition_matches


def total_monodromy_check(W: Superpotential,
                          max_step: float = 0.25) -> MonodromyReport:
    """Track the fiber around a circle enclosing every critical value and
    compare with the composition of the elementary loops, legs ordered
    anticlockwise as seen from the basepoint below the values."""
    data = critical_data(W)
    ws = data.values
    basis = data.basis
    p0 = basis.basepoint
    big = track_fiber(W, _circle(sum(ws) / len(ws), p0), basis, max_step).perm
    spider = sorted(range(len(ws)),
                    key=lambda i: cmath.phase(ws[i] - p0))
    locals_ = []
    comp = list(range(len(basis.roots)))
    for i in spider:
        delta = min(0.45 * min((abs(ws[j] - ws[i])
                                for j in range(len(ws)) if j != i),
                               default=2.0), 0.5 * abs(ws[i] - p0))
        near = ws[i] + delta * (p0 - ws[i]) / abs(p0 - ws[i])
        leg = [p0, near]
        loop = leg + _circle(ws[i], near)[1:] + [p0]
        perm = track_fiber(W, loop, basis, max_step).perm
        locals_.append(perm)
        comp = _compose(comp, perm)
    return MonodromyReport(
        degree=W.degree,
        big_perm=big,
        is_full_cycle=_cycle_lengths(big) == [W.degree],
        spider_order=spider,
        local_perms=locals_,
        composition_matches=comp == big,
    )
