"""Superpotential ingestion: critical data, tracking, exact diagrams."""

import math
import random
from fractions import Fraction

import mpmath
import pytest

from air.lefschetz import (
    CollinearCriticalValues,
    CriticalValueCollision,
    NotMorse,
    PathTooClose,
    Superpotential,
    critical_data,
    fiber_basis,
    loop_permutation,
    matrix_diagram_from_W,
    total_monodromy_check,
    track_fiber,
)

A2 = Superpotential.of(["0", "-1", "0", "1/3"])  # x^3/3 - x


def a_n(n):
    """x^(n+1)/(n+1) - x; critical values on a circle."""
    coeffs = ["0", "-1"] + ["0"] * (n - 1) + [f"1/{n + 1}"]
    return Superpotential.of(coeffs)


# -- ingestion -----------------------------------------------------------------------


def test_superpotential_validation():
    with pytest.raises(ValueError):
        Superpotential.of(["1", "2"])       # degree 1
    with pytest.raises(ValueError):
        Superpotential.of(["1", "2", "0"])  # zero leading coefficient
    W = Superpotential.of(["1/2", "-2", "3"])
    assert W.degree == 2
    assert W(1.0) == pytest.approx(1.5)


def test_critical_data_a2():
    data = critical_data(A2)
    assert sorted(round(z.real) for z in data.points) == [-1, 1]
    with mpmath.workdps(50):
        third = mpmath.mpf(2) / 3
        assert abs(data.values_mp[0] + third) < mpmath.mpf("1e-30")
        assert abs(data.values_mp[1] - third) < mpmath.mpf("1e-30")
    # pairs are distinct basis indices
    for p, q in data.pairing:
        assert p != q
        assert 0 <= p < 3 and 0 <= q < 3


def test_critical_data_square():
    data = critical_data(Superpotential.of(["0", "0", "1"]))
    assert len(data.values) == 1
    assert abs(data.values[0]) < 1e-12
    assert data.pairing == [(0, 1)] or data.pairing == [(1, 0)]


def test_not_morse():
    with pytest.raises(NotMorse):
        critical_data(Superpotential.of(["0", "0", "0", "1"]))  # x^3


def test_critical_value_collision():
    # x^4/4 - x^2/2 has critical values 0, -1/4, -1/4
    with pytest.raises(CriticalValueCollision):
        critical_data(Superpotential.of(["0", "0", "-1/2", "0", "1/4"]))


# -- fibers and tracking -------------------------------------------------------------


def test_fiber_basis_separation():
    basis = fiber_basis(A2, 5 + 2j)
    assert len(basis.roots) == 3
    dists = [abs(a - b) for i, a in enumerate(basis.roots)
             for b in basis.roots[i + 1:]]
    assert min(dists) > 3 * basis.sep
    for r in basis.roots:
        assert abs(A2(r) - (5 + 2j)) < 1e-9


def test_track_constant_path_identity():
    basis = fiber_basis(A2, 2 + 1j)
    res = track_fiber(A2, [2 + 1j, 2 + 1j], basis)
    assert res.perm == [0, 1, 2]


def test_track_reverse_inverts():
    data = critical_data(A2)
    basis = data.basis
    p0 = basis.basepoint
    loop = [p0, p0 + 0.7, p0 + 0.7 + 1.2j, p0 + 1.2j, p0]
    fwd = track_fiber(A2, loop, basis).perm
    bwd = track_fiber(A2, loop[::-1], basis).perm
    n = len(fwd)
    assert [bwd[fwd[k]] for k in range(n)] == list(range(n))


def test_track_concatenation_composes():
    data = critical_data(A2)
    basis = data.basis
    p0 = basis.basepoint
    w1, w2 = data.values
    from air.lefschetz import _circle
    loop1 = [p0, p0 + 0.3] + _circle(w1, p0 + 0.3)[1:] + [p0]
    loop2 = [p0, p0 - 0.3] + _circle(w2, p0 - 0.3)[1:] + [p0]
    s1 = track_fiber(A2, loop1, basis).perm
    s2 = track_fiber(A2, loop2, basis).perm
    both = track_fiber(A2, loop1 + loop2[1:], basis).perm
    assert both == [s2[s1[k]] for k in range(len(s1))]


def test_small_loop_is_vanishing_transposition():
    data = critical_data(A2)
    w1 = data.values[0]           # -2/3
    perm = loop_permutation(A2, w1, w1 + 0.3)
    moved = [k for k, v in enumerate(perm) if v != k]
    assert len(moved) == 2
    assert perm[moved[0]] == moved[1] and perm[moved[1]] == moved[0]


def test_path_too_close():
    data = critical_data(A2)
    basis = data.basis
    p0 = basis.basepoint
    with pytest.raises(PathTooClose):
        track_fiber(A2, [p0, data.values[0], p0], basis)


def test_track_needs_matching_basepoint():
    basis = fiber_basis(A2, 2 + 1j)
    with pytest.raises(ValueError):
        track_fiber(A2, [5 + 5j, 6 + 5j], basis)


# -- exact diagrams ------------------------------------------------------------------


def test_matrix_diagram_a2():
    md = matrix_diagram_from_W(A2)
    assert md.config.labels == ["w1", "w2"]
    assert md.config.point("w1") == (Fraction(-2, 3), Fraction(0))
    assert md.config.point("w2") == (Fraction(2, 3), Fraction(0))
    assert md.snap_error == 0.0
    assert abs(md.t("w1", "w2")[0][0]) == 1
    assert md.monodromies == {"w1": [[Fraction(-1)]],
                              "w2": [[Fraction(-1)]]}


def test_matrix_diagram_square():
    md = matrix_diagram_from_W(Superpotential.of(["0", "0", "1"]))
    assert md.phi_dims == {"w1": 1}
    assert md.transports == {}
    assert md.monodromies["w1"] == [[Fraction(-1)]]


def test_matrix_diagram_collinear_values():
    # W' = x(x-1)(x+2): three distinct real critical values sit on a line
    W = Superpotential.of(["0", "0", "-1", "1/3", "1/4"])
    data = critical_data(W)
    assert len(data.values) == 3
    assert all(abs(w.imag) < 1e-12 for w in data.values)
    with pytest.raises(CollinearCriticalValues):
        matrix_diagram_from_W(W)


def test_chain_transports_bounded():
    for n in (2, 3, 4, 5):
        md = matrix_diagram_from_W(a_n(n))
        assert len(md.config.labels) == n
        for t in md.transports.values():
            assert abs(t[0][0]) <= 1
            assert t[0][0].denominator == 1
        if n >= 3:
            assert md.snap_error > 0  # roots of unity are irrational


def test_matrix_diagram_deterministic():
    a = matrix_diagram_from_W(a_n(3))
    b = matrix_diagram_from_W(a_n(3))
    assert a.to_json() == b.to_json()


def test_step_halving_stable():
    for W in (A2, a_n(3)):
        md = matrix_diagram_from_W(W)
        md2 = matrix_diagram_from_W(W, max_step=0.125)
        assert md.to_json() == md2.to_json()


# -- total monodromy -----------------------------------------------------------------


def test_total_monodromy_a2():
    rep = total_monodromy_check(A2)
    assert rep.degree == 3
    assert rep.is_full_cycle
    assert rep.composition_matches
    assert rep.ok


def test_total_monodromy_square():
    rep = total_monodromy_check(Superpotential.of(["0", "0", "1"]))
    assert rep.big_perm == [1, 0]
    assert rep.ok


def test_total_monodromy_chains():
    for n in (3, 4, 5):
        rep = total_monodromy_check(a_n(n))
        assert rep.degree == n + 1
        assert rep.is_full_cycle
        assert rep.composition_matches


def test_total_monodromy_random_morse():
    rng = random.Random(410)
    done = 0
    while done < 5:
        deg = rng.randint(2, 5)
        coeffs = [Fraction(rng.randint(-4, 4)) for _ in range(deg)] \
            + [Fraction(rng.choice([1, -1, 2]))]
        try:
            W = Superpotential(tuple(coeffs))
            rep = total_monodromy_check(W)
        except ValueError:
            continue
        assert rep.is_full_cycle
        assert rep.composition_matches
        half = total_monodromy_check(W, max_step=0.125)
        assert half.big_perm == rep.big_perm
        done += 1
