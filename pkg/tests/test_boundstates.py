"""Quantization curves, level counting and normalized bound wave functions."""

import math

import numpy as np
import pytest

from qpshell.boundstates import (
    V1Roots,
    bound_wavefunction,
    det_bound,
    sample_det_curve,
    sample_v0_curve,
    sample_v1pm_curve,
    sample_v2_curve,
    solve_w_double,
    solve_w_single,
    v0_of_w,
    v0_of_w_explicit,
    v1_pm_of_w,
    v2_of_w,
)
from qpshell.errors import DomainError, SingularPointError
from qpshell.greens import green_partial_bound
from qpshell.kinematics import ALL_VARIANTS, BoundEnergy
from qpshell.numerics import integrate_semi_infinite
from qpshell.scattering import ShellPotential

from test_greens import reference_partial


def test_v0_two_path():
    rng = np.random.default_rng(20)
    for _ in range(60):
        j = int(rng.integers(1, 5))
        be = BoundEnergy(float(rng.uniform(0.3, 2.5)), float(rng.uniform(0.05, 1.5)))
        a = float(rng.uniform(0.2, 4.0))
        gen = v0_of_w(j, be, a)
        exp = v0_of_w_explicit(j, be, a)
        assert abs(gen - exp) <= 1e-12 * abs(gen)


def test_v0_frozen_value():
    # closed form for j = 3 at m = 1, a = 1, w = 0.5:
    #   2 sin(0.5) sinh(pi) / (cosh(pi) - cosh((pi - 1) ... )) reduces to
    #   2 sin(0.5) / (2 sinh(0.5)^2 - tanh(pi) sinh(1))
    be = BoundEnergy(1.0, 0.5)
    expected = 2.0 * math.sin(0.5) / (
        2.0 * math.sinh(0.5) ** 2 - math.tanh(math.pi) * math.sinh(1.0)
    )
    got = v0_of_w(3, be, 1.0)
    assert math.isclose(got, expected, rel_tol=1e-14)
    assert got < 0
    # and it is genuinely a quantization point: 1 - V0 G(a, a) = 0
    assert abs(1.0 - got * green_partial_bound(3, be, 1.0, 1.0)) < 1e-12


def test_v0_always_attractive():
    for j in ALL_VARIANTS:
        for w in (0.1, 0.5, 1.0, 1.4):
            for a in (1.0, 2.0):
                assert v0_of_w(j, BoundEnergy(1.0, w), a) < 0


def test_solve_w_single_closed_loop():
    for j in ALL_VARIANTS:
        v0 = v0_of_w(j, BoundEnergy(1.0, 0.7), 1.0)
        levels = solve_w_single(j, 1.0, 1.0, v0)
        assert len(levels) == 1
        assert abs(levels[0].w - 0.7) < 1e-9
        assert levels[0].residual < 1e-10


def test_solve_w_single_repulsive_is_empty():
    for j in ALL_VARIANTS:
        assert solve_w_single(j, 1.0, 1.0, 2.0) == []


def test_single_shell_binds_at_most_once():
    rng = np.random.default_rng(21)
    for _ in range(50):
        j = int(rng.integers(1, 5))
        v0 = float(rng.uniform(-8.0, -0.05))
        a = float(rng.uniform(0.3, 4.0))
        assert len(solve_w_single(j, 1.0, a, v0)) <= 1


def test_det_bound_reduces_when_outer_strength_vanishes():
    v0 = v0_of_w(2, BoundEnergy(1.0, 0.9), 1.5)
    pot2 = ShellPotential.double(v0, 1.5, 0.0, 3.0)
    singles = solve_w_single(2, 1.0, 1.5, v0)
    doubles = solve_w_double(2, 1.0, pot2)
    assert len(singles) == len(doubles) == 1
    assert abs(singles[0].w - doubles[0].w) < 1e-10


def test_det_bound_continues_scattering_determinant():
    # the bound determinant is the scattering Cramer determinant carried to
    # chi = i w, where it becomes real; check against an undecomposed
    # complex-rapidity evaluation of the kernels
    j, m, w = 2, 1.0, 0.6
    v1, a1, v2, a2 = -2.0, 1.0, -1.0, 2.0
    g11 = reference_partial(j, m, 1j * w, a1, a1)
    g22 = reference_partial(j, m, 1j * w, a2, a2)
    g12 = reference_partial(j, m, 1j * w, a1, a2)
    delta = (1.0 - v1 * g11) * (1.0 - v2 * g22) - v1 * v2 * g12 * g12
    det = det_bound(j, BoundEnergy(m, w), ShellPotential.double(v1, a1, v2, a2))
    assert abs(delta.imag) < 1e-12
    assert abs(delta.real - det) < 1e-12


def test_double_repulsive_never_binds():
    pot = ShellPotential.double(1.0, 1.0, 2.0, 3.0)
    for j in ALL_VARIANTS:
        assert solve_w_double(j, 1.0, pot, n_scan=4000) == []


def test_level_counts_two_shells():
    # representative strength pairs at a1 = 1, a2 = 3: mixed and doubly
    # attractive walls carry one or two levels in every variant
    for v1, v2 in ((7.0, -2.0), (-2.0, -1.0)):
        pot = ShellPotential.double(v1, 1.0, v2, 3.0)
        for j in ALL_VARIANTS:
            levels = solve_w_double(j, 1.0, pot)
            assert 1 <= len(levels) <= 2
            for lv in levels:
                assert lv.residual < 1e-10


def test_level_count_narrow_pair():
    levels = solve_w_double(1, 1.0, ShellPotential.double(7.0, 1.0, -2.0, 2.0))
    assert 1 <= len(levels) <= 2
    for lv in levels:
        assert lv.residual < 1e-10


def test_v2_back_substitution():
    be = BoundEnergy(1.0, 0.4)
    v2 = v2_of_w(4, be, 1.0, 2.0, 1.5)
    det = det_bound(4, be, ShellPotential.double(1.5, 1.0, v2, 2.0))
    assert abs(det) < 1e-11


def test_v2_with_inner_off_matches_single():
    be = BoundEnergy(1.0, 0.8)
    assert math.isclose(
        v2_of_w(1, be, 1.0, 2.5, 0.0), v0_of_w(1, BoundEnergy(1.0, 0.8), 2.5),
        rel_tol=1e-14,
    )


def test_v2_closed_loop():
    v2 = v2_of_w(2, BoundEnergy(1.0, 0.8), 1.0, 2.5, -1.0)
    levels = solve_w_double(2, 1.0, ShellPotential.double(-1.0, 1.0, v2, 2.5))
    assert levels
    assert min(abs(lv.w - 0.8) for lv in levels) < 1e-9


def test_v2_curve_flags_only_true_poles():
    # at (a1, a2, V1) = (1, 4, -3.5) the denominator crosses zero once for
    # variants 1, 2 and 4 and never for 3; at (1, 2, +1.5) it never does
    for j, n_poles in ((1, 1), (2, 1), (3, 0), (4, 1)):
        pts = sample_v2_curve(j, 1.0, 1.0, 4.0, -3.5)
        assert sum(not p.finite for p in pts) == n_poles
        pts = sample_v2_curve(j, 1.0, 1.0, 2.0, 1.5)
        assert all(p.finite for p in pts)


def test_v2_curve_flagged_points_carry_nan():
    pts = sample_v2_curve(2, 1.0, 1.0, 4.0, -3.5)
    for p in pts:
        assert p.finite != math.isnan(p.value)


def test_v1pm_requires_coupling():
    with pytest.raises(DomainError):
        v1_pm_of_w(1, BoundEnergy(1.0, 0.5), 1.0, 2.0, 0.0)
    with pytest.raises(DomainError):
        v1_pm_of_w(1, BoundEnergy(1.0, 0.5), 2.0, 1.0, 1.0)


def test_v1pm_back_substitution_and_vieta():
    rng = np.random.default_rng(22)
    for _ in range(40):
        j = int(rng.integers(1, 5))
        be = BoundEnergy(1.0, float(rng.uniform(0.1, 1.4)))
        a1 = float(rng.uniform(0.3, 2.0))
        a2 = a1 + float(rng.uniform(0.3, 2.0))
        alpha = float(rng.uniform(0.2, 3.0))   # alpha > 0: discriminant >= 0
        roots = v1_pm_of_w(j, be, a1, a2, alpha)
        assert roots is not None
        g11 = green_partial_bound(j, be, a1, a1)
        g22 = green_partial_bound(j, be, a2, a2)
        g12 = green_partial_bound(j, be, a1, a2)
        if not roots.degenerate:
            prod = alpha * (g11 * g22 - g12 * g12)
            assert abs(roots.plus * roots.minus * prod - 1.0) < 1e-10
        for v1 in {roots.plus, roots.minus}:
            det = det_bound(j, be, ShellPotential.double(v1, a1, alpha * v1, a2))
            assert abs(det) < 1e-9 * (1.0 + abs(v1 * alpha * v1) * (abs(g11 * g22) + g12 * g12))


def test_v1pm_labels_follow_quadratic_signs():
    be = BoundEnergy(1.0, 0.7)
    a1, a2, alpha = 1.0, 2.0, 1.0
    roots = v1_pm_of_w(1, be, a1, a2, alpha)
    g11 = green_partial_bound(1, be, a1, a1)
    g22 = green_partial_bound(1, be, a2, a2)
    g12 = green_partial_bound(1, be, a1, a2)
    qa = alpha * (g11 * g22 - g12 * g12)
    qb = -(g11 + alpha * g22)
    disc = (g11 - alpha * g22) ** 2 + 4.0 * alpha * g12 * g12
    plus = (-qb + math.sqrt(disc)) / (2.0 * qa)
    minus = (-qb - math.sqrt(disc)) / (2.0 * qa)
    assert math.isclose(roots.plus, plus, rel_tol=1e-10)
    assert math.isclose(roots.minus, minus, rel_tol=1e-10)


def test_v1pm_curve_shapes():
    plus, minus = sample_v1pm_curve(3, 1.0, 1.0, 2.0, 1.0, n=50)
    assert len(plus) == len(minus) == 50
    assert all(p.finite for p in plus)         # alpha > 0 never gaps
    assert all(p.finite for p in minus)


def test_bound_wavefunction_contract():
    for j in ALL_VARIANTS:
        w = 0.6
        v0 = v0_of_w(j, BoundEnergy(1.0, w), 1.0)
        pot = ShellPotential.single(v0, 1.0)
        psi, level = bound_wavefunction(j, 1.0, w, pot)
        assert psi(0.0) == 0.0
        assert level.psi_shell == (psi(1.0),)
        assert level.norm_constant > 0
        norm = integrate_semi_infinite(lambda r: psi(r) ** 2, 0.0, 2 * w, 1e-10)
        assert abs(norm.value - 1.0) < 1e-8
        # pure exponential tail: psi(r) e^{w m r} saturates (variant 2 has a
        # subleading e^{-pi m r / 2} component, so probe well outside it)
        t1 = psi(25.0) * math.exp(w * 25.0)
        t2 = psi(30.0) * math.exp(w * 30.0)
        assert math.isclose(t1, t2, rel_tol=1e-9)
        with pytest.raises(DomainError):
            psi(-0.5)


def test_bound_wavefunction_two_shells():
    pot = ShellPotential.double(7.0, 1.0, -2.0, 3.0)
    levels = solve_w_double(4, 1.0, pot)
    assert levels
    psi, level = bound_wavefunction(4, 1.0, levels[0].w, pot)
    assert psi(0.0) == 0.0
    assert level.psi_shell == (psi(1.0), psi(3.0))
    norm = integrate_semi_infinite(lambda r: psi(r) ** 2, 0.0, 2 * levels[0].w, 1e-10)
    assert abs(norm.value - 1.0) < 1e-8


def test_bound_wavefunction_rejects_off_surface():
    pot = ShellPotential.single(-3.0, 1.0)
    with pytest.raises(DomainError):
        bound_wavefunction(1, 1.0, 0.3, pot)


def test_curve_samplers_are_grids():
    v0 = sample_v0_curve(1, 1.0, 1.0, n=30)
    det = sample_det_curve(1, 1.0, ShellPotential.single(-2.0, 1.0), n=30)
    assert len(v0) == len(det) == 30
    assert all(p.finite for p in v0)
    assert all(p.finite for p in det)
    assert all(0 < p.w < math.pi / 2 for p in v0)
    assert [p.w for p in v0] == [p.w for p in det]
    with pytest.raises(DomainError):
        sample_v0_curve(1, 1.0, 1.0, n=1)
