"""Cross-check suites: the independent identities the library is built on.

Each group compares two computation routes that share as little code as
possible (generic kernel assembly vs expanded closed forms, closed forms vs
integral oracles, algebraic inverses vs root solvers) and reports the worst
deviation seen.  All draws are seeded, all grids fixed: repeated runs give
identical results.

`run_verification` executes the selected groups in registry order.  The
`fault_v0_bump` knob perturbs one side of the two-path comparison and exists
to prove the harness can fail; it must never be set in production runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .boundstates import (
    bound_wavefunction,
    det_bound,
    sample_v2_curve,
    solve_w_double,
    solve_w_single,
    v0_of_w,
    v1_pm_of_w,
)
from .errors import DomainError
from .greens import green_partial, green_partial_bound, green_spectral_oracle
from .kinematics import ALL_VARIANTS, BoundEnergy, EquationVariant, Kinematics, k_factor
from .nonrel import limit_convergence
from .numerics import integrate_semi_infinite
from .scattering import (
    ShellPotential,
    amplitude,
    amplitude_explicit,
    delta_system,
    scan_zero_locus,
    scatter_point,
    sweep,
)

_SEED = 734001
_TWO_PATH_TOL = 1e-12
_UNITARITY_TOL = 1e-12
_GF_IDENTITY_TOL = 1e-12
_SPECTRAL_TOL = 1e-6
_SMATRIX_TOL = 1e-12
_PHASE_TOL = 1e-9
_RT_TOL = 1e-12
_CLOSED_LOOP_TOL = 1e-9
_QUADRATIC_TOL = 1e-10
_NORM_TOL = 1e-8
_NR_FINAL_TOL = 1e-2
_LOCUS_TOL = 1e-8


@dataclass(frozen=True)
class GroupResult:
    """Outcome of one invariant group.

    `worst` is the largest deviation observed, in the units of `tolerance`;
    `violations` counts structural checks (signs, root counts, monotonicity)
    that have no meaningful deviation scale.  A group passes iff
    worst < tolerance and violations == 0.
    """

    name: str
    passed: bool
    worst: float
    tolerance: float
    n_checks: int
    violations: int
    detail: str


def _result(name: str, worst: float, tol: float, n: int, detail: str,
            violations: int = 0) -> GroupResult:
    return GroupResult(name, worst < tol and violations == 0, worst, tol, n,
                       violations, detail)


def _single_pot() -> ShellPotential:
    return ShellPotential.single(2.0, 5.0)


def _double_pot() -> ShellPotential:
    return ShellPotential.double(1.0, 3.0, -1.0, 4.0)


def _chi_grid(n: int = 800, lo: float = 0.05, hi: float = 4.0) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _random_potential(rng: np.random.Generator) -> ShellPotential:
    if rng.uniform() < 0.5:
        return ShellPotential.single(float(rng.uniform(-5, 5)), float(rng.uniform(0.1, 6.0)))
    a1 = float(rng.uniform(0.1, 3.0))
    a2 = a1 + float(rng.uniform(0.2, 3.0))
    return ShellPotential.double(
        float(rng.uniform(-4, 4)), a1, float(rng.uniform(-4, 4)), a2
    )


def check_two_path(fault_v0_bump: float = 0.0) -> GroupResult:
    """Generic kernel amplitudes against the expanded per-variant forms."""
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    n = 0
    for _ in range(50):
        j = int(rng.integers(1, 5))
        kin = Kinematics(float(rng.uniform(0.2, 3.0)), float(rng.uniform(0.05, 4.0)))
        v0 = float(rng.uniform(-5, 5))
        a = float(rng.uniform(0.1, 6.0))
        f_gen = amplitude(j, kin, ShellPotential.single(v0, a))
        f_exp = amplitude_explicit(j, kin, ShellPotential.single(v0 + fault_v0_bump, a))
        worst = max(worst, abs(f_gen - f_exp) / max(abs(f_gen), 1e-300))
        n += 1
    for _ in range(50):
        kin = Kinematics(float(rng.uniform(0.2, 3.0)), float(rng.uniform(0.05, 4.0)))
        a1 = float(rng.uniform(0.1, 3.0))
        a2 = a1 + float(rng.uniform(0.2, 3.0))
        v1 = float(rng.uniform(-4, 4))
        v2 = float(rng.uniform(-4, 4))
        f_gen = amplitude(3, kin, ShellPotential.double(v1, a1, v2, a2))
        f_exp = amplitude_explicit(
            3, kin, ShellPotential.double(v1 + fault_v0_bump, a1, v2, a2)
        )
        worst = max(worst, abs(f_gen - f_exp) / max(abs(f_gen), 1e-300))
        n += 1
    return _result("two_path", worst, _TWO_PATH_TOL, n,
                   "kernel-built f vs expanded closed forms, relative")


def check_unitarity() -> GroupResult:
    """|Im f - q |f|^2| on random points and on both sweep grids."""
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    n = 0

    def defect(j: int, kin: Kinematics, pot: ShellPotential) -> float:
        f = amplitude(j, kin, pot)
        return abs(f.imag - kin.q * abs(f) ** 2) / (1.0 + abs(f) ** 2)

    for _ in range(200):
        j = int(rng.integers(1, 5))
        kin = Kinematics(float(rng.uniform(0.2, 3.0)), float(rng.uniform(0.05, 4.0)))
        worst = max(worst, defect(j, kin, _random_potential(rng)))
        n += 1
    for pot in (_single_pot(), _double_pot()):
        for j in ALL_VARIANTS:
            for chi in _chi_grid():
                worst = max(worst, defect(j, Kinematics(1.0, chi), pot))
                n += 1
    return _result("unitarity", worst, _UNITARITY_TOL, n,
                   "optical-theorem defect, normalized by 1 + |f|^2")


def check_gf_identity() -> GroupResult:
    """Im G(chi,a,b) against -2 sin(chi m a) sin(chi m b) / K."""
    rng = np.random.default_rng(_SEED + 2)
    worst = 0.0
    for _ in range(100):
        j = int(rng.integers(1, 5))
        m = float(rng.uniform(0.2, 3.0))
        chi = float(rng.uniform(0.05, 4.0))
        a = float(rng.uniform(0.05, 6.0))
        b = float(rng.uniform(0.05, 6.0))
        kin = Kinematics(m, chi)
        lhs = green_partial(j, kin, a, b).imag
        rhs = -2.0 * math.sin(chi * m * a) * math.sin(chi * m * b) / k_factor(j, kin)
        worst = max(worst, abs(lhs - rhs))
    return _result("gf_identity", worst, _GF_IDENTITY_TOL, 100,
                   "imaginary part of the partial kernel vs its sine product form")


def check_spectral() -> GroupResult:
    """Closed bound-branch kernels against the momentum-integral oracle."""
    worst = 0.0
    n = 0
    for j in ALL_VARIANTS:
        for w in (0.3, 0.7, 1.2):
            be = BoundEnergy(1.0, w)
            for r in (0.5, 1.3, 2.7):
                closed = green_partial_bound(j, be, r, r)
                oracle = green_spectral_oracle(j, be, r, r, tol=1e-8)
                worst = max(worst, abs(closed - oracle.value))
                n += 1
    return _result("spectral", worst, _SPECTRAL_TOL, n,
                   "closed kernel vs adaptive momentum integral, absolute")


def check_smatrix() -> GroupResult:
    """S = 1 + 2iqf vs conj(den)/den, and unimodularity, on both sweeps."""
    worst = 0.0
    n = 0
    for pot in (_single_pot(), _double_pot()):
        for j in ALL_VARIANTS:
            for chi in _chi_grid():
                kin = Kinematics(1.0, chi)
                sp = scatter_point(j, kin, pot)
                sys = delta_system(j, kin, pot)
                ratio = sys.delta.conjugate() / sys.delta
                worst = max(worst, abs(sp.s_matrix - ratio),
                            abs(abs(sp.s_matrix) - 1.0))
                n += 1
    return _result("smatrix", worst, _SMATRIX_TOL, n,
                   "additive vs ratio S-matrix and | |S| - 1 |")


def check_phase() -> GroupResult:
    """tan(2 phase) against the real/imaginary split of the denominator.

    The denominator is alpha + i beta with alpha, beta assembled from real
    kernel parts only; S = (alpha - i beta)/(alpha + i beta) gives
    tan(2 phi) = -2 alpha beta / (alpha^2 - beta^2).  Checked where
    |cos(2 phi)| > 0.1 so the tangent is well-conditioned.
    """
    worst = 0.0
    n = 0
    for pot in (_single_pot(), _double_pot()):
        shells = pot.shells
        for j in ALL_VARIANTS:
            for chi in _chi_grid():
                kin = Kinematics(1.0, chi)
                sp = scatter_point(j, kin, pot)
                if abs(math.cos(2.0 * sp.phase)) <= 0.1:
                    continue
                m = kin.m
                kj = k_factor(j, kin)
                if len(shells) == 1:
                    (v0, a), = shells
                    s = math.sin(chi * m * a)
                    alpha = 1.0 - v0 * green_partial(j, kin, a, a).real
                    beta = 2.0 * v0 * s * s / kj
                else:
                    (v1, a1), (v2, a2) = shells
                    s1 = math.sin(chi * m * a1)
                    s2 = math.sin(chi * m * a2)
                    r11 = green_partial(j, kin, a1, a1).real
                    r22 = green_partial(j, kin, a2, a2).real
                    r12 = green_partial(j, kin, a1, a2).real
                    alpha = (1.0 - v1 * r11) * (1.0 - v2 * r22) - v1 * v2 * r12 * r12
                    beta = (2.0 * v1 * s1 * s1 / kj * (1.0 - v2 * r22)
                            + 2.0 * v2 * s2 * s2 / kj * (1.0 - v1 * r11)
                            + 4.0 * v1 * v2 * s1 * s2 * r12 / kj)
                expected = -2.0 * alpha * beta / (alpha * alpha - beta * beta)
                got = math.tan(2.0 * sp.phase)
                worst = max(worst, abs(got - expected) / max(abs(expected), 1.0))
                n += 1
    return _result("phase", worst, _PHASE_TOL, n,
                   "tan(2 phi) vs real-part assembly, relative, |cos 2phi| > 0.1")


def check_rt_zeros() -> GroupResult:
    """Transparency: |f| at chi = pi n / (m a) for n = 1..10, every variant."""
    worst = 0.0
    n = 0
    pot = _single_pot()
    for j in ALL_VARIANTS:
        for k in range(1, 11):
            kin = Kinematics(1.0, math.pi * k / 5.0)
            worst = max(worst, abs(amplitude(j, kin, pot)))
            n += 1
    return _result("rt_zeros", worst, _RT_TOL, n,
                   "|f| at the shared transparency rapidities, m=1 a=5 V0=2")


def check_bound_structure() -> GroupResult:
    """Sign of the single-shell curve, closed-loop inversion, root counts."""
    violations = 0
    worst = 0.0
    n = 0
    for m, a in ((1.0, 1.0), (0.5, 2.0)):
        for j in ALL_VARIANTS:
            for k in range(1, 501):
                w = (math.pi / 2) * k / 501
                if v0_of_w(j, BoundEnergy(m, w), a) >= 0.0:
                    violations += 1
                n += 1
            target = 0.7
            v0 = v0_of_w(j, BoundEnergy(m, target), a)
            levels = solve_w_single(j, m, a, v0)
            if len(levels) != 1:
                violations += 1
            else:
                worst = max(worst, abs(levels[0].w - target))
            n += 1
    for v1, v2, want in ((7.0, -2.0, (1, 2)), (-2.0, -1.0, (1, 2)), (1.0, 2.0, (0,))):
        pot = ShellPotential.double(v1, 1.0, v2, 3.0)
        for j in ALL_VARIANTS:
            if len(solve_w_double(j, 1.0, pot)) not in want:
                violations += 1
            n += 1
    return _result("bound_structure", worst, _CLOSED_LOOP_TOL, n,
                   "curve signs, closed-loop |w - w*|, two-shell root counts",
                   violations)


def check_quadratic() -> GroupResult:
    """Tied-strength roots: back-substitution, Vieta, discriminant sign."""
    rng = np.random.default_rng(_SEED + 3)
    worst = 0.0
    violations = 0
    n = 0
    while n < 50:
        j = int(rng.integers(1, 5))
        be = BoundEnergy(float(rng.uniform(0.3, 2.0)),
                         float(rng.uniform(0.05, math.pi / 2 - 0.05)))
        a1 = float(rng.uniform(0.2, 2.0))
        a2 = a1 + float(rng.uniform(0.2, 3.0))
        alpha = float(rng.uniform(-2.0, 2.0))
        if abs(alpha) < 1e-3:
            continue
        roots = v1_pm_of_w(j, be, a1, a2, alpha)
        if roots is None:
            if alpha > 0.0:
                violations += 1
            n += 1
            continue
        g11 = green_partial_bound(j, be, a1, a1)
        g22 = green_partial_bound(j, be, a2, a2)
        g12 = green_partial_bound(j, be, a1, a2)
        for root in (roots.plus, roots.minus):
            pot = ShellPotential.double(root, a1, alpha * root, a2)
            worst = max(worst, abs(det_bound(j, be, pot)))
        vieta = roots.plus * roots.minus * (alpha * (g11 * g22 - g12 * g12)) - 1.0
        worst = max(worst, abs(vieta))
        n += 1
    return _result("quadratic", worst, _QUADRATIC_TOL, n,
                   "root back-substitution residual and Vieta product defect",
                   violations)


def check_normalization() -> GroupResult:
    """Unit norm of bound wave functions across variants 1, 3, 4."""
    worst = 0.0
    n = 0
    for j in (1, 3, 4):
        be = BoundEnergy(1.0, 0.6)
        pot = ShellPotential.single(v0_of_w(j, be, 1.0), 1.0)
        psi, _level = bound_wavefunction(j, 1.0, 0.6, pot)
        total = integrate_semi_infinite(lambda r: psi(r) ** 2, 0.0, 2.0 * 0.6, 1e-11)
        worst = max(worst, abs(total.value - 1.0))
        n += 1
    return _result("normalization", worst, _NORM_TOL, n,
                   "| integral of psi^2 - 1 | for one level per variant")


def check_nrlimit() -> GroupResult:
    """Heavy-mass convergence to the static closed forms, three observables."""
    masses = (10.0, 100.0, 1000.0)
    worst = 0.0
    violations = 0
    n = 0
    for observable, params in (
        ("amplitude", dict(q=0.6, pot=_single_pot())),
        ("gf", dict(q=0.5, r=1.2, rp=0.4)),
        ("quantization", dict(kappa=0.5, a=1.0)),
    ):
        finals = []
        for j in ALL_VARIANTS:
            rep = limit_convergence(observable, j, masses, **params)
            if not rep.monotone:
                violations += 1
            finals.append(rep.final_deviation)
            worst = max(worst, rep.final_deviation)
            n += 1
        if max(finals) - min(finals) >= 2.0 * max(finals):
            violations += 1
    return _result("nrlimit", worst, _NR_FINAL_TOL, n,
                   "largest deviation at m=1000; monotone decrease enforced",
                   violations)


def check_zero_locus() -> GroupResult:
    """Plane-scan transparency curves: residuals and degenerate collapse."""
    worst = 0.0
    violations = 0
    n = 0
    for j in (1, 4):
        locus = scan_zero_locus(j, 1.0, 3.0, 1.0, -1.0, (3.0, 8.0), (0.1, 3.0),
                                grid=(300, 300))
        if not locus.curves:
            violations += 1
        for curve in locus.curves:
            for _x, _y, residual in curve:
                worst = max(worst, residual)
                n += 1
    degenerate = scan_zero_locus(1, 1.0, 3.0, 1.0, 0.0, (3.0, 8.0), (0.1, 3.0),
                                 grid=(32, 32))
    step = math.pi / 3.0
    for curve in degenerate.curves:
        for _x, y, _residual in curve:
            k = round(y / step)
            worst_line = abs(y - k * step)
            if worst_line > 1e-12:
                violations += 1
            n += 1
    return _result("zero_locus", worst, _LOCUS_TOL, n,
                   "vertex residuals over the (a2, chi) window; line collapse",
                   violations)


def check_determinism() -> GroupResult:
    """Repeated evaluation of every sweep family gives bit-identical floats."""
    chi = _chi_grid(64)
    violations = 0
    n = 0

    def run_scatter():
        return sweep(2, 1.0, _double_pot(), chi)

    def run_curve():
        return sample_v2_curve(4, 1.0, 1.0, 4.0, -3.5, n=128)

    def run_locus():
        return scan_zero_locus(1, 1.0, 3.0, 1.0, -1.0, (3.0, 8.0), (0.5, 2.5),
                               grid=(32, 32))

    a, b = run_scatter(), run_scatter()
    for p, q in zip(a, b):
        n += 1
        if (p.f, p.s_matrix, p.sigma0, p.phase) != (q.f, q.s_matrix, q.sigma0, q.phase):
            violations += 1
    a, b = run_curve(), run_curve()
    for p, q in zip(a, b):
        n += 1
        if (p.w, p.value, p.finite) != (q.w, q.value, q.finite) and not (
            math.isnan(p.value) and math.isnan(q.value) and p.w == q.w
        ):
            violations += 1
    a, b = run_locus(), run_locus()
    n += 1
    if a.curves != b.curves:
        violations += 1
    return _result("determinism", 0.0, 1.0, n,
                   "bit-identical repeated sweeps, curves and loci", violations)


_GROUPS: dict[str, Callable[..., GroupResult]] = {
    "two_path": check_two_path,
    "unitarity": check_unitarity,
    "gf_identity": check_gf_identity,
    "spectral": check_spectral,
    "smatrix": check_smatrix,
    "phase": check_phase,
    "rt_zeros": check_rt_zeros,
    "bound_structure": check_bound_structure,
    "quadratic": check_quadratic,
    "normalization": check_normalization,
    "nrlimit": check_nrlimit,
    "zero_locus": check_zero_locus,
    "determinism": check_determinism,
}

GROUP_NAMES: tuple[str, ...] = tuple(_GROUPS)


def run_verification(
    groups: Iterable[str] | None = None, fault_v0_bump: float = 0.0
) -> list[GroupResult]:
    """Run the selected invariant groups (all of them by default), in order."""
    names: Sequence[str] = GROUP_NAMES if groups is None else tuple(groups)
    unknown = sorted(set(names) - set(_GROUPS))
    if unknown:
        raise DomainError(f"unknown verification groups: {', '.join(unknown)}")
    results = []
    for name in names:
        if name == "two_path":
            results.append(check_two_path(fault_v0_bump))
        else:
            results.append(_GROUPS[name]())
    return results
