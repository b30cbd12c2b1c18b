"""Acceptance harness: every check the package must pass, with its tolerance.

Each check returns a :class:`CheckResult`; the CLI ``verify`` subcommand
prints one line per check and exits nonzero if any fails, and the pytest
acceptance module asserts each one individually. Tolerances are fixed here
and nowhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import (
    ThermoFamily,
    dirac_delta,
    energy_difference,
    euler_maclaurin_residual,
    extrapolate_limit,
    fermi_point,
    finite_size_records,
    finite_size_scan,
    finite_volume_ssf_integral,
    fumi_integral,
    integrate_prufer,
    neumann_dirichlet_closed_form,
    perturbed_eigenvalue,
    perturbed_eigenvalue_quantized,
    phase_shift,
    phase_shift_grid,
    spectrum,
    square_well,
    tabulated,
    zero,
)
from .reference import dirac_delta_phase_shift, square_well_phase_shift

SEED = 20260809


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    name: str
    passed: bool
    detail: str


def _result(check_id, name, passed, detail) -> CheckResult:
    return CheckResult(check_id=check_id, name=name, passed=bool(passed), detail=detail)


def check_free_theory() -> CheckResult:
    """Zero potential: phase shifts, spectrum, energy difference and
    finite-size fields all vanish to stated precision."""
    pot = zero()
    worst_delta = max(abs(p.delta) for p in phase_shift_grid(pot, 0.1, 10.0, 64))
    sp = spectrum(pot, 10.0, 100)
    worst_mu = float(np.max(np.abs(sp.mu - sp.lam) / sp.lam))
    d_e = energy_difference(pot, 100, 200.0)
    fam = ThermoFamily.from_particle_counts(1.0, 0.0, [50, 100, 200])
    recs = finite_size_scan(pot, fam)
    worst_x = max(max(abs(r.x_theorem), abs(r.x_corollary)) for r in recs)
    ok = worst_delta < 1e-12 and worst_mu < 1e-12 and abs(d_e) < 1e-12 and worst_x < 1e-10
    return _result(
        "c1",
        "free-theory-exactness",
        ok,
        f"max|delta|={worst_delta:.2e}, max rel mu err={worst_mu:.2e}, "
        f"|dE|={abs(d_e):.2e}, max|x|={worst_x:.2e}",
    )


def check_phase_shift_closed_forms() -> CheckResult:
    """Numeric phase shift vs closed forms for the barrier and the point
    interaction on a geometric grid, max abs error < 1e-8."""
    ks = np.geomspace(0.1, 20.0, 64)
    sw = square_well(1.0, 1.0)
    err_sw = max(
        abs(phase_shift(sw, float(k), 1e-11).delta - square_well_phase_shift(k, 1.0, 1.0))
        for k in ks
    )
    dd = dirac_delta(1.0, 1.0)
    err_dd = max(
        abs(phase_shift(dd, float(k), 1e-11).delta - dirac_delta_phase_shift(k, 1.0, 1.0))
        for k in ks
    )
    ok = err_sw < 1e-8 and err_dd < 1e-8
    return _result(
        "c2",
        "phase-shift-closed-forms",
        ok,
        f"max err barrier={err_sw:.2e}, point interaction={err_dd:.2e} (tol 1e-8)",
    )


def check_exact_quantization() -> CheckResult:
    """Shooting eigenvalues at L = 50 satisfy k L + delta(k) = n pi to 1e-9."""
    pot = square_well(1.0, 1.0)
    L = 50.0
    worst = 0.0
    for n in range(1, 101):
        mu, _res = perturbed_eigenvalue(pot, n, L, 1e-12, 1e-11)
        k = math.sqrt(mu)
        resid = k * L + phase_shift(pot, k, 1e-12).delta - n * math.pi
        worst = max(worst, abs(resid))
    ok = worst < 1e-9
    return _result(
        "c3", "exact-quantization-residual", ok, f"max residual={worst:.2e} (tol 1e-9)"
    )


def check_solver_cross_validation() -> CheckResult:
    """Shooting and quantized eigenvalues agree in k to 1e-10 on 50 random
    (n, L) cases across both potential kinds."""
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for pot in (square_well(1.0, 1.0), dirac_delta(1.0, 1.0)):
        for _ in range(25):
            n = int(rng.integers(1, 41))
            L = float(rng.uniform(5.0, 80.0))
            mu1, _ = perturbed_eigenvalue(pot, n, L, 1e-12, 1e-11)
            mu2, _ = perturbed_eigenvalue_quantized(pot, n, L, 1e-12, 1e-11)
            worst = max(worst, abs(math.sqrt(mu1) - math.sqrt(mu2)))
    ok = worst < 1e-10
    return _result(
        "c4", "solver-cross-validation", ok, f"max |dk|={worst:.2e} over 50 cases (tol 1e-10)"
    )


def _squarewell_targets() -> tuple[float, float]:
    d1 = square_well_phase_shift(1.0, 1.0, 1.0)
    xi = -d1 / math.pi
    return xi, xi * xi


def check_theorem_limit() -> CheckResult:
    """Richardson limit of x_theorem along the a = 0 family matches
    xi(1) + zeta(1) from the closed-form phase shift within 1%."""
    xi, zeta = _squarewell_targets()
    target = xi + zeta
    fam = ThermoFamily.from_particle_counts(1.0, 0.0, [100, 200, 400, 800])
    recs = finite_size_scan(square_well(1.0, 1.0), fam, 1e-12, 1e-11, 1e-11)
    limit, err = extrapolate_limit([(r.L, r.x_theorem) for r in recs])
    rel = abs(limit - target) / abs(target)
    ok = rel <= 0.01
    return _result(
        "c5",
        "finite-size-theorem-limit",
        ok,
        f"limit={limit:.9f}, target={target:.9f}, rel err={rel:.2e} (tol 1e-2), "
        f"extrapolation err est={err:.1e}",
    )


def check_offset_sweep() -> CheckResult:
    """Richardson limits of x_corollary for a in {0, 1/2, 1} match
    (1 - 2a) xi + zeta within 1%; the a = 0 and a = 1/2 limits differ by
    xi within 1.5%."""
    xi, zeta = _squarewell_targets()
    pot = square_well(1.0, 1.0)
    limits = {}
    rels = {}
    for a in (0.0, 0.5, 1.0):
        fam = ThermoFamily.from_particle_counts(1.0, a, [100, 200, 400, 800])
        recs = finite_size_scan(pot, fam, 1e-12, 1e-11, 1e-11)
        limit, _err = extrapolate_limit([(r.L, r.x_corollary) for r in recs])
        target = (1.0 - 2.0 * a) * xi + zeta
        limits[a] = limit
        rels[a] = abs(limit - target) / abs(target)
    diff_rel = abs((limits[0.0] - limits[0.5]) - xi) / xi
    ok = all(r <= 0.01 for r in rels.values()) and diff_rel <= 0.015
    return _result(
        "c6",
        "finite-size-offset-sweep",
        ok,
        f"rel errs a=0: {rels[0.0]:.2e}, a=1/2: {rels[0.5]:.2e}, a=1: {rels[1.0]:.2e} "
        f"(tol 1e-2); offset difference rel err={diff_rel:.2e} (tol 1.5e-2)",
    )


def check_off_family_drift() -> CheckResult:
    """Perturbing L off the family shifts x_corollary by the moving-edge
    integral of the spectral shift; measured over predicted within 10%."""
    pot = square_well(1.0, 1.0)
    E, N, eps = 1.0, 800, 0.3
    l_fam = N * math.pi / math.sqrt(E)
    base = finite_size_records(pot, E, 0.0, [(N, l_fam)], 1e-12, 1e-11, 1e-11)[0]
    pert = finite_size_records(pot, E, 0.0, [(N, l_fam + eps)], 1e-12, 1e-11, 1e-11)[0]
    shift = pert.x_corollary - base.x_corollary
    xi = fermi_point(pot, E, 1e-11).xi
    l_pert = l_fam + eps
    predicted = (l_pert / (math.sqrt(E) * math.pi)) * ((N * math.pi / l_pert) ** 2 - E) * xi
    ratio = shift / predicted
    ok = shift != 0.0 and abs(ratio - 1.0) <= 0.10
    return _result(
        "c7",
        "off-family-drift",
        ok,
        f"shift={shift:+.4e}, predicted={predicted:+.4e}, ratio={ratio:.4f} (tol 10%)",
    )


def check_neumann_dirichlet() -> CheckResult:
    """Exact eigenvalue sums for the Neumann/Dirichlet pair, and limits
    consistent with |xi| = 1/2 and zeta = 1/4 (limit of x_corollary along
    the family is 1/4 - a)."""
    worst_sum = 0.0
    for n_count in (10, 100, 1000, 10000):
        e, a = 1.0, 0.0
        l_val = (n_count + a) * math.pi / math.sqrt(e)
        d_exact, _x = neumann_dirichlet_closed_form(e, a, n_count)
        direct = (math.pi / l_val) ** 2 * math.fsum(
            n * n - (n - 0.5) ** 2 for n in range(1, n_count + 1)
        )
        worst_sum = max(worst_sum, abs(d_exact - direct) / direct)
    worst_lim = 0.0
    for a in (0.0, 0.5, 1.0):
        seq = []
        for n_count in (1000, 2000, 4000, 8000):
            l_val = (n_count + a) * math.pi
            _d, x_c = neumann_dirichlet_closed_form(1.0, a, n_count)
            seq.append((l_val, x_c))
        limit, _err = extrapolate_limit(seq)
        worst_lim = max(worst_lim, abs(limit - (0.25 - a)))
    x100 = neumann_dirichlet_closed_form(4.0, 0.5, 100)[1]
    x200 = neumann_dirichlet_closed_form(4.0, 0.5, 200)[1]
    cauchy = abs(x200 - x100)
    ok = worst_sum < 1e-12 and worst_lim < 1e-6 and cauchy < 1e-8
    return _result(
        "c8",
        "neumann-dirichlet-pair",
        ok,
        f"sum identity rel err={worst_sum:.2e} (tol 1e-12), "
        f"limit err vs 1/4-a: {worst_lim:.2e} (tol 1e-6), cauchy={cauchy:.2e}",
    )


def _random_potential(rng):
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return zero()
    if kind == 1:
        return square_well(float(rng.uniform(0.1, 5.0)), float(rng.uniform(0.2, 3.0)))
    if kind == 2:
        return dirac_delta(float(rng.uniform(0.1, 5.0)), float(rng.uniform(0.2, 3.0)))
    npts = int(rng.integers(5, 13))
    grid = np.sort(rng.uniform(0.0, 3.0, npts))
    grid[0] = 0.0
    grid = np.unique(grid)
    vals = rng.uniform(0.0, 4.0, grid.size)
    return tabulated(grid, vals)


def check_angle_properties() -> CheckResult:
    """200 randomized (potential, k, x) cases: 0 <= theta <= k x + 1e-8,
    strict monotonicity of theta in k, delta <= 0, dtheta/dk >= 0."""
    rng = np.random.default_rng(SEED)
    failures = []
    for case in range(200):
        pot = _random_potential(rng)
        k = float(np.exp(rng.uniform(math.log(0.05), math.log(30.0))))
        x = float(rng.uniform(0.1, 8.0))
        traj = integrate_prufer(pot, k, x, 1e-10)
        if not (-1e-10 <= traj.theta <= k * x + 1e-8):
            failures.append(f"case {case}: theta bound")
        if traj.dtheta_dk < -1e-10:
            failures.append(f"case {case}: dtheta_dk < 0")
        k2 = k * float(rng.uniform(1.02, 1.5))
        traj2 = integrate_prufer(pot, k2, x, 1e-10)
        if not traj2.theta > traj.theta:
            failures.append(f"case {case}: monotonicity")
        if phase_shift(pot, k, 1e-10).delta > 1e-10:
            failures.append(f"case {case}: delta > 0")
    ok = not failures
    return _result(
        "c9",
        "angle-property-suite",
        ok,
        "200 cases clean" if ok else "; ".join(failures[:5]),
    )


def check_rate_bounds() -> CheckResult:
    """Log-log slope of |delta(k)| at least 0.9 over [1e-3, 1e-2] and at
    most -0.9 over [1e2, 1e3]; max |delta'| finite and grid-stable."""
    pot = square_well(1.0, 1.0)
    ks_lo = np.geomspace(1e-3, 1e-2, 9)
    ds_lo = [abs(phase_shift(pot, float(k), 1e-11).delta) for k in ks_lo]
    slope_lo = float(np.polyfit(np.log(ks_lo), np.log(ds_lo), 1)[0])
    ks_hi = np.geomspace(1e2, 1e3, 9)
    ds_hi = [abs(phase_shift(pot, float(k), 1e-10).delta) for k in ks_hi]
    slope_hi = float(np.polyfit(np.log(ks_hi), np.log(ds_hi), 1)[0])
    coarse = max(abs(p.delta_prime) for p in phase_shift_grid(pot, 0.1, 50.0, 33))
    fine = max(abs(p.delta_prime) for p in phase_shift_grid(pot, 0.1, 50.0, 65))
    stable = math.isfinite(fine) and abs(coarse - fine) <= 0.05 * fine
    ok = slope_lo >= 0.9 and slope_hi <= -0.9 and stable
    return _result(
        "c10",
        "phase-shift-rate-bounds",
        ok,
        f"slope low={slope_lo:.3f} (>=0.9), high={slope_hi:.3f} (<=-0.9), "
        f"max|delta'|={fine:.6f} grid-stable={stable}",
    )


def check_euler_maclaurin() -> CheckResult:
    """Order-2 residual exactly zero for constants and linears; residual
    orders for x^2 at fixed N/L fit -1 and -2 within 0.15."""
    exact_1 = euler_maclaurin_residual(("monomial", 0), 640, 64.0, 2)
    exact_x = euler_maclaurin_residual(("monomial", 1), 640, 64.0, 2)
    ls = [32.0, 64.0, 128.0, 256.0, 512.0]
    res1 = [abs(euler_maclaurin_residual(("monomial", 2), int(lv), lv, 1)) for lv in ls]
    res2 = [abs(euler_maclaurin_residual(("monomial", 2), int(lv), lv, 2)) for lv in ls]
    slope1 = float(np.polyfit(np.log(ls), np.log(res1), 1)[0])
    slope2 = float(np.polyfit(np.log(ls), np.log(res2), 1)[0])
    ok = (
        exact_1 == 0.0
        and exact_x == 0.0
        and abs(slope1 + 1.0) <= 0.15
        and abs(slope2 + 2.0) <= 0.15
    )
    return _result(
        "c11",
        "euler-maclaurin-orders",
        ok,
        f"exact residuals ({exact_1!r}, {exact_x!r}); "
        f"slopes {slope1:.3f} (target -1), {slope2:.3f} (target -2), tol 0.15",
    )


def check_ssf_convergence() -> CheckResult:
    """Integral of the counting spectral shift over (0, 1] approaches the
    phase-shift integral within 2% by L = 1000."""
    pot = square_well(1.0, 1.0)
    target = fumi_integral(pot, 1.0, 1e-11)
    vals = {lv: finite_volume_ssf_integral(pot, lv, 1.0) for lv in (250.0, 500.0, 1000.0)}
    rel = abs(vals[1000.0] - target) / abs(target)
    ok = rel <= 0.02
    return _result(
        "c12",
        "counting-ssf-convergence",
        ok,
        f"integrals {['%.6f' % vals[lv] for lv in (250.0, 500.0, 1000.0)]} -> "
        f"target {target:.6f}, rel err at L=1000: {rel:.2e} (tol 2e-2)",
    )


ALL_CHECKS = (
    check_free_theory,
    check_phase_shift_closed_forms,
    check_exact_quantization,
    check_solver_cross_validation,
    check_theorem_limit,
    check_offset_sweep,
    check_off_family_drift,
    check_neumann_dirichlet,
    check_angle_properties,
    check_rate_bounds,
    check_euler_maclaurin,
    check_ssf_convergence,
)

CHECK_IDS = tuple(f"c{i}" for i in range(1, len(ALL_CHECKS) + 1))


def run_checks(check_ids=None) -> list[CheckResult]:
    """Run the selected checks (all by default) and return their results."""
    wanted = set(check_ids) if check_ids else None
    results = []
    for idx, func in enumerate(ALL_CHECKS, start=1):
        cid = f"c{idx}"
        if wanted is not None and cid not in wanted:
            continue
        results.append(func())
    return results
