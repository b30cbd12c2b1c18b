import math

import numpy as np
import pytest

import phaselab as pl
from phaselab.errors import DomainError, InputError
from phaselab.reference import square_well_phase_shift
from phaselab.scattering import cached_phase_shift

from .oracles import dirac_quantized_root, fd_eigenvalue, simpson_phase_integral

SW = pl.square_well(1.0, 1.0)


def _sw_targets():
    d1 = square_well_phase_shift(1.0, 1.0, 1.0)
    xi = -d1 / math.pi
    return xi, xi * xi


def test_family_satisfies_density_rule_exactly():
    fam = pl.ThermoFamily.from_particle_counts(2.0, 0.5, [10, 20, 40])
    for n, L in fam.points:
        assert (n + 0.5) / L == pytest.approx(math.sqrt(2.0) / math.pi, rel=1e-15)
    with pytest.raises(InputError):
        pl.ThermoFamily.from_particle_counts(1.0, 0.0, [10, 10])
    with pytest.raises(InputError):
        pl.ThermoFamily.from_particle_counts(1.0, 0.0, [])
    with pytest.raises(DomainError):
        pl.ThermoFamily.from_particle_counts(-1.0, 0.0, [10])


def test_energy_difference_zero_potential():
    assert pl.energy_difference(pl.zero(), 100, 200.0) == 0.0


def test_energy_difference_against_matrix_oracle():
    got = pl.energy_difference(SW, 3, 10.0, 1e-12, 1e-11)
    oracle = math.fsum(
        fd_eigenvalue(SW, 10.0, n, base_points=30000) - (n * math.pi / 10.0) ** 2
        for n in (1, 2, 3)
    )
    assert got > 0.0
    assert got == pytest.approx(oracle, abs=5e-8)


def test_energy_difference_against_dirac_closed_form():
    pot = pl.dirac_delta(1.0, 1.0)
    got = pl.energy_difference(pot, 5, 20.0, 1e-13, 1e-12)
    oracle = math.fsum(
        dirac_quantized_root(1.0, 1.0, n, 20.0) ** 2 - (n * math.pi / 20.0) ** 2
        for n in range(1, 6)
    )
    assert got == pytest.approx(oracle, abs=1e-10)


def test_theorem_expansion_zero():
    assert pl.theorem_expansion(pl.zero(), 100, 200.0, 1.0) == (0.0, 0.0, 0.0)


def test_theorem_expansion_against_quadrature_oracle():
    n, L, E = 636, 2000.0, 1.0
    lm, lf, corr = pl.theorem_expansion(SW, n, L, E, 1e-11)
    oracle_lm = simpson_phase_integral(
        lambda s: square_well_phase_shift(s, 1.0, 1.0), (n * math.pi / L) ** 2
    )
    oracle_lf = simpson_phase_integral(lambda s: square_well_phase_shift(s, 1.0, 1.0), E)
    assert lm == pytest.approx(oracle_lm, abs=1e-9)
    assert lf == pytest.approx(oracle_lf, abs=1e-9)
    d1 = square_well_phase_shift(1.0, 1.0, 1.0)
    assert corr == pytest.approx((1.0 / L) * (-d1 + d1 * d1 / math.pi), abs=1e-12)


def test_correction_consistent_with_offset_targets():
    # correction rescaled by L/(sqrt(E) pi) is xi + zeta; the half-offset
    # family target is zeta alone, so the difference is exactly xi
    xi, zeta = _sw_targets()
    _lm, _lf, corr = pl.theorem_expansion(SW, 100, 100 * math.pi, 1.0, 1e-11)
    rescaled = corr * (100 * math.pi) / math.pi
    assert rescaled - zeta == pytest.approx(xi, abs=1e-9)


def test_finite_size_scan_zero_potential():
    fam = pl.ThermoFamily.from_particle_counts(1.0, 0.0, [20, 40, 80])
    recs = pl.finite_size_scan(pl.zero(), fam)
    for r in recs:
        assert r.delta_E_exact == 0.0
        assert r.x_theorem == 0.0
        assert r.x_corollary == 0.0


def test_scan_cross_identity():
    fam = pl.ThermoFamily.from_particle_counts(1.0, 1.0, [30, 60, 120])
    recs = pl.finite_size_scan(SW, fam, 1e-12, 1e-10)
    for r in recs:
        pref = r.L / (math.sqrt(r.E) * math.pi)
        assert r.x_theorem - r.x_corollary == pytest.approx(
            pref * (r.leading_fumi - r.leading_moving), abs=1e-11
        )


def test_cross_identity_limit_is_twice_offset_xi():
    xi, _zeta = _sw_targets()
    a = 1.0
    fam = pl.ThermoFamily.from_particle_counts(1.0, a, [100, 200, 400])
    recs = pl.finite_size_scan(SW, fam, 1e-12, 1e-11)
    diffs = [(r.L, r.x_theorem - r.x_corollary) for r in recs]
    limit, _err = pl.extrapolate_limit(diffs)
    assert limit == pytest.approx(2 * a * xi, rel=0.01)


def test_half_offset_scan_converges_to_zeta():
    xi, zeta = _sw_targets()
    fam = pl.ThermoFamily.from_particle_counts(1.0, 0.5, [50, 100, 200])
    recs = pl.finite_size_scan(SW, fam, 1e-12, 1e-11)
    limit, _err = pl.extrapolate_limit([(r.L, r.x_corollary) for r in recs])
    assert limit == pytest.approx(zeta, rel=0.02)


def test_scan_threading_is_bit_identical():
    fam = pl.ThermoFamily.from_particle_counts(1.0, 0.0, [20, 40, 80])
    seq = pl.finite_size_scan(SW, fam, threads=1)
    par = pl.finite_size_scan(SW, fam, threads=3)
    assert seq == par


def test_extrapolate_limit_plain_and_richardson():
    const = [(100.0, 3.0), (200.0, 3.0), (400.0, 3.0)]
    assert pl.extrapolate_limit(const, "plain") == (3.0, 0.0)
    assert pl.extrapolate_limit(const) == (3.0, 0.0)
    model = [(L, 3.0 + 5.0 / L) for L in (100.0, 200.0, 400.0)]
    limit, err = pl.extrapolate_limit(model)
    assert limit == pytest.approx(3.0, abs=1e-12)
    assert err < 1e-12
    with pytest.raises(InputError):
        pl.extrapolate_limit(model[:2])
    with pytest.raises(InputError):
        pl.extrapolate_limit(list(reversed(model)))
    with pytest.raises(InputError):
        pl.extrapolate_limit(model, "pade")


def test_euler_maclaurin_polynomial_exactness():
    assert pl.euler_maclaurin_residual(("monomial", 0), 640, 64.0, 2) == 0.0
    assert pl.euler_maclaurin_residual(("monomial", 1), 640, 64.0, 2) == 0.0
    assert pl.euler_maclaurin_residual(("monomial", 0), 640, 64.0, 1) == 0.0


def test_euler_maclaurin_order_improvement():
    res1 = abs(pl.euler_maclaurin_residual(("monomial", 2), 64, 64.0, 1))
    res1_fine = abs(pl.euler_maclaurin_residual(("monomial", 2), 128, 128.0, 1))
    assert res1_fine == pytest.approx(res1 / 2, rel=0.05)
    res2 = abs(pl.euler_maclaurin_residual(("monomial", 2), 64, 64.0, 2))
    res2_fine = abs(pl.euler_maclaurin_residual(("monomial", 2), 128, 128.0, 2))
    assert res2_fine == pytest.approx(res2 / 4, rel=0.05)
    assert res2 < res1


def test_euler_maclaurin_sine_and_phase_product():
    res = abs(pl.euler_maclaurin_residual(("sine", 2.0), 200, 100.0, 2))
    res_fine = abs(pl.euler_maclaurin_residual(("sine", 2.0), 400, 200.0, 2))
    assert res_fine == pytest.approx(res / 4, rel=0.1)
    r1 = abs(pl.euler_maclaurin_residual(("k_phase_product", SW), 128, 128.0, 1))
    r2 = abs(pl.euler_maclaurin_residual(("k_phase_product", SW), 128, 128.0, 2))
    assert math.isfinite(r1) and math.isfinite(r2)
    assert r2 < r1
    with pytest.raises(InputError):
        pl.euler_maclaurin_residual(("gaussian", 1.0), 10, 10.0, 1)
    with pytest.raises(InputError):
        pl.euler_maclaurin_residual(("monomial", 2), 10, 10.0, 3)


def test_phase_update_residual_is_second_order():
    # the perturbed-eigenvalue phase satisfies a first-order update in 1/L
    # whose residual scales like (1 + 1/k) / L^2 with a stable constant
    def fitted_constant(L):
        sp = pl.spectrum(SW, L, int(math.sqrt(1.0) * L / math.pi), 1e-13, 1e-12)
        cs = []
        for lam, k_mu in zip(sp.lam, sp.k_mu):
            k_free = math.sqrt(lam)
            d_mu = pl.phase_shift(SW, float(k_mu), 1e-12).delta
            ref = cached_phase_shift(SW, k_free, 1e-12)
            resid = d_mu - ref.delta + ref.delta_prime * ref.delta / L
            cs.append(abs(resid) * L * L / (1.0 + 1.0 / k_free))
        return max(cs)

    c200 = fitted_constant(200.0)
    c400 = fitted_constant(400.0)
    assert 0.0 < c400 < 2.5 * c200
    assert 0.0 < c200 < 2.5 * c400


def test_finite_volume_ssf_values():
    assert pl.finite_volume_ssf(pl.zero(), 100.0, 1.0) == 0.0
    val = pl.finite_volume_ssf(SW, 500.0, 1.0)
    assert val in (0.0, 1.0)
    with pytest.raises(DomainError):
        pl.finite_volume_ssf(SW, 0.5, 1.0)


def test_finite_volume_ssf_integral_converges():
    target = pl.fumi_integral(SW, 1.0, 1e-11)
    vals = [pl.finite_volume_ssf_integral(SW, L, 1.0) for L in (125.0, 1000.0)]
    assert abs(vals[1] - target) < abs(vals[0] - target)
    assert vals[1] == pytest.approx(target, rel=0.02)


def test_neumann_dirichlet_example():
    e, a, n = 1.0, 0.0, 10
    L = (n + a) * math.pi / math.sqrt(e)
    d_exact, _x = pl.neumann_dirichlet_closed_form(e, a, n)
    assert L == pytest.approx(10 * math.pi)
    assert d_exact == pytest.approx((math.pi / L) ** 2 * (55.0 - 2.5), rel=1e-14)
    direct = math.fsum(
        (k * math.pi / L) ** 2 - ((k - 0.5) * math.pi / L) ** 2 for k in range(1, n + 1)
    )
    assert d_exact == pytest.approx(direct, rel=1e-13)


def test_neumann_dirichlet_limits():
    for a in (0.0, 0.5, 1.0):
        seq = []
        for n in (1000, 2000, 4000):
            L = (n + a) * math.pi
            seq.append((L, pl.neumann_dirichlet_closed_form(1.0, a, n)[1]))
        limit, _err = pl.extrapolate_limit(seq)
        assert limit == pytest.approx(0.25 - a, abs=1e-7)
    # half-offset family is exactly N-independent
    x100 = pl.neumann_dirichlet_closed_form(4.0, 0.5, 100)[1]
    x200 = pl.neumann_dirichlet_closed_form(4.0, 0.5, 200)[1]
    assert abs(x200 - x100) < 1e-12
    with pytest.raises(DomainError):
        pl.neumann_dirichlet_closed_form(0.0, 0.0, 10)
    with pytest.raises(DomainError):
        pl.neumann_dirichlet_closed_form(1.0, 0.0, 0)


def test_free_length_records_match_family_on_family_points():
    fam = pl.ThermoFamily.from_particle_counts(1.0, 0.0, [20, 40, 80])
    scan = pl.finite_size_scan(SW, fam)
    explicit = pl.finite_size_records(SW, 1.0, 0.0, list(fam.points))
    assert scan == explicit
