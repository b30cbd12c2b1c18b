import cmath
import math

import numpy as np
import pytest

import phaselab as pl
from phaselab.errors import DomainError
from phaselab.reference import dirac_delta_phase_shift, square_well_phase_shift
from phaselab.scattering import cached_phase_shift, clear_phase_memo

from .oracles import simpson_phase_integral


def test_fermi_point_zero_potential():
    pt = pl.fermi_point(pl.zero(), 1.0)
    assert pt.xi == 0.0
    assert pt.zeta == 0.0
    assert pt.k_F == 1.0


def test_fermi_point_square_well_closed_form():
    pt = pl.fermi_point(pl.square_well(1.0, 1.0), 4.0, 1e-11)
    d2 = square_well_phase_shift(2.0, 1.0, 1.0)
    assert pt.delta_F == pytest.approx(d2, abs=1e-10)
    assert pt.xi == pytest.approx(-d2 / math.pi, abs=1e-10)
    assert pt.zeta == pytest.approx(d2 * d2 / math.pi**2, abs=1e-10)
    assert pt.zeta == pytest.approx(pt.xi**2, rel=1e-12)
    assert pt.xi >= 0.0


def test_strong_delta_approaches_hard_wall():
    # weight -> infinity pushes the phase to the hard-wall branch value
    k, p = 1.0, 1.0
    hard_wall = -(k * p - math.pi * math.floor(k * p / math.pi))
    deltas = [
        pl.phase_shift(pl.dirac_delta(c, p), k, 1e-11).delta for c in (10.0, 100.0, 1000.0)
    ]
    gaps = [abs(d - hard_wall) for d in deltas]
    assert gaps[0] > gaps[1] > gaps[2]
    assert gaps[2] < 2e-3


def test_s_matrix_special_angles():
    def pt(delta):
        return pl.FermiPoint(E=1.0, k_F=1.0, delta_F=delta, xi=-delta / math.pi,
                             zeta=(delta / math.pi) ** 2)

    assert pl.s_matrix(pt(0.0)) == 1.0 + 0.0j
    assert pl.s_matrix(pt(-math.pi / 2)) == pytest.approx(-1.0 + 0.0j)
    assert pl.s_matrix(pt(-math.pi / 4)) == pytest.approx(-1.0j)
    val = pl.s_matrix(pl.fermi_point(pl.square_well(1.0, 1.0), 2.0))
    assert abs(val) == pytest.approx(1.0, abs=1e-15)
    assert val == pytest.approx(cmath.exp(2j * pl.fermi_point(pl.square_well(1.0, 1.0), 2.0).delta_F))


def test_fumi_integral_zero():
    assert pl.fumi_integral(pl.zero(), 3.0) == 0.0


def test_fumi_integral_against_simpson_oracle():
    got = pl.fumi_integral(pl.square_well(1.0, 1.0), 1.0, 1e-11)
    oracle = simpson_phase_integral(lambda s: square_well_phase_shift(s, 1.0, 1.0), 1.0)
    assert got == pytest.approx(oracle, abs=5e-10)
    got_dd = pl.fumi_integral(pl.dirac_delta(1.0, 1.0), 1.0, 1e-11)
    oracle_dd = simpson_phase_integral(lambda s: dirac_delta_phase_shift(s, 1.0, 1.0), 1.0)
    assert got_dd == pytest.approx(oracle_dd, abs=5e-10)


def test_fumi_integral_monotone_and_nonnegative():
    pot = pl.square_well(1.0, 1.0)
    es = [0.25, 0.5, 1.0, 2.0, 4.0]
    vals = [pl.fumi_integral(pot, e, 1e-10) for e in es]
    assert all(v >= 0.0 for v in vals)
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_fumi_substitution_identity():
    # quadrature in the energy variable, with endpoint care, agrees with
    # the wavenumber form
    from scipy.integrate import quad

    pot = pl.square_well(1.0, 1.0)
    tol = 1e-9
    direct, _err = quad(
        lambda x: -cached_phase_shift(pot, math.sqrt(x), tol).delta / math.pi
        if x > 0.0
        else 0.0,
        0.0,
        1.0,
        epsabs=tol,
        epsrel=tol,
        limit=200,
    )
    assert pl.fumi_integral(pot, 1.0, tol) == pytest.approx(direct, abs=10 * tol)


def test_xi_continuity_proxy():
    pot = pl.square_well(1.0, 1.0)
    es = np.linspace(0.25, 4.0, 81)
    pts = [pl.fermi_point(pot, float(e), 1e-10) for e in es]
    max_dprime = max(
        abs(cached_phase_shift(pot, pt.k_F, 1e-10).delta_prime) for pt in pts
    )
    for a, b in zip(pts, pts[1:]):
        dk = b.k_F - a.k_F
        assert abs(b.xi - a.xi) <= (1.2 * max_dprime * dk + 1e-9) / math.pi


def test_memo_is_transparent():
    pot = pl.square_well(1.0, 1.0)
    clear_phase_memo()
    cold = pl.phase_shift(pot, 1.7, 1e-10)
    warm1 = cached_phase_shift(pot, 1.7, 1e-10)
    warm2 = cached_phase_shift(pot, 1.7, 1e-10)
    assert warm1 == cold
    assert warm2 is warm1
    clear_phase_memo()
    assert cached_phase_shift(pot, 1.7, 1e-10) == cold


def test_fermi_point_requires_positive_energy():
    with pytest.raises(DomainError):
        pl.fermi_point(pl.zero(), 0.0)
    with pytest.raises(DomainError):
        pl.fumi_integral(pl.zero(), -1.0)
