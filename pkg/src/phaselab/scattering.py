"""Scattering functions of the Fermi energy.

Collects the quantities derived from the phase shift at the Fermi
wavenumber sqrt(E): the spectral shift value xi(E) = -delta(sqrt(E))/pi,
the orthogonality exponent zeta(E) = delta^2(sqrt(E))/pi^2, the scattering
matrix exp(2 i delta), and the upward-shift integral

    -(1/pi) * integral_0^E delta(sqrt(x)) dx,

evaluated after the substitution x = s^2 as -(2/pi) * integral s*delta(s) ds
so the integrand vanishes quadratically at the origin and the endpoint
derivative stays bounded.

Phase-shift evaluations are memoized per (potential, k, tolerance); the
memo is keyed exactly, so results are bit-identical with and without it,
and access is lock-guarded for concurrent use.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass

from scipy.integrate import quad

from . import potentials as pots
from .errors import DomainError, NumericError
from .variable_phase import DEFAULT_TOL, PhaseShift, phase_shift

_memo: dict = {}
_memo_lock = threading.Lock()


def cached_phase_shift(pot: pots.Potential, k: float, tol: float = DEFAULT_TOL) -> PhaseShift:
    """Memoized :func:`phaselab.variable_phase.phase_shift`.

    Behaves exactly as if the memo were absent (keys are exact), it only
    removes repeated work when sweeps and quadratures revisit the same
    wavenumber.
    """
    key = (pot, float(k), float(tol))
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit
    result = phase_shift(pot, k, tol)
    with _memo_lock:
        _memo[key] = result
    return result


def clear_phase_memo() -> None:
    """Drop all memoized phase shifts (mainly for tests and benchmarks)."""
    with _memo_lock:
        _memo.clear()


@dataclass(frozen=True)
class FermiPoint:
    """Phase-shift data at a Fermi energy E > 0.

    ``xi`` is the spectral shift value -delta(sqrt(E))/pi and ``zeta`` the
    orthogonality exponent delta^2(sqrt(E))/pi^2 = xi^2; both are
    non-negative for the admitted repulsive potentials.
    """

    E: float
    k_F: float
    delta_F: float
    xi: float
    zeta: float


def fermi_point(pot: pots.Potential, E: float, tol: float = DEFAULT_TOL) -> FermiPoint:
    """Evaluate the phase shift at sqrt(E) and assemble the derived record."""
    E = float(E)
    if E <= 0.0:
        raise DomainError(f"Fermi energy must be positive, got {E:g}")
    k_F = math.sqrt(E)
    delta_F = cached_phase_shift(pot, k_F, tol).delta
    return FermiPoint(
        E=E,
        k_F=k_F,
        delta_F=delta_F,
        xi=-delta_F / math.pi,
        zeta=(delta_F / math.pi) ** 2,
    )


def s_matrix(pt: FermiPoint) -> complex:
    """Scattering matrix exp(2 i delta(sqrt(E))), a unimodular number."""
    return cmath.exp(2j * pt.delta_F)


def fumi_integral(pot: pots.Potential, E_upper: float, tol: float = DEFAULT_TOL) -> float:
    """Adaptive quadrature of -(1/pi) * integral_0^E_upper delta(sqrt(x)) dx.

    Runs in the wavenumber variable as -(2/pi) * integral_0^sqrt(E) s*delta(s) ds
    (Gauss-Kronrod panels via scipy); the integrand extends continuously by
    zero at s = 0. Non-negative for the admitted potentials and monotone
    non-decreasing in E_upper.
    """
    E_upper = float(E_upper)
    if E_upper <= 0.0:
        raise DomainError(f"upper energy must be positive, got {E_upper:g}")
    if pot.kind == pots.ZERO:
        return 0.0

    def integrand(s: float) -> float:
        if s <= 0.0:
            return 0.0
        return s * cached_phase_shift(pot, s, tol).delta

    result = quad(
        integrand,
        0.0,
        math.sqrt(E_upper),
        epsabs=tol,
        epsrel=tol,
        limit=300,
        full_output=1,
    )
    if len(result) == 4:
        value, abserr, info, message = result
        raise NumericError(
            f"phase-shift quadrature did not converge to {tol:g} "
            f"(estimate {value:.6g}, error {abserr:.3g}, {info['last']} intervals): {message}"
        )
    value, _abserr, _info = result
    return -2.0 / math.pi * value
