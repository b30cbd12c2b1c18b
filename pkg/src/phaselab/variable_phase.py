"""Prufer-angle integration and scattering phase shifts.

The angle theta_k solves theta' = k - (V/k) sin^2(theta) from theta(0) = 0,
together with the log-amplitude and the variational equation for the
k-derivative. The phase shift is the constant value of
theta_k(x) - k*x past the support of the potential; it is kept on the
continuous branch fixed by the initial condition and is never reduced
modulo pi, so it feeds eigenvalue counting directly.

All operations are pure functions of their inputs and are safe to call
concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import potentials as pots
from ._kernels import (
    STATUS_OK,
    STATUS_STEP_UNDERFLOW,
    prufer_kernel,
)
from .errors import ConfigError, DomainError, NumericError

TOL_MIN = 1e-14
TOL_MAX = 1e-2
DEFAULT_TOL = 1e-10

_EMPTY = np.empty(0, dtype=np.float64)


@dataclass(frozen=True)
class PruferTrajectory:
    """State of the Prufer system at the endpoint of an integration.

    ``theta`` is the unwound angle, ``log_rho`` the log-amplitude with
    rho(0) = 1, and ``dtheta_dk`` the k-derivative of the angle obtained
    from the variational equation. ``step_count`` and ``est_local_error``
    are integrator diagnostics (accepted steps; accumulated local error
    estimate on the phase component).
    """

    k: float
    x_end: float
    theta: float
    log_rho: float
    dtheta_dk: float
    step_count: int
    est_local_error: float


@dataclass(frozen=True)
class PhaseShift:
    """Scattering phase shift delta(k) with derivative and tail certificate.

    ``tail_bound`` bounds |delta(k) - (theta_k(x_end) - k*x_end)| by the
    tail mass of the potential over k; it is exactly zero once the
    integration reaches the support radius, which is how this package
    always evaluates it.
    """

    k: float
    delta: float
    delta_prime: float
    tail_bound: float


@lru_cache(maxsize=256)
def _piece_tables(pot: pots.Potential):
    """Compile a validated potential into kernel arrays.

    Returns (px0, px1, pv0, pv1, jpos, jc): contiguous linear pieces over
    [0, support_radius] and point-interaction positions/weights.
    """
    if pot.kind == pots.ZERO:
        return (_EMPTY, _EMPTY, _EMPTY, _EMPTY, _EMPTY, _EMPTY)
    if pot.kind == pots.SQUARE_WELL:
        return (
            np.array([0.0]),
            np.array([pot.width]),
            np.array([pot.height]),
            np.array([pot.height]),
            _EMPTY,
            _EMPTY,
        )
    if pot.kind == pots.DIRAC_DELTA:
        return (
            _EMPTY,
            _EMPTY,
            _EMPTY,
            _EMPTY,
            np.array([pot.position]),
            np.array([pot.strength]),
        )
    g = np.asarray(pot.grid, dtype=np.float64)
    v = np.asarray(pot.values, dtype=np.float64)
    return (
        np.ascontiguousarray(g[:-1]),
        np.ascontiguousarray(g[1:]),
        np.ascontiguousarray(v[:-1]),
        np.ascontiguousarray(v[1:]),
        _EMPTY,
        _EMPTY,
    )


def _check_tol(tol: float) -> float:
    tol = float(tol)
    if not (TOL_MIN <= tol <= TOL_MAX):
        raise ConfigError(f"tolerance must lie in [{TOL_MIN:g}, {TOL_MAX:g}], got {tol:g}")
    return tol


def _run_kernel(pot: pots.Potential, k: float, x_end: float, tol: float):
    px0, px1, pv0, pv1, jpos, jc = _piece_tables(pot)
    phi, log_rho, wp, steps, errsum, status, x_stop = prufer_kernel(
        k, x_end, tol, 0.01 * tol, px0, px1, pv0, pv1, jpos, jc
    )
    if status == STATUS_STEP_UNDERFLOW:
        raise NumericError(
            f"phase integration stalled at x = {x_stop:.6g} (k = {k:g}): step size underflow"
        )
    if status != STATUS_OK:
        raise NumericError(
            f"phase integration exceeded the step budget at x = {x_stop:.6g} (k = {k:g})"
        )
    return phi, log_rho, wp, steps, errsum


def integrate_prufer(
    pot: pots.Potential, k: float, x_end: float, tol: float = DEFAULT_TOL
) -> PruferTrajectory:
    """Integrate the coupled (theta, log rho, dtheta/dk) system to x_end.

    Parameters
    ----------
    pot : Potential
        Validated potential; point interactions are handled by their exact
        jump conditions at the interaction position.
    k : float
        Wavenumber, k > 0.
    x_end : float
        Endpoint of the integration, x_end > 0.
    tol : float
        Relative tolerance of the embedded Runge-Kutta pair (absolute
        tolerance is tol/100); must lie in [1e-14, 1e-2].
    """
    k = float(k)
    x_end = float(x_end)
    tol = _check_tol(tol)
    if k <= 0.0:
        raise DomainError(f"wavenumber must be positive, got {k:g}")
    if x_end <= 0.0:
        raise DomainError(f"x_end must be positive, got {x_end:g}")
    phi, log_rho, wp, steps, errsum = _run_kernel(pot, k, x_end, tol)
    return PruferTrajectory(
        k=k,
        x_end=x_end,
        theta=phi + k * x_end,
        log_rho=log_rho,
        dtheta_dk=wp + x_end,
        step_count=int(steps),
        est_local_error=errsum,
    )


def phase_shift(pot: pots.Potential, k: float, tol: float = DEFAULT_TOL) -> PhaseShift:
    """Scattering phase shift delta(k) on the continuous branch.

    Integrates to the support radius, where the phase-shift function
    theta_k(x) - k*x has become constant, so the certified tail bound is
    exactly zero. The derivative delta'(k) comes from the variational
    equation at no extra cost.
    """
    k = float(k)
    tol = _check_tol(tol)
    if k <= 0.0:
        raise DomainError(f"wavenumber must be positive, got {k:g}")
    x_end = pot.support_radius
    if x_end <= 0.0:
        return PhaseShift(k=k, delta=0.0, delta_prime=0.0, tail_bound=0.0)
    phi, _log_rho, wp, _steps, _errsum = _run_kernel(pot, k, x_end, tol)
    return PhaseShift(k=k, delta=phi, delta_prime=wp, tail_bound=0.0)


def phase_shift_grid(
    pot: pots.Potential,
    k_min: float,
    k_max: float,
    count: int,
    tol: float = DEFAULT_TOL,
) -> list[PhaseShift]:
    """Phase shifts at ``count`` geometrically spaced wavenumbers.

    Each entry equals the standalone :func:`phase_shift` call at the same
    wavenumber; the endpoints are exactly k_min and k_max.
    """
    k_min = float(k_min)
    k_max = float(k_max)
    if not (0.0 < k_min < k_max):
        raise DomainError(f"need 0 < k_min < k_max, got ({k_min:g}, {k_max:g})")
    if count < 2:
        raise DomainError(f"count must be at least 2, got {count}")
    ks = np.geomspace(k_min, k_max, int(count))
    ks[0] = k_min
    ks[-1] = k_max
    return [phase_shift(pot, float(k), tol) for k in ks]
