"""Dirichlet eigenvalues on (0, L) by shooting on the Prufer angle.

The free operator has eigenvalues (n pi / L)^2. Perturbed eigenvalues are
the wavenumbers where the angle hits the quantization condition
theta_k(L) = n pi; since k -> theta_k(L) is strictly increasing, bracketed
root finding is guaranteed to converge. Past the support of the potential
the condition reduces to the scalar equation k L + delta(k) = n pi, which
the quantized fast path solves while integrating only over the support,
so its cost per eigenvalue is independent of L.

The root tolerance ``k_tol`` bounds both the bracket width in k and the
accepted quantization residual in the angle variable, so the reported
residual theta(L) - n pi is itself below ``k_tol`` (up to the double
precision floor L * k * eps at very large L).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import potentials as pots
from .errors import ConfigError, DomainError, InputError, NumericError
from .variable_phase import DEFAULT_TOL, integrate_prufer, phase_shift

DEFAULT_K_TOL = 1e-12
_MAX_BRACKET_DOUBLINGS = 64
_MAX_ROOT_ITER = 200


@dataclass(frozen=True)
class SpectrumPair:
    """Aligned free and perturbed Dirichlet spectra on (0, L).

    Arrays are indexed by eigenvalue number, ``n[i]`` running from 1;
    ``lam`` holds (n pi / L)^2 exactly, ``mu`` the perturbed eigenvalues,
    ``k_mu`` their square roots, and ``residual`` the quantization
    residual theta_{k_mu}(L) - n pi in angle units.
    """

    L: float
    n: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    k_mu: np.ndarray
    residual: np.ndarray


def free_eigenvalue(n: int, L: float) -> float:
    """The n-th Dirichlet eigenvalue (n pi / L)^2 of the free operator."""
    if n < 1:
        raise DomainError(f"eigenvalue index must be >= 1, got {n}")
    if L <= 0.0:
        raise DomainError(f"interval length must be positive, got {L}")
    return (n * math.pi / L) ** 2


def _bracketed_root(f, lo: float, hi: float, k_tol: float, what: str):
    """Regula falsi (Illinois) with bisection safeguard on a sign bracket.

    Terminates when the freshly evaluated |f| drops below ``k_tol`` or the
    bracket collapses to floating-point resolution; returns (root, f(root)).
    """
    flo = f(lo)
    if abs(flo) <= k_tol:
        return lo, flo
    fhi = f(hi)
    if abs(fhi) <= k_tol:
        return hi, fhi

    # expand until the bracket straddles a sign change
    doublings = 0
    while flo > 0.0:
        width = hi - lo
        lo = max(lo - width, 1e-300)
        flo = f(lo)
        if abs(flo) <= k_tol:
            return lo, flo
        doublings += 1
        if doublings > _MAX_BRACKET_DOUBLINGS:
            raise NumericError(f"{what}: monotonicity violated, integrator tolerance too loose")
    while fhi < 0.0:
        hi = hi + (hi - lo)
        fhi = f(hi)
        if abs(fhi) <= k_tol:
            return hi, fhi
        doublings += 1
        if doublings > _MAX_BRACKET_DOUBLINGS:
            raise NumericError(f"{what}: monotonicity violated, integrator tolerance too loose")

    side = 0
    glo, ghi = flo, fhi  # interpolation copies (Illinois halving applies here)
    for _ in range(_MAX_ROOT_ITER):
        if hi - lo <= k_tol + 4.0 * math.ulp(max(abs(lo), abs(hi))):
            mid = 0.5 * (lo + hi)
            return mid, f(mid)
        denom = ghi - glo
        if denom != 0.0:
            x = (lo * ghi - hi * glo) / denom
        else:
            x = 0.5 * (lo + hi)
        if not (lo < x < hi):
            x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) <= k_tol:
            return x, fx
        if (fx > 0.0) == (flo > 0.0):
            lo, flo, glo = x, fx, fx
            if side == -1:
                ghi *= 0.5
            side = -1
        else:
            hi, fhi, ghi = x, fx, fx
            if side == 1:
                glo *= 0.5
            side = 1
    raise NumericError(
        f"{what}: root iteration did not converge "
        f"(bracket [{lo:.17g}, {hi:.17g}], f = [{flo:.3g}, {fhi:.3g}])"
    )


def _initial_bracket(pot: pots.Potential, n: int, L: float) -> tuple[float, float]:
    lo = n * math.pi / L
    hi = lo + pot.m0 / (n * math.pi) + math.pi / L
    return lo, hi


def _check_args(pot: pots.Potential, n: int, L: float, k_tol: float):
    if n < 1:
        raise DomainError(f"eigenvalue index must be >= 1, got {n}")
    if L <= 0.0:
        raise DomainError(f"interval length must be positive, got {L}")
    if not (1e-15 <= k_tol <= 1e-2):
        raise ConfigError(f"k_tol must lie in [1e-15, 1e-2], got {k_tol:g}")


def perturbed_eigenvalue(
    pot: pots.Potential,
    n: int,
    L: float,
    k_tol: float = DEFAULT_K_TOL,
    ode_tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """Shooting path: solve theta_k(L) = n pi by re-integrating over [0, L].

    Returns (mu, residual) with mu = k^2 and the residual in angle units.
    """
    _check_args(pot, n, L, k_tol)
    n_pi = n * math.pi

    def f(k: float) -> float:
        traj = integrate_prufer(pot, k, L, ode_tol)
        return (traj.theta - k * L) + (k * L - n_pi)

    lo, hi = _initial_bracket(pot, n, L)
    k_root, res = _bracketed_root(f, lo, hi, k_tol, f"perturbed_eigenvalue(n={n}, L={L:g})")
    return k_root * k_root, res


def perturbed_eigenvalue_quantized(
    pot: pots.Potential,
    n: int,
    L: float,
    k_tol: float = DEFAULT_K_TOL,
    ode_tol: float = DEFAULT_TOL,
) -> tuple[float, float]:
    """Fast path: solve k L + delta(k) = n pi, valid for L past the support.

    The phase system is integrated only over [0, support_radius]; beyond it
    the angle grows exactly linearly, so the quantization condition is
    exact and the cost per eigenvalue does not grow with L.
    """
    _check_args(pot, n, L, k_tol)
    if L < pot.support_radius:
        raise DomainError(
            f"quantized path needs L >= support radius ({pot.support_radius:g}), got {L:g}"
        )
    n_pi = n * math.pi

    def f(k: float) -> float:
        return (k * L - n_pi) + phase_shift(pot, k, ode_tol).delta

    lo, hi = _initial_bracket(pot, n, L)
    k_root, res = _bracketed_root(
        f, lo, hi, k_tol, f"perturbed_eigenvalue_quantized(n={n}, L={L:g})"
    )
    return k_root * k_root, res


def spectrum(
    pot: pots.Potential,
    L: float,
    n_max: int,
    k_tol: float = DEFAULT_K_TOL,
    ode_tol: float = DEFAULT_TOL,
    threads: int = 1,
) -> SpectrumPair:
    """Aligned (lambda_n, mu_n) for n = 1..n_max.

    Uses the quantized fast path whenever L reaches the support radius and
    falls back to full shooting otherwise. Eigenvalues for distinct n are
    independent; with ``threads`` > 1 (0 = auto) they are computed in a
    thread pool, collected in index order, and the result is bit-identical
    to the sequential one.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if L <= 1.0:
        raise InputError(f"spectrum needs interval length L > 1, got {L:g}")
    solver = perturbed_eigenvalue_quantized if L >= pot.support_radius else perturbed_eigenvalue

    def solve_one(n: int) -> tuple[float, float]:
        return solver(pot, n, L, k_tol, ode_tol)

    ns = list(range(1, n_max + 1))
    if threads == 1:
        results = [solve_one(n) for n in ns]
    else:
        workers = threads if threads > 0 else None
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(solve_one, ns))

    n_arr = np.array(ns, dtype=np.int64)
    lam = (n_arr * math.pi / L) ** 2
    mu = np.array([r[0] for r in results])
    residual = np.array([r[1] for r in results])
    return SpectrumPair(
        L=float(L),
        n=n_arr,
        lam=lam,
        mu=mu,
        k_mu=np.sqrt(mu),
        residual=residual,
    )
