"""Closed-form reference solutions for validation.

These are independent of the Runge-Kutta phase integration: the barrier
case matches the explicit interior solution of -u'' + V u = k^2 u, the
point-interaction case matches free sinusoids across the derivative jump
u'(p+) - u'(p-) = c u(p). Both return the continuous-branch value of the
phase (the branch fixed by the angle starting at zero), so they compare
directly with the solver output without any modular reduction.

Used by the acceptance harness and the test suite; not part of the solver
path.
"""

from __future__ import annotations

import math


def square_well_angle(k: float, v: float, b: float, x: float) -> float:
    """Unwound Prufer angle at 0 <= x <= b inside a barrier of height v.

    Inside the barrier the solution is sin(qx) with q^2 = k^2 - v
    (hyperbolic below the barrier top); the angle of (u', k u) is unwound
    by counting the interior nodes of u.
    """
    if x == 0.0:
        return 0.0
    d = k * k - v
    if d > 0.0:
        q = math.sqrt(d)
        m = math.floor(q * x / math.pi)
        r = q * x - m * math.pi
        return m * math.pi + math.atan2(k * math.sin(r), q * math.cos(r))
    if d < 0.0:
        kap = math.sqrt(-d)
        return math.atan2(k * math.tanh(kap * x), kap)
    return math.atan(k * x)


def square_well_phase_shift(k: float, v: float, b: float) -> float:
    """Continuous-branch phase shift of the square barrier (height v, width b)."""
    return square_well_angle(k, v, b, b) - k * b


def dirac_delta_angle_jump(k: float, c: float, p: float) -> float:
    """Angle just past the point interaction, from sinusoid matching.

    Matches u = sin(kx) against B sin(kx + delta) across the derivative
    jump at p and keeps the angle in the same pi-branch.
    """
    kp = k * p
    s = math.sin(kp)
    if s == 0.0:
        return kp
    m = math.floor(kp / math.pi)
    phi = kp - m * math.pi
    sp = math.sin(phi)
    cp = math.cos(phi)
    return m * math.pi + math.atan2(k * sp, k * cp + c * sp)


def dirac_delta_phase_shift(k: float, c: float, p: float) -> float:
    """Continuous-branch phase shift of the point interaction (weight c at p)."""
    return dirac_delta_angle_jump(k, c, p) - k * p


def composite_simpson(f, a: float, b: float, n: int) -> float:
    """Composite Simpson rule with n (even) subintervals; test-grade oracle."""
    if n % 2:
        raise ValueError("composite_simpson needs an even interval count")
    h = (b - a) / n
    total = f(a) + f(b)
    for i in range(1, n):
        total += f(a + i * h) * (4.0 if i % 2 else 2.0)
    return total * h / 3.0
