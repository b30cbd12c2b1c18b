"""Hot numerical kernel: adaptive integration of the Prufer phase system.

The second-order eigenvalue equation -u'' + V u = k^2 u with u(0) = 0 is
rewritten through u = rho sin(theta), u' = k rho cos(theta) as a first-order
system for the angle theta, the log-amplitude log(rho) and the wavenumber
derivative of the angle. The kernel integrates the better-conditioned
phase deficit phi(x) = theta(x) - k*x, whose large-x value is the
scattering phase shift:

    phi'      = -(V/k) sin^2(k x + phi)                 phi(0)      = 0
    (log rho)' =  (V/k) sin(k x + phi) cos(k x + phi)   log rho(0)  = 0
    wp'        =  (V/k^2) sin^2(th) - (2V/k) sin(th) cos(th) (x + wp)

with th = k x + phi and wp = d(phi)/dk, so d(theta)/dk = wp + x.

Potentials enter as a contiguous list of linear pieces (px0, px1, pv0, pv1)
covering [0, support_radius], plus point interactions (jpos, jc). On a
piece with V identically zero, and beyond the support, the deficit
variables are constant and the kernel advances exactly. At a point
interaction the angle jumps within its pi-branch according to

    cot(th+) = cot(th-) + c/k,   rho+ sin(th+) = rho- sin(th-),

and the k-derivative follows by differentiating the jump relation.

Stepping is an embedded Dormand-Prince 5(4) pair with PI step-size control
on mixed absolute/relative error over all three components.

The kernel is compiled with numba ``@njit`` unless the environment variable
``PHASELAB_NO_NUMBA`` is set to 1/true/yes/on, in which case the identical
pure-Python implementation runs instead. ``prufer_kernel_py`` always refers
to the uncompiled twin (used by the benchmark and the equivalence test).
"""

from __future__ import annotations

import math
import os

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0,
    -355.0 / 33.0,
    46732.0 / 5247.0,
    49.0 / 176.0,
    -5103.0 / 18656.0,
)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
)

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 10.0
_EXPO1 = 0.17  # PI controller: h *= safety * err^-expo1 * err_prev^beta
_BETA = 0.04
_MAX_STEPS = 20_000_000
_PI = math.pi

STATUS_OK = 0
STATUS_STEP_UNDERFLOW = 1
STATUS_STEP_BUDGET = 2


def prufer_kernel(k, x_end, rtol, atol, px0, px1, pv0, pv1, jpos, jc):
    """Integrate the phase-deficit system from 0 to x_end.

    Returns (phi, log_rho, dphi_dk, steps, err_phi_accum, status, x_reached).
    """
    phi = 0.0
    ll = 0.0
    wp = 0.0
    x = 0.0
    nsteps = 0
    errsum = 0.0
    ip = 0
    ij = 0
    npieces = px0.shape[0]
    njumps = jpos.shape[0]
    big = 1.0e300

    while x < x_end:
        next_jump = jpos[ij] if ij < njumps else big
        while ip < npieces and px1[ip] <= x:
            ip += 1
        in_piece = ip < npieces and px0[ip] <= x
        if in_piece:
            v_l = pv0[ip]
            v_r = pv1[ip]
            x0p = px0[ip]
            x1p = px1[ip]
            target = x1p if x1p < x_end else x_end
            if next_jump < target:
                target = next_jump
            if v_l == 0.0 and v_r == 0.0:
                x = target
            else:
                slope = (v_r - v_l) / (x1p - x0p)
                vmax = abs(v_l) if abs(v_l) > abs(v_r) else abs(v_r)
                seg = target - x
                h = 0.5 / (k + math.sqrt(vmax) + 1.0)
                if h > seg:
                    h = seg
                facold = 1.0e-4
                rejected = False
                # FSAL: first-stage derivatives at the current point
                vv = v_l + slope * (x - x0p)
                th = k * x + phi
                s = math.sin(th)
                co = math.cos(th)
                vk = vv / k
                k1p = -vk * s * s
                k1l = vk * s * co
                k1w = vk * s * s / k - 2.0 * vk * s * co * (x + wp)
                while x < target:
                    if h > target - x:
                        h = target - x
                    if h < 4.0e-15 * (1.0 + abs(x)):
                        return (phi, ll, wp, nsteps, errsum, STATUS_STEP_UNDERFLOW, x)
                    if nsteps > _MAX_STEPS:
                        return (phi, ll, wp, nsteps, errsum, STATUS_STEP_BUDGET, x)

                    xx = x + _C2 * h
                    pp = phi + h * (_A21 * k1p)
                    ww = wp + h * (_A21 * k1w)
                    vv = v_l + slope * (xx - x0p)
                    th = k * xx + pp
                    s = math.sin(th)
                    co = math.cos(th)
                    vk = vv / k
                    k2p = -vk * s * s
                    k2l = vk * s * co
                    k2w = vk * s * s / k - 2.0 * vk * s * co * (xx + ww)

                    xx = x + _C3 * h
                    pp = phi + h * (_A31 * k1p + _A32 * k2p)
                    ww = wp + h * (_A31 * k1w + _A32 * k2w)
                    vv = v_l + slope * (xx - x0p)
                    th = k * xx + pp
                    s = math.sin(th)
                    co = math.cos(th)
                    vk = vv / k
                    k3p = -vk * s * s
                    k3l = vk * s * co
                    k3w = vk * s * s / k - 2.0 * vk * s * co * (xx + ww)

                    xx = x + _C4 * h
                    pp = phi + h * (_A41 * k1p + _A42 * k2p + _A43 * k3p)
                    ww = wp + h * (_A41 * k1w + _A42 * k2w + _A43 * k3w)
                    vv = v_l + slope * (xx - x0p)
                    th = k * xx + pp
                    s = math.sin(th)
                    co = math.cos(th)
                    vk = vv / k
                    k4p = -vk * s * s
                    k4l = vk * s * co
                    k4w = vk * s * s / k - 2.0 * vk * s * co * (xx + ww)

                    xx = x + _C5 * h
                    pp = phi + h * (_A51 * k1p + _A52 * k2p + _A53 * k3p + _A54 * k4p)
                    ww = wp + h * (_A51 * k1w + _A52 * k2w + _A53 * k3w + _A54 * k4w)
                    vv = v_l + slope * (xx - x0p)
                    th = k * xx + pp
                    s = math.sin(th)
                    co = math.cos(th)
                    vk = vv / k
                    k5p = -vk * s * s
                    k5l = vk * s * co
                    k5w = vk * s * s / k - 2.0 * vk * s * co * (xx + ww)

                    xx = x + h
                    pp = phi + h * (_A61 * k1p + _A62 * k2p + _A63 * k3p + _A64 * k4p + _A65 * k5p)
                    ww = wp + h * (_A61 * k1w + _A62 * k2w + _A63 * k3w + _A64 * k4w + _A65 * k5w)
                    vv = v_l + slope * (xx - x0p)
                    th = k * xx + pp
                    s = math.sin(th)
                    co = math.cos(th)
                    vk = vv / k
                    k6p = -vk * s * s
                    k6l = vk * s * co
                    k6w = vk * s * s / k - 2.0 * vk * s * co * (xx + ww)

                    p_new = phi + h * (_B1 * k1p + _B3 * k3p + _B4 * k4p + _B5 * k5p + _B6 * k6p)
                    l_new = ll + h * (_B1 * k1l + _B3 * k3l + _B4 * k4l + _B5 * k5l + _B6 * k6l)
                    w_new = wp + h * (_B1 * k1w + _B3 * k3w + _B4 * k4w + _B5 * k5w + _B6 * k6w)

                    vv = v_l + slope * (xx - x0p)
                    th = k * xx + p_new
                    s = math.sin(th)
                    co = math.cos(th)
                    vk = vv / k
                    k7p = -vk * s * s
                    k7l = vk * s * co
                    k7w = vk * s * s / k - 2.0 * vk * s * co * (xx + w_new)

                    ep = h * (_E1 * k1p + _E3 * k3p + _E4 * k4p + _E5 * k5p + _E6 * k6p + _E7 * k7p)
                    el = h * (_E1 * k1l + _E3 * k3l + _E4 * k4l + _E5 * k5l + _E6 * k6l + _E7 * k7l)
                    ew = h * (_E1 * k1w + _E3 * k3w + _E4 * k4w + _E5 * k5w + _E6 * k6w + _E7 * k7w)

                    sp = atol + rtol * (abs(phi) if abs(phi) > abs(p_new) else abs(p_new))
                    sl = atol + rtol * (abs(ll) if abs(ll) > abs(l_new) else abs(l_new))
                    sw = atol + rtol * (abs(wp) if abs(wp) > abs(w_new) else abs(w_new))
                    err = math.sqrt(((ep / sp) ** 2 + (el / sl) ** 2 + (ew / sw) ** 2) / 3.0)

                    if err <= 1.0:
                        x = x + h
                        phi = p_new
                        ll = l_new
                        wp = w_new
                        k1p = k7p
                        k1l = k7l
                        k1w = k7w
                        nsteps += 1
                        errsum += abs(ep)
                        if err < 1.0e-30:
                            fac = _MAX_FACTOR
                        else:
                            fac = _SAFETY * (facold**_BETA) * (err ** (-_EXPO1))
                            if fac > _MAX_FACTOR:
                                fac = _MAX_FACTOR
                            if fac < _MIN_FACTOR:
                                fac = _MIN_FACTOR
                        if rejected and fac > 1.0:
                            fac = 1.0
                        rejected = False
                        facold = err if err > 1.0e-4 else 1.0e-4
                        h = h * fac
                    else:
                        fac = _SAFETY * (err ** (-_EXPO1))
                        if fac < _MIN_FACTOR:
                            fac = _MIN_FACTOR
                        h = h * fac
                        rejected = True
                x = target
        else:
            nxt = px0[ip] if ip < npieces else big
            target = x_end if x_end < nxt else nxt
            if next_jump < target:
                target = next_jump
            x = target

        while ij < njumps and jpos[ij] == x:
            c = jc[ij]
            if c > 0.0:
                th = k * x + phi
                s = math.sin(th)
                if s != 0.0:
                    co = math.cos(th)
                    w = wp + x
                    mfl = math.floor(th / _PI)
                    th2 = mfl * _PI + math.atan2(1.0, co / s + c / k)
                    s2 = math.sin(th2)
                    ll += math.log(abs(s / s2))
                    w2 = (w / (s * s) + c / (k * k)) * (s2 * s2)
                    phi = th2 - k * x
                    wp = w2 - x
            ij += 1

    return (phi, ll, wp, nsteps, errsum, STATUS_OK, x)


def _numba_wanted() -> bool:
    flag = os.environ.get("PHASELAB_NO_NUMBA", "").strip().lower()
    return flag not in {"1", "true", "yes", "on"}


prufer_kernel_py = prufer_kernel

NUMBA_ENABLED = False
if _numba_wanted():
    try:
        import numba

        prufer_kernel = numba.njit(cache=True, nogil=True)(prufer_kernel_py)
        NUMBA_ENABLED = True
    except ImportError:
        pass
