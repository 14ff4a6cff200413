"""Local Lax-Friedrichs split characteristic WENO fluxes and residuals.

The face flux at x_{i+1/2} is assembled from the split fluxes
f_j^{+-} = (f(u_j) +- alpha_{i+1/2} u_j) / 2 over the stencils i-2..i+2
(plus, biased left) and i-1..i+3 (minus, biased right), reconstructed
per characteristic field of the Jacobian at the face-average state.
When the positivity limiter is on, the reconstructed w_{i+1/2}^{+-} and
their q* complements are scaled toward the adjacent cell anchors before
the flux is rebuilt as alpha (w~+ - w~-).

The hot path is a single numba line kernel reused by the 1-D residual,
by both sweep directions of the 2-D residual (the y sweep runs on
component-permuted states, since g(u) = P f(P u)), and indirectly by the
per-face reference implementation used in tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .eigensystem import eig_x_fill, eigen_x, eigen_y
from .exceptions import AnchorViolation, NonAdmissible, NonFinite
from .limiter import W_HAT, LimiterWorkset, limit_face_state, limit_pair
from .state import (
    ADMISSIBILITY_EPS,
    SWAP_XY,
    admissible6,
    alpha_x6,
    flux_x,
    flux_x6,
    flux_y,
    max_speed_x,
    max_speed_y,
    prim_to_cons,
)
from .weno import WenoVariant, weno_right

GHOST = 3

STATUS_OK = 0
STATUS_NONFINITE = 1
STATUS_ANCHOR = 2


@dataclass
class FaceFluxPair:
    """Reconstructed split fluxes and the wave-speed estimate at a face."""

    f_plus: np.ndarray
    f_minus: np.ndarray
    alpha: float


@dataclass
class WSplitState:
    """The two halves w+ and w- of a cell state under LLF splitting."""

    w_plus: np.ndarray
    w_minus: np.ndarray


def split_cell(u, alpha, direction="x"):
    """Split u into w+- = (u +- F(u)/alpha) / 2 along the given axis.

    alpha must dominate the cell wave speed for the halves to be
    admissible; with alpha = alpha(u) exactly this is guaranteed for
    admissible u.
    """
    u = np.asarray(u, dtype=np.float64)
    f = flux_x(u) if direction == "x" else flux_y(u)
    w_plus = 0.5 * (u + f / alpha)
    return WSplitState(w_plus, u - w_plus)


@njit(cache=True)
def _face_fluxes_line(
    u, f, ac, nfaces,
    variant, eps_w, g5, gm1, g0, g1, forced,
    limiter_on, eps_lim,
    out_flux,
):
    """Face fluxes for one grid line of M cells (3 ghosts each side).

    u, f, ac hold the states, physical fluxes and cell wave speeds for
    the whole line; out_flux receives nfaces = M - 5 face fluxes, face
    fi sitting between cells 2+fi and 3+fi.  Returns (status, bad_face,
    limiter_activations).
    """
    lam = np.empty(6)
    R = np.empty((6, 6))
    L = np.empty((6, 6))
    h = np.empty(6)
    charp = np.empty((6, 5))
    charm = np.empty((6, 5))
    cp = np.empty(6)
    cm = np.empty(6)
    fp = np.empty(6)
    fm = np.empty(6)
    anchor_p = np.empty(6)
    anchor_m = np.empty(6)
    wfp = np.empty(6)
    wfm = np.empty(6)
    qp = np.empty(6)
    qm = np.empty(6)
    lw = np.empty(6)
    lq = np.empty(6)
    ubar = np.empty(6)

    activations = 0
    for fi in range(nfaces):
        i = 2 + fi
        a_face = ac[i]
        if ac[i + 1] > a_face:
            a_face = ac[i + 1]

        # Characteristic frame at the arithmetic face average; fall back
        # to componentwise reconstruction if the average is inadmissible.
        for n in range(6):
            ubar[n] = 0.5 * (u[i, n] + u[i + 1, n])
        use_eig = admissible6(ubar, 0.0)
        if use_eig:
            use_eig = eig_x_fill(ubar, lam, R, L) == 0

        # Plus part: stencil i-2 .. i+2, reconstructed at its right face.
        for s in range(5):
            j = i - 2 + s
            for n in range(6):
                h[n] = 0.5 * (f[j, n] + a_face * u[j, n])
            if use_eig:
                for k in range(6):
                    acc = 0.0
                    for m in range(6):
                        acc += L[k, m] * h[m]
                    charp[k, s] = acc
            else:
                for k in range(6):
                    charp[k, s] = h[k]

        # Minus part: stencil i-1 .. i+3, reconstructed at the left face
        # of its center cell (the mirror reconstruction).
        for s in range(5):
            j = i - 1 + s
            for n in range(6):
                h[n] = 0.5 * (f[j, n] - a_face * u[j, n])
            if use_eig:
                for k in range(6):
                    acc = 0.0
                    for m in range(6):
                        acc += L[k, m] * h[m]
                    charm[k, s] = acc
            else:
                for k in range(6):
                    charm[k, s] = h[k]

        for k in range(6):
            vp = weno_right(
                charp[k, 0], charp[k, 1], charp[k, 2], charp[k, 3], charp[k, 4],
                variant, eps_w, g5, gm1, g0, g1, forced,
            )
            vm = weno_right(
                charm[k, 4], charm[k, 3], charm[k, 2], charm[k, 1], charm[k, 0],
                variant, eps_w, g5, g1, g0, gm1, forced,
            )
            if use_eig:
                cp[k] = vp
                cm[k] = vm
            else:
                fp[k] = vp
                fm[k] = vm
        if use_eig:
            for n in range(6):
                accp = 0.0
                accm = 0.0
                for k in range(6):
                    accp += R[n, k] * cp[k]
                    accm += R[n, k] * cm[k]
                fp[n] = accp
                fm[n] = accm

        if limiter_on:
            inv_a = 1.0 / a_face
            for n in range(6):
                wfp[n] = fp[n] * inv_a
                wfm[n] = -fm[n] * inv_a
                anchor_p[n] = 0.5 * (u[i, n] + f[i, n] / ac[i])
                anchor_m[n] = 0.5 * (u[i + 1, n] - f[i + 1, n] / ac[i + 1])
                qp[n] = (anchor_p[n] - W_HAT * wfp[n]) / (1.0 - W_HAT)
                qm[n] = (anchor_m[n] - W_HAT * wfm[n]) / (1.0 - W_HAT)
            st, t1, t2, t3 = limit_pair(anchor_p, wfp, qp, eps_lim, lw, lq)
            if st != 0:
                return STATUS_ANCHOR, fi, activations
            if t1 < 1.0 or t2 < 1.0 or t3 < 1.0:
                activations += 1
            for n in range(6):
                wfp[n] = lw[n]
            st, t1, t2, t3 = limit_pair(anchor_m, wfm, qm, eps_lim, lw, lq)
            if st != 0:
                return STATUS_ANCHOR, fi, activations
            if t1 < 1.0 or t2 < 1.0 or t3 < 1.0:
                activations += 1
            for n in range(6):
                out_flux[fi, n] = a_face * (wfp[n] - lw[n])
        else:
            for n in range(6):
                out_flux[fi, n] = fp[n] + fm[n]

        for n in range(6):
            if not np.isfinite(out_flux[fi, n]):
                return STATUS_NONFINITE, fi, activations

    return STATUS_OK, -1, activations


@njit(cache=True)
def _residual_1d_kernel(
    u, dx,
    variant, eps_w, g5, gm1, g0, g1, forced,
    limiter_on, eps_lim,
    res,
):
    """Semi-discrete residual -(f_{i+1/2} - f_{i-1/2})/dx over a line."""
    m = u.shape[0]
    nfaces = m - 5
    f = np.empty((m, 6))
    ac = np.empty(m)
    for j in range(m):
        flux_x6(u[j], f[j])
        ac[j] = alpha_x6(u[j])
    flux = np.empty((nfaces, 6))
    status, bad, act = _face_fluxes_line(
        u, f, ac, nfaces,
        variant, eps_w, g5, gm1, g0, g1, forced,
        limiter_on, eps_lim, flux,
    )
    if status != STATUS_OK:
        return status, bad, act
    inv = 1.0 / dx
    for c in range(m - 6):
        for n in range(6):
            res[c, n] = -(flux[c + 1, n] - flux[c, n]) * inv
    return STATUS_OK, -1, act


@njit(cache=True)
def _residual_2d_kernel(
    u, dx, dy,
    variant, eps_w, g5, gm1, g0, g1, forced,
    limiter_on, eps_lim,
    res,
):
    """Dimension-by-dimension residual over a 2-D block with ghosts.

    Returns (status, direction, line, face, activations); direction is
    0 for x sweeps and 1 for y sweeps.
    """
    mx = u.shape[0]
    my = u.shape[1]
    nx = mx - 6
    ny = my - 6
    mmax = mx if mx > my else my

    ul = np.empty((mmax, 6))
    fl = np.empty((mmax, 6))
    ac = np.empty(mmax)
    flux = np.empty((mmax - 5, 6))
    activations = 0

    inv_dx = 1.0 / dx
    for j in range(ny):
        jj = GHOST + j
        for s in range(mx):
            for n in range(6):
                ul[s, n] = u[s, jj, n]
            flux_x6(ul[s], fl[s])
            ac[s] = alpha_x6(ul[s])
        status, bad, act = _face_fluxes_line(
            ul[:mx], fl[:mx], ac[:mx], mx - 5,
            variant, eps_w, g5, gm1, g0, g1, forced,
            limiter_on, eps_lim, flux[: mx - 5],
        )
        activations += act
        if status != STATUS_OK:
            return status, 0, j, bad, activations
        for c in range(nx):
            for n in range(6):
                res[c, j, n] = -(flux[c + 1, n] - flux[c, n]) * inv_dx

    # y sweeps run on component-permuted states through the same
    # x-direction machinery: g(u) = P f(P u) with P = SWAP_XY.
    inv_dy = 1.0 / dy
    for i in range(nx):
        ii = GHOST + i
        for s in range(my):
            for n in range(6):
                ul[s, n] = u[ii, s, SWAP_XY[n]]
            flux_x6(ul[s], fl[s])
            ac[s] = alpha_x6(ul[s])
        status, bad, act = _face_fluxes_line(
            ul[:my], fl[:my], ac[:my], my - 5,
            variant, eps_w, g5, gm1, g0, g1, forced,
            limiter_on, eps_lim, flux[: my - 5],
        )
        activations += act
        if status != STATUS_OK:
            return status, 1, i, bad, activations
        for c in range(ny):
            for n in range(6):
                res[i, c, n] -= (flux[c + 1, SWAP_XY[n]] - flux[c, SWAP_XY[n]]) * inv_dy

    return STATUS_OK, -1, -1, -1, activations


def _variant_args(v: WenoVariant):
    gm1, g0, g1 = v.gamma_lo
    return v.code, v.epsilon, v.gamma5, gm1, g0, g1, v.forced_linear


def face_flux_1d(stencil, variant=WenoVariant(), limiter_on=False,
                 eps=ADMISSIBILITY_EPS):
    """Reference per-face flux from the six states u_{i-2} .. u_{i+3}.

    Returns a FaceFluxPair; when limiter_on the pair holds the scaled
    alpha w~+- recombined so that f_plus + f_minus is the scaled flux.
    This mirrors the batch kernel and is used as its cross-check.
    """
    u = np.asarray(stencil, dtype=np.float64)
    if u.shape != (6, 6):
        raise ValueError("stencil must hold six conserved states")
    alpha = max(float(max_speed_x(u[2])), float(max_speed_x(u[3])))

    ubar = 0.5 * (u[2] + u[3])
    if admissible6(ubar, 0.0):
        dec = eigen_x(ubar)
        R, L = dec.R, dec.L
    else:
        R = L = np.eye(6)

    f = flux_x(u)
    hp = 0.5 * (f[0:5] + alpha * u[0:5]) @ L.T
    hm = 0.5 * (f[1:6] - alpha * u[1:6]) @ L.T
    args = _variant_args(variant)
    code, eps_w, g5, gm1, g0, g1, forced = args
    fplus = R @ np.array([
        weno_right(hp[0, k], hp[1, k], hp[2, k], hp[3, k], hp[4, k],
                   code, eps_w, g5, gm1, g0, g1, forced)
        for k in range(6)
    ])
    fminus = R @ np.array([
        weno_right(hm[4, k], hm[3, k], hm[2, k], hm[1, k], hm[0, k],
                   code, eps_w, g5, g1, g0, gm1, forced)
        for k in range(6)
    ])
    if not (np.all(np.isfinite(fplus)) and np.all(np.isfinite(fminus))):
        raise NonFinite("face flux reconstruction produced NaN/Inf")

    if limiter_on:
        ap = split_cell(u[2], float(max_speed_x(u[2]))).w_plus
        am = split_cell(u[3], float(max_speed_x(u[3]))).w_minus
        wfp = fplus / alpha
        wfm = -fminus / alpha
        res_p = limit_face_state(
            LimiterWorkset(ap, wfp, (ap - W_HAT * wfp) / (1 - W_HAT)), eps)
        res_m = limit_face_state(
            LimiterWorkset(am, wfm, (am - W_HAT * wfm) / (1 - W_HAT)), eps)
        fplus = alpha * res_p.w_tilde
        fminus = -alpha * res_m.w_tilde
    return FaceFluxPair(fplus, fminus, alpha)


def residual_1d(u_ext, dx, variant=WenoVariant(), limiter_on=False,
                eps=ADMISSIBILITY_EPS):
    """Residual over interior cells of a ghosted 1-D state array.

    Returns (res, activations); raises NonFinite or AnchorViolation
    with the offending face index attached.
    """
    u_ext = np.ascontiguousarray(u_ext, dtype=np.float64)
    res = np.empty((u_ext.shape[0] - 6, 6))
    code, eps_w, g5, gm1, g0, g1, forced = _variant_args(variant)
    status, bad, act = _residual_1d_kernel(
        u_ext, dx, code, eps_w, g5, gm1, g0, g1, forced,
        limiter_on, eps, res,
    )
    if status == STATUS_NONFINITE:
        raise NonFinite("non-finite face flux", index=bad)
    if status == STATUS_ANCHOR:
        raise AnchorViolation("limiter anchor failed eps margins at face %d" % bad)
    return res, act


def residual_2d(u_ext, dx, dy, variant=WenoVariant(), limiter_on=False,
                eps=ADMISSIBILITY_EPS):
    """Residual over interior cells of a ghosted 2-D state array."""
    u_ext = np.ascontiguousarray(u_ext, dtype=np.float64)
    res = np.empty((u_ext.shape[0] - 6, u_ext.shape[1] - 6, 6))
    code, eps_w, g5, gm1, g0, g1, forced = _variant_args(variant)
    status, direction, line, bad, act = _residual_2d_kernel(
        u_ext, dx, dy, code, eps_w, g5, gm1, g0, g1, forced,
        limiter_on, eps, res,
    )
    if status == STATUS_NONFINITE:
        raise NonFinite(
            "non-finite face flux (%s sweep, line %d)" %
            ("x" if direction == 0 else "y", line),
            index=bad,
        )
    if status == STATUS_ANCHOR:
        raise AnchorViolation(
            "limiter anchor failed eps margins (%s sweep, line %d, face %d)"
            % ("x" if direction == 0 else "y", line, bad)
        )
    return res, act
