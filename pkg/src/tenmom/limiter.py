"""Scaling limiter that pulls face states into the admissible set.

Each split face state w and its companion cell-average complement q*
are scaled toward the admissible cell anchor by the same factors:
first the densities alone (theta1), then the whole vectors against the
diagonal pressures (theta2) and the pressure determinant (theta3).
The roots are found by bisection, which is robust against branch
selection: the diagonal pressures are concave along state-space
segments, so their crossings are unique, while the cubic determinant
margin is bracketed by its critical points to pick the first crossing.
After limiting, both outputs satisfy rho, p11, p22, det p >= eps, the
sufficient condition of the positivity theorems for the forward Euler
update at CFL w_hat.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .exceptions import AnchorViolation
from .state import ADMISSIBILITY_EPS, admissible6

#: Four-point Gauss-Lobatto rule on [-1, 1]; the endpoint weight 1/12
#: is both the q* blend weight and the positivity CFL number.
GL4_NODES = np.array([-1.0, -1.0 / np.sqrt(5.0), 1.0 / np.sqrt(5.0), 1.0])
GL4_WEIGHTS = np.array([1.0 / 12.0, 5.0 / 12.0, 5.0 / 12.0, 1.0 / 12.0])
W_HAT = 1.0 / 12.0

_BISECT_ITERS = 60  # bracket width 2^-60, far below the 1e-12 tolerance

#: The scaled outputs must test admissible under any algebraically
#: equivalent evaluation of the pressure functionals, whose mutual
#: roundoff is a few ulps of the term magnitudes; the limiter therefore
#: targets eps plus this many ulps of headroom.
_SLACK_ULPS = 64.0 * 2.220446049250313e-16


@dataclass
class LimiterWorkset:
    """Anchor state, face state and q* complement entering the limiter."""

    w_cell: np.ndarray
    w_face: np.ndarray
    q_star: np.ndarray


@dataclass
class LimitResult:
    """Scaled face state, scaled q*, and the three scaling factors."""

    w_tilde: np.ndarray
    q_tilde: np.ndarray
    theta1: float
    theta2: float
    theta3: float

    @property
    def activated(self):
        return self.theta1 < 1.0 or self.theta2 < 1.0 or self.theta3 < 1.0


@njit(cache=True, inline="always")
def _p_margin(wc, s, t, eps, k):
    """rho*(p_kk - eps) at the point (1-t) wc + t s, k in {1, 2}."""
    if k == 1:
        im, ie = 1, 3
    else:
        im, ie = 2, 5
    rho = wc[0] + t * (s[0] - wc[0])
    m = wc[im] + t * (s[im] - wc[im])
    e = wc[ie] + t * (s[ie] - wc[ie])
    return 2.0 * rho * e - m * m - eps * rho


@njit(cache=True, inline="always")
def _det_margin(wc, s, t, eps):
    """rho*(det p - eps) at the point (1-t) wc + t s; cubic in t."""
    rho = wc[0] + t * (s[0] - wc[0])
    m1 = wc[1] + t * (s[1] - wc[1])
    m2 = wc[2] + t * (s[2] - wc[2])
    e11 = wc[3] + t * (s[3] - wc[3])
    e12 = wc[4] + t * (s[4] - wc[4])
    e22 = wc[5] + t * (s[5] - wc[5])
    d = 4.0 * rho * (e11 * e22 - e12 * e12) \
        - 2.0 * (e11 * m2 * m2 + e22 * m1 * m1 - 2.0 * e12 * m1 * m2)
    return d - eps * rho


@njit(cache=True, inline="always")
def _p_slack(wc, wf, q, k):
    """Roundoff headroom for the p_kk margin, from the term magnitudes."""
    if k == 1:
        im, ie = 1, 3
    else:
        im, ie = 2, 5
    s = 0.0
    for st in (wc, wf, q):
        m = 2.0 * abs(st[0] * st[ie]) + st[im] * st[im]
        if m > s:
            s = m
    return _SLACK_ULPS * s


@njit(cache=True, inline="always")
def _det_slack(wc, wf, q):
    """Roundoff headroom for the det margin, from the term magnitudes."""
    s = 0.0
    for st in (wc, wf, q):
        m = 4.0 * abs(st[0]) * (abs(st[3] * st[5]) + st[4] * st[4]) \
            + 2.0 * (abs(st[3]) * st[2] * st[2] + abs(st[5]) * st[1] * st[1]
                     + 2.0 * abs(st[4] * st[1] * st[2]))
        if m > s:
            s = m
    return _SLACK_ULPS * s


@njit(cache=True)
def _bisect_p(wc, s, eps, k, target):
    """Crossing of p_kk = eps on the segment wc -> s (margin >= target at lo).

    p_kk is concave along the segment (rho stays positive after step 1),
    so the superlevel set is an interval and the crossing is unique.
    """
    lo = 0.0
    hi = 1.0
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if _p_margin(wc, s, mid, eps, k) >= target:
            lo = mid
        else:
            hi = mid
    return lo


@njit(cache=True)
def _bisect_det(wc, s, eps, target):
    """First crossing of det p = eps on the segment wc -> s.

    The margin is cubic in t and may recross; bisection alone could
    land on a later root and leave an interior dip below eps.  The
    cubic is monotone between the roots of its derivative, so locating
    those first and bisecting inside the earliest sign-change segment
    yields the first crossing.
    """
    m0 = _det_margin(wc, s, 0.0, eps)
    u1 = _det_margin(wc, s, 1.0 / 3.0, eps) - m0
    u2 = _det_margin(wc, s, 2.0 / 3.0, eps) - m0
    u3 = _det_margin(wc, s, 1.0, eps) - m0
    b = 9.0 * u1 - 4.5 * u2 + u3
    c = -22.5 * u1 + 18.0 * u2 - 4.5 * u3
    d = 13.5 * u1 - 13.5 * u2 + 4.5 * u3

    # Segment boundaries: 0, critical points of the cubic in (0,1), 1.
    t_a = 1.0
    t_b = 1.0
    scale = abs(b) + abs(c) + abs(d)
    if abs(d) > 1e-14 * scale:
        disc = c * c - 3.0 * d * b
        if disc > 0.0:
            r = np.sqrt(disc)
            r1 = (-c - r) / (3.0 * d)
            r2 = (-c + r) / (3.0 * d)
            if r1 > r2:
                r1, r2 = r2, r1
            if 0.0 < r1 < 1.0:
                t_a = r1
            if 0.0 < r2 < 1.0:
                if t_a < 1.0:
                    t_b = r2
                else:
                    t_a = r2
    elif abs(c) > 1e-14 * scale:
        r1 = -0.5 * b / c
        if 0.0 < r1 < 1.0:
            t_a = r1

    lo = 0.0
    for hi in (t_a, t_b, 1.0):
        if hi <= lo:
            continue
        if _det_margin(wc, s, hi, eps) < target:
            for _ in range(_BISECT_ITERS):
                mid = 0.5 * (lo + hi)
                if _det_margin(wc, s, mid, eps) >= target:
                    lo = mid
                else:
                    hi = mid
            return lo
        lo = hi
    return 1.0


@njit(cache=True)
def limit_pair(wc, wf, q, eps, out_w, out_q):
    """Apply the three limiter steps to one (anchor, face, q*) triple.

    Writes the scaled face state and scaled q* into out_w / out_q and
    returns (status, theta1, theta2, theta3); status 2 flags an anchor
    outside the admissible set, which the split-state theorem rules out
    for admissible cells and therefore signals an upstream bug.

    Near vacuum an anchor can be admissible with functionals below eps
    (its margins shrink quadratically with the cell's); the working
    epsilon is then lowered to half the anchor's own margins so the
    pull-back targets stay strictly inside the admissible set.
    """
    if not admissible6(wc, 0.0):
        return 2, 1.0, 1.0, 1.0
    rho_c = wc[0]
    p11_c = (2.0 * wc[0] * wc[3] - wc[1] * wc[1]) / rho_c
    p22_c = (2.0 * wc[0] * wc[5] - wc[2] * wc[2]) / rho_c
    det_c = _det_margin(wc, wc, 0.0, 0.0) / rho_c
    m = min(min(rho_c, det_c), min(p11_c, p22_c))
    if 0.5 * m < eps:
        eps = 0.5 * m

    for n in range(6):
        out_w[n] = wf[n]
        out_q[n] = q[n]

    # Step 1: pull the densities alone up to eps.  Scaling targets sit
    # one slack above the detection thresholds so the stored outputs
    # clear eps after roundoff and a second limiter pass is a no-op.
    slack1 = _SLACK_ULPS * max(abs(wc[0]), max(abs(out_w[0]), abs(out_q[0])))
    rho_min = min(out_w[0], out_q[0])
    theta1 = 1.0
    if rho_min < eps + slack1:
        theta1 = (wc[0] - eps - 2.0 * slack1) / (wc[0] - rho_min)
        if theta1 > 1.0:
            theta1 = 1.0
        if theta1 < 0.0:
            theta1 = 0.0
        out_w[0] = wc[0] + theta1 * (out_w[0] - wc[0])
        out_q[0] = wc[0] + theta1 * (out_q[0] - wc[0])

    # Step 2: diagonal pressures, scaling whole vectors.
    theta2 = 1.0
    for k in (1, 2):
        slack = _p_slack(wc, out_w, out_q, k)
        if _p_margin(wc, out_w, 1.0, eps, k) < slack:
            t = _bisect_p(wc, out_w, eps, k, 2.0 * slack)
            if t < theta2:
                theta2 = t
        if _p_margin(wc, out_q, 1.0, eps, k) < slack:
            t = _bisect_p(wc, out_q, eps, k, 2.0 * slack)
            if t < theta2:
                theta2 = t
    if theta2 < 1.0:
        for n in range(6):
            out_w[n] = wc[n] + theta2 * (out_w[n] - wc[n])
            out_q[n] = wc[n] + theta2 * (out_q[n] - wc[n])

    # Step 3: pressure determinant.
    theta3 = 1.0
    slack = _det_slack(wc, out_w, out_q)
    if _det_margin(wc, out_w, 1.0, eps) < slack:
        theta3 = _bisect_det(wc, out_w, eps, 2.0 * slack)
    if _det_margin(wc, out_q, 1.0, eps) < slack:
        t = _bisect_det(wc, out_q, eps, 2.0 * slack)
        if t < theta3:
            theta3 = t
    if theta3 < 1.0:
        for n in range(6):
            out_w[n] = wc[n] + theta3 * (out_w[n] - wc[n])
            out_q[n] = wc[n] + theta3 * (out_q[n] - wc[n])

    return 0, theta1, theta2, theta3


def compute_q_star(w_cell, w_face, w_hat=W_HAT):
    """Complement state (w_cell - w_hat w_face) / (1 - w_hat)."""
    if not 0.0 < w_hat < 1.0:
        raise ValueError("w_hat must lie in (0, 1)")
    w_cell = np.asarray(w_cell, dtype=np.float64)
    w_face = np.asarray(w_face, dtype=np.float64)
    return (w_cell - w_hat * w_face) / (1.0 - w_hat)


def limit_face_state(ws, eps=ADMISSIBILITY_EPS):
    """Limit one workset; returns a LimitResult with the scaled states."""
    wc = np.asarray(ws.w_cell, dtype=np.float64)
    wf = np.asarray(ws.w_face, dtype=np.float64)
    q = np.asarray(ws.q_star, dtype=np.float64)
    out_w = np.empty(6)
    out_q = np.empty(6)
    status, t1, t2, t3 = limit_pair(wc, wf, q, eps, out_w, out_q)
    if status == 2:
        raise AnchorViolation("anchor state is outside the admissible set")
    return LimitResult(out_w, out_q, t1, t2, t3)


def limit_face_flux(left_ws, right_ws, alpha, eps=ADMISSIBILITY_EPS):
    """Numerical flux alpha * (w~+ - w~-) from the two limited sides."""
    plus = limit_face_state(left_ws, eps)
    minus = limit_face_state(right_ws, eps)
    return alpha * (plus.w_tilde - minus.w_tilde)
