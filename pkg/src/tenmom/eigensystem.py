"""Eigenstructure of the flux Jacobians for characteristic-space WENO.

The x-Jacobian at an admissible state has eigenvalues

    v1 - cf, v1 - cs, v1, v1, v1 + cs, v1 + cf

with cf = sqrt(3 p11 / rho) and cs = sqrt(p11 / rho).  The eigenvector
matrices are assembled analytically in primitive space (where they are
sparse) and mapped to conserved space with the exact Jacobians of the
variable change, so L R = I holds in exact arithmetic by construction.
Correctness against the flux Jacobian itself is enforced by the
finite-difference property tests rather than by any particular printed
normalization.

The y-direction system is obtained from the x-direction one through the
component permutation SWAP_XY (g(u) = P f(P u)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .exceptions import NonAdmissible
from .state import SWAP_XY, prim6


@dataclass
class EigenDecomposition:
    """Eigenvalues (ascending) and right/left eigenvector matrices."""

    lambdas: np.ndarray
    R: np.ndarray
    L: np.ndarray


@njit(cache=True)
def eig_x_fill(u, lam, R, L):
    """Fill lam (6,), R (6,6), L (6,6) for the x-Jacobian at state u.

    Returns 0 on success, 1 if the state is not usable (rho or p11 <= 0);
    in that case the output arrays are left untouched.
    """
    rho, v1, v2, p11, p12, p22 = prim6(u)
    if rho <= 0.0 or p11 <= 0.0:
        return 1
    cf = np.sqrt(3.0 * p11 / rho)
    cs = np.sqrt(p11 / rho)
    pr = p12 / p11

    lam[0] = v1 - cf
    lam[1] = v1 - cs
    lam[2] = v1
    lam[3] = v1
    lam[4] = v1 + cs
    lam[5] = v1 + cf

    # Right eigenvectors in primitive space (columns).
    Rp = np.zeros((6, 6))
    Rp[0, 0] = rho
    Rp[1, 0] = -cf
    Rp[2, 0] = -cf * pr
    Rp[3, 0] = 3.0 * p11
    Rp[4, 0] = 3.0 * p12
    Rp[5, 0] = p22 + 2.0 * p12 * pr

    Rp[2, 1] = -cs
    Rp[4, 1] = p11
    Rp[5, 1] = 2.0 * p12

    Rp[0, 2] = 1.0
    Rp[5, 3] = 1.0

    Rp[2, 4] = cs
    Rp[4, 4] = p11
    Rp[5, 4] = 2.0 * p12

    Rp[0, 5] = rho
    Rp[1, 5] = cf
    Rp[2, 5] = cf * pr
    Rp[3, 5] = 3.0 * p11
    Rp[4, 5] = 3.0 * p12
    Rp[5, 5] = p22 + 2.0 * p12 * pr

    # Left eigenvectors in primitive space (rows); exact inverse of Rp.
    Lp = np.zeros((6, 6))
    Lp[0, 1] = -0.5 / cf
    Lp[0, 3] = 1.0 / (6.0 * p11)

    Lp[1, 1] = 0.5 * p12 / (p11 * cs)
    Lp[1, 2] = -0.5 / cs
    Lp[1, 3] = -0.5 * p12 / (p11 * p11)
    Lp[1, 4] = 0.5 / p11

    Lp[2, 0] = 1.0
    Lp[2, 3] = -rho / (3.0 * p11)

    Lp[3, 3] = (4.0 * p12 * p12 / p11 - p22) / (3.0 * p11)
    Lp[3, 4] = -2.0 * pr
    Lp[3, 5] = 1.0

    Lp[4, 1] = -0.5 * p12 / (p11 * cs)
    Lp[4, 2] = 0.5 / cs
    Lp[4, 3] = -0.5 * p12 / (p11 * p11)
    Lp[4, 4] = 0.5 / p11

    Lp[5, 1] = 0.5 / cf
    Lp[5, 3] = 1.0 / (6.0 * p11)

    # Jacobians of the conserved <-> primitive change of variables.
    M = np.zeros((6, 6))
    M[0, 0] = 1.0
    M[1, 0] = v1
    M[1, 1] = rho
    M[2, 0] = v2
    M[2, 2] = rho
    M[3, 0] = 0.5 * v1 * v1
    M[3, 1] = rho * v1
    M[3, 3] = 0.5
    M[4, 0] = 0.5 * v1 * v2
    M[4, 1] = 0.5 * rho * v2
    M[4, 2] = 0.5 * rho * v1
    M[4, 4] = 0.5
    M[5, 0] = 0.5 * v2 * v2
    M[5, 2] = rho * v2
    M[5, 5] = 0.5

    Mi = np.zeros((6, 6))
    Mi[0, 0] = 1.0
    Mi[1, 0] = -v1 / rho
    Mi[1, 1] = 1.0 / rho
    Mi[2, 0] = -v2 / rho
    Mi[2, 2] = 1.0 / rho
    Mi[3, 0] = v1 * v1
    Mi[3, 1] = -2.0 * v1
    Mi[3, 3] = 2.0
    Mi[4, 0] = v1 * v2
    Mi[4, 1] = -v2
    Mi[4, 2] = -v1
    Mi[4, 4] = 2.0
    Mi[5, 0] = v2 * v2
    Mi[5, 2] = -2.0 * v2
    Mi[5, 5] = 2.0

    # R = M Rp, L = Lp Mi
    for i in range(6):
        for j in range(6):
            accR = 0.0
            accL = 0.0
            for k in range(6):
                accR += M[i, k] * Rp[k, j]
                accL += Lp[i, k] * Mi[k, j]
            R[i, j] = accR
            L[i, j] = accL
    return 0


def face_average(uL, uR):
    """Arithmetic mean of two conserved states (componentwise)."""
    return 0.5 * (np.asarray(uL, dtype=np.float64) + np.asarray(uR, dtype=np.float64))


def eigen_x(u):
    """EigenDecomposition of the x-flux Jacobian at state u."""
    u = np.asarray(u, dtype=np.float64)
    lam = np.empty(6)
    R = np.empty((6, 6))
    L = np.empty((6, 6))
    if eig_x_fill(u, lam, R, L) != 0:
        raise NonAdmissible("rho or p11 not positive at eigen_x state")
    return EigenDecomposition(lam, R, L)


def eigen_y(u):
    """EigenDecomposition of the y-flux Jacobian via the x/y swap."""
    u = np.asarray(u, dtype=np.float64)
    d = eigen_x(u[SWAP_XY])
    P = np.eye(6)[SWAP_XY]
    # dg/du = P df/du(Pu) P, so R_y = P R_x(Pu) and L_y = L_x(Pu) P.
    return EigenDecomposition(d.lambdas, P @ d.R, d.L @ P)


def to_characteristic(L, q):
    """Project a 6-vector onto characteristic fields: w = L q."""
    return np.asarray(L) @ np.asarray(q, dtype=np.float64)


def from_characteristic(R, w):
    """Map characteristic amplitudes back to conserved space: q = R w."""
    return np.asarray(R) @ np.asarray(w, dtype=np.float64)
