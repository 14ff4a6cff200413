"""State algebra for the Ten-Moment (Gaussian closure) model.

Conserved state ordering is fixed everywhere as

    u = (rho, rho*v1, rho*v2, E11, E12, E22)

and the primitive counterpart is (rho, v1, v2, p11, p12, p22) with the
closure E = (p + rho v x v) / 2.  A state is admissible when rho > 0 and
the pressure tensor is positive definite (p11 > 0, p22 > 0, det p > 0).

Scalar kernels (njit) are the single source of truth for the formulas;
the array API below wraps them with broadcasting and error handling.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .exceptions import NonAdmissible, ZeroDensity

#: Component indices of the conserved/primitive 6-vectors.
RHO, M1, M2, E11, E12, E22 = range(6)

#: |rho| below this only guards division; it is not an admissibility bound.
DENSITY_FLOOR = 1e-300

#: Default eps for admissibility tests, matching the limiter's epsilon.
ADMISSIBILITY_EPS = 1e-13


# ------------------------------------------------------------------
# Scalar kernels on 6-vectors
# ------------------------------------------------------------------

@njit(cache=True, inline="always")
def prim6(u):
    """Primitive variables (rho, v1, v2, p11, p12, p22) of one state."""
    rho = u[0]
    v1 = u[1] / rho
    v2 = u[2] / rho
    p11 = 2.0 * u[3] - rho * v1 * v1
    p12 = 2.0 * u[4] - rho * v1 * v2
    p22 = 2.0 * u[5] - rho * v2 * v2
    return rho, v1, v2, p11, p12, p22


@njit(cache=True, inline="always")
def flux_x6(u, out):
    """x-flux of one conserved state, written into out."""
    rho, v1, v2, p11, p12, p22 = prim6(u)
    out[0] = rho * v1
    out[1] = rho * v1 * v1 + p11
    out[2] = rho * v1 * v2 + p12
    out[3] = (u[3] + p11) * v1
    out[4] = u[4] * v1 + 0.5 * (p11 * v2 + p12 * v1)
    out[5] = u[5] * v1 + p12 * v2


@njit(cache=True, inline="always")
def alpha_x6(u):
    """Max wave speed |v1| + sqrt(3 p11 / rho); NaN if not admissible."""
    rho, v1, _, p11, _, _ = prim6(u)
    if rho <= 0.0 or p11 <= 0.0:
        return np.nan
    return abs(v1) + np.sqrt(3.0 * p11 / rho)


@njit(cache=True, inline="always")
def admissible6(u, eps):
    """True iff rho, p11, p22 and det p all exceed eps."""
    rho, _, _, p11, p12, p22 = prim6(u)
    return (
        rho > eps
        and p11 > eps
        and p22 > eps
        and p11 * p22 - p12 * p12 > eps
    )


#: Component permutation swapping the roles of the x and y directions:
#: (rho, m1, m2, E11, E12, E22) -> (rho, m2, m1, E22, E12, E11).
#: It is an involution and satisfies f(P u) = P g(u).
SWAP_XY = np.array([0, 2, 1, 5, 4, 3], dtype=np.int64)


# ------------------------------------------------------------------
# Array API
# ------------------------------------------------------------------

def prim_to_cons(V):
    """Conserved state(s) from primitive (rho, v1, v2, p11, p12, p22).

    Total function: accepts any finite input, vectorized over leading axes.
    """
    V = np.asarray(V, dtype=np.float64)
    rho, v1, v2 = V[..., 0], V[..., 1], V[..., 2]
    u = np.empty_like(V)
    u[..., 0] = rho
    u[..., 1] = rho * v1
    u[..., 2] = rho * v2
    u[..., 3] = 0.5 * (V[..., 3] + rho * v1 * v1)
    u[..., 4] = 0.5 * (V[..., 4] + rho * v1 * v2)
    u[..., 5] = 0.5 * (V[..., 5] + rho * v2 * v2)
    return u


def cons_to_prim(u):
    """Primitive state(s) from conserved; raises ZeroDensity near rho = 0."""
    u = np.asarray(u, dtype=np.float64)
    rho = u[..., 0]
    if np.any(np.abs(rho) < DENSITY_FLOOR):
        raise ZeroDensity("density magnitude below %g" % DENSITY_FLOOR)
    v1 = u[..., 1] / rho
    v2 = u[..., 2] / rho
    V = np.empty_like(u)
    V[..., 0] = rho
    V[..., 1] = v1
    V[..., 2] = v2
    V[..., 3] = 2.0 * u[..., 3] - rho * v1 * v1
    V[..., 4] = 2.0 * u[..., 4] - rho * v1 * v2
    V[..., 5] = 2.0 * u[..., 5] - rho * v2 * v2
    return V


def flux_x(u):
    """Physical x-flux f(u), vectorized over leading axes."""
    V = cons_to_prim(u)
    rho, v1, v2 = V[..., 0], V[..., 1], V[..., 2]
    p11, p12 = V[..., 3], V[..., 4]
    u = np.asarray(u, dtype=np.float64)
    f = np.empty_like(u)
    f[..., 0] = rho * v1
    f[..., 1] = rho * v1 * v1 + p11
    f[..., 2] = rho * v1 * v2 + p12
    f[..., 3] = (u[..., 3] + p11) * v1
    f[..., 4] = u[..., 4] * v1 + 0.5 * (p11 * v2 + p12 * v1)
    f[..., 5] = u[..., 5] * v1 + p12 * v2
    return f


def flux_y(u):
    """Physical y-flux g(u) = P f(P u) with P the x/y component swap."""
    u = np.asarray(u, dtype=np.float64)
    return flux_x(u[..., SWAP_XY])[..., SWAP_XY]


def max_speed_x(u):
    """alpha^x = |v1| + sqrt(3 p11 / rho); raises NonAdmissible."""
    V = cons_to_prim(u)
    rho, p11 = V[..., 0], V[..., 3]
    if np.any(rho <= 0.0) or np.any(p11 <= 0.0):
        raise NonAdmissible("rho or p11 not positive")
    return np.abs(V[..., 1]) + np.sqrt(3.0 * p11 / rho)


def max_speed_y(u):
    """alpha^y = |v2| + sqrt(3 p22 / rho); raises NonAdmissible."""
    u = np.asarray(u, dtype=np.float64)
    return max_speed_x(u[..., SWAP_XY])


def is_admissible(u, eps=ADMISSIBILITY_EPS):
    """Admissibility of a single state: all four functionals exceed eps."""
    u = np.asarray(u, dtype=np.float64)
    return bool(admissible6(u, eps))


def admissible_mask(u, eps=ADMISSIBILITY_EPS):
    """Elementwise admissibility over leading axes (no error raised)."""
    u = np.asarray(u, dtype=np.float64)
    rho = u[..., 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        v1 = u[..., 1] / rho
        v2 = u[..., 2] / rho
        p11 = 2.0 * u[..., 3] - rho * v1 * v1
        p12 = 2.0 * u[..., 4] - rho * v1 * v2
        p22 = 2.0 * u[..., 5] - rho * v2 * v2
        det = p11 * p22 - p12 * p12
    return (rho > eps) & (p11 > eps) & (p22 > eps) & (det > eps)
