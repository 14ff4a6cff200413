"""Fifth-order WENO point-value reconstruction on a five-cell stencil.

Three nonlinear weightings are provided over the same candidate
polynomials: classic JS weights, Z weights built from the tau5 global
indicator, and the adaptive-order AO(5,3) blend of one quartic and three
quadratic members.  The reconstruction treats its five inputs as cell
averages of an underlying function on a uniform unit mesh and returns
the point value at the right face of the center cell; the physics never
enters here, so the module works on any scalar (characteristic) field.

A test-only forced-linear-weights mode bypasses the nonlinear weights,
which makes the reconstruction exactly the interpolating polynomial and
enables quartic exactness oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

JS = 0
Z = 1
AO = 2

_TAGS = {"js": JS, "z": Z, "ao": AO}

#: Default smoothness-indicator regularizations, one per variant,
#: each following its original publication.
EPS_JS = 1e-6
EPS_Z = 1e-40
EPS_AO = 1e-12

#: AO(5,3) linear weights: quartic member, then the three quadratics.
GAMMA5 = 0.5
GAMMA_LO = (0.125, 0.25, 0.125)


@dataclass(frozen=True)
class WenoVariant:
    """Reconstruction variant selector.

    tag is one of "js", "z", "ao".  The AO linear weights must be
    positive and sum to one.  forced_linear and eps exist for tests:
    forced_linear bypasses nonlinear weights, eps overrides the
    indicator regularization (None picks the variant default).
    """

    tag: str = "z"
    gamma5: float = GAMMA5
    gamma_lo: tuple = GAMMA_LO
    forced_linear: bool = False
    eps: float | None = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise ValueError("unknown WENO variant %r" % (self.tag,))
        g = (self.gamma5,) + tuple(self.gamma_lo)
        if any(w <= 0.0 for w in g) or abs(sum(g) - 1.0) > 1e-12:
            raise ValueError("AO linear weights must be positive and sum to 1")

    @property
    def code(self):
        return _TAGS[self.tag]

    @property
    def epsilon(self):
        if self.eps is not None:
            return self.eps
        return (EPS_JS, EPS_Z, EPS_AO)[self.code]


@njit(cache=True, inline="always")
def weno_right(a, b, c, d, e, variant, eps, g5, gm1, g0, g1, forced):
    """Reconstructed value at the right face of the center cell c.

    (a, b, c, d, e) are cell averages on the stencil i-2 .. i+2.
    """
    # Candidate quadratic face values and JS smoothness indicators.
    q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0
    q1 = (-b + 5.0 * c + 2.0 * d) / 6.0
    q2 = (2.0 * c + 5.0 * d - e) / 6.0
    b0 = (13.0 / 12.0) * (a - 2.0 * b + c) ** 2 + 0.25 * (a - 4.0 * b + 3.0 * c) ** 2
    b1 = (13.0 / 12.0) * (b - 2.0 * c + d) ** 2 + 0.25 * (b - d) ** 2
    b2 = (13.0 / 12.0) * (c - 2.0 * d + e) ** 2 + 0.25 * (3.0 * c - 4.0 * d + e) ** 2

    if variant == 2:
        # Legendre coefficients of the quartic through all five averages.
        s1 = d - b
        s2 = e - a
        t1 = d + b - 2.0 * c
        t2 = e + a - 2.0 * c
        c1 = (82.0 * s1 - 11.0 * s2) / 120.0
        c2 = (40.0 * t1 - 3.0 * t2) / 56.0
        c3 = (s2 - 2.0 * s1) / 12.0
        c4 = (t2 - 4.0 * t1) / 24.0
        v5 = c + 0.5 * c1 + c2 / 6.0 + c3 / 20.0 + c4 / 70.0
        if forced:
            return v5
        b5 = (
            (c1 + 0.1 * c3) ** 2
            + (13.0 / 3.0) * (c2 + (123.0 / 455.0) * c4) ** 2
            + (781.0 / 20.0) * c3 * c3
            + (1421461.0 / 2275.0) * c4 * c4
        )
        tau = (abs(b5 - b0) + abs(b5 - b1) + abs(b5 - b2)) / 3.0
        w5 = g5 * (1.0 + (tau / (b5 + eps)) ** 2)
        w0 = gm1 * (1.0 + (tau / (b0 + eps)) ** 2)
        w1 = g0 * (1.0 + (tau / (b1 + eps)) ** 2)
        w2 = g1 * (1.0 + (tau / (b2 + eps)) ** 2)
        tot = w5 + w0 + w1 + w2
        w5 /= tot
        w0 /= tot
        w1 /= tot
        w2 /= tot
        return (
            (w5 / g5) * (v5 - gm1 * q0 - g0 * q1 - g1 * q2)
            + w0 * q0
            + w1 * q1
            + w2 * q2
        )

    # JS / Z share the classic three-member combination.
    d0, d1, d2 = 0.1, 0.6, 0.3
    if forced:
        return d0 * q0 + d1 * q1 + d2 * q2
    if variant == 0:
        a0 = d0 / (eps + b0) ** 2
        a1 = d1 / (eps + b1) ** 2
        a2 = d2 / (eps + b2) ** 2
    else:
        tau5 = abs(b0 - b2)
        a0 = d0 * (1.0 + (tau5 / (b0 + eps)) ** 2)
        a1 = d1 * (1.0 + (tau5 / (b1 + eps)) ** 2)
        a2 = d2 * (1.0 + (tau5 / (b2 + eps)) ** 2)
    tot = a0 + a1 + a2
    return (a0 * q0 + a1 * q1 + a2 * q2) / tot


def reconstruct_right(stencil, variant=WenoVariant()):
    """Point value at the face x_{i+1/2} from averages q_{i-2..i+2}."""
    a, b, c, d, e = (float(v) for v in stencil)
    gm1, g0, g1 = variant.gamma_lo
    return weno_right(
        a, b, c, d, e,
        variant.code, variant.epsilon,
        variant.gamma5, gm1, g0, g1,
        variant.forced_linear,
    )


def reconstruct_left(stencil, variant=WenoVariant()):
    """Point value at the face x_{i-1/2}: the mirror reconstruction."""
    a, b, c, d, e = (float(v) for v in stencil)
    # Reflection swaps the roles of the two one-sided substencils.
    gm1, g0, g1 = variant.gamma_lo
    return weno_right(
        e, d, c, b, a,
        variant.code, variant.epsilon,
        variant.gamma5, g1, g0, gm1,
        variant.forced_linear,
    )
