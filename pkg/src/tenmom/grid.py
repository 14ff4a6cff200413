"""Uniform 1-D/2-D cell-centered meshes, fields and ghost filling.

Cell centers sit at x0 + (i + 1/2) dx, so faces fall halfway between
neighboring centers.  The ghost width is fixed at 3: the right-biased
split-flux stencil reaches three cells past a face.  2-D ghosts are
filled x-direction first over interior rows, then y-direction over the
full x extent; the dimension-split stencils never read the corner
blocks diagonally, so this ordering choice is inert.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .exceptions import ConfigError
from .state import prim_to_cons

GHOST = 3

PERIODIC = "periodic"
OUTFLOW = "outflow"
EXACT = "exact"


@dataclass(frozen=True)
class Mesh:
    """Uniform structured mesh with ghost layers."""

    dim: int
    nx: int
    x0: float
    x1: float
    ny: int = 1
    y0: float = 0.0
    y1: float = 0.0
    ghost: int = GHOST

    @property
    def dx(self):
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self):
        if self.dim == 1:
            return 0.0
        return (self.y1 - self.y0) / self.ny

    def x_centers(self, with_ghosts=False):
        n, g = self.nx, self.ghost
        lo = -g if with_ghosts else 0
        hi = n + g if with_ghosts else n
        return self.x0 + (np.arange(lo, hi) + 0.5) * self.dx

    def y_centers(self, with_ghosts=False):
        n, g = self.ny, self.ghost
        lo = -g if with_ghosts else 0
        hi = n + g if with_ghosts else n
        return self.y0 + (np.arange(lo, hi) + 0.5) * self.dy

    def interior_meshgrid(self):
        """(X, Y) arrays over interior cells; Y is zeros in 1-D."""
        x = self.x_centers()
        if self.dim == 1:
            return x, np.zeros_like(x)
        y = self.y_centers()
        return np.meshgrid(x, y, indexing="ij")


@dataclass
class Field:
    """Conserved states on a mesh, ghost layers included."""

    mesh: Mesh
    u: np.ndarray

    @classmethod
    def allocate(cls, mesh):
        g = mesh.ghost
        if mesh.dim == 1:
            u = np.zeros((mesh.nx + 2 * g, 6))
        else:
            u = np.zeros((mesh.nx + 2 * g, mesh.ny + 2 * g, 6))
        return cls(mesh, u)

    @classmethod
    def from_primitive(cls, mesh, init):
        """Initialize interior cells from a primitive-space function.

        init(x, y) must broadcast over arrays and return (..., 6).
        """
        f = cls.allocate(mesh)
        X, Y = mesh.interior_meshgrid()
        f.interior[...] = prim_to_cons(init(X, Y))
        return f

    @property
    def interior(self):
        g = self.mesh.ghost
        if self.mesh.dim == 1:
            return self.u[g:-g]
        return self.u[g:-g, g:-g]

    def copy(self):
        return Field(self.mesh, self.u.copy())


@dataclass
class BoundaryCondition:
    """Boundary kinds per side; exact kinds sample a closed-form solution.

    kinds maps side names ("left", "right" and, in 2-D, "bottom", "top")
    to one of {"periodic", "outflow", "exact"}.  Periodic sides must be
    paired.  exact_solution(x, y, t) returns primitive states.
    """

    kinds: dict = field(default_factory=dict)
    exact_solution: Optional[Callable] = None

    def validate(self, dim):
        sides = ["left", "right"] + (["bottom", "top"] if dim == 2 else [])
        for s in sides:
            if s not in self.kinds:
                raise ConfigError("missing boundary kind for side %r" % s)
            if self.kinds[s] not in (PERIODIC, OUTFLOW, EXACT):
                raise ConfigError("unknown boundary kind %r" % self.kinds[s])
        for a, b in (("left", "right"), ("bottom", "top")):
            if a in self.kinds and b in self.kinds:
                if (self.kinds[a] == PERIODIC) != (self.kinds[b] == PERIODIC):
                    raise ConfigError("periodic sides must be paired")
        if EXACT in self.kinds.values() and self.exact_solution is None:
            raise ConfigError("exact boundary requires an exact solution")

    @classmethod
    def uniform(cls, kind, dim, exact_solution=None):
        sides = ["left", "right"] + (["bottom", "top"] if dim == 2 else [])
        return cls({s: kind for s in sides}, exact_solution)


def _exact_cons(bc, x, y, t):
    return prim_to_cons(bc.exact_solution(x, y, t))


def fill_ghosts(fld: Field, bc: BoundaryCondition, t=0.0):
    """Fill ghost layers in place; interior cells are never touched."""
    mesh = fld.mesh
    g = mesh.ghost
    u = fld.u
    if mesh.dim == 1:
        n = mesh.nx
        xg = mesh.x_centers(with_ghosts=True)
        k = bc.kinds["left"]
        if k == PERIODIC:
            u[:g] = u[n:n + g]
        elif k == OUTFLOW:
            u[:g] = u[g]
        else:
            u[:g] = _exact_cons(bc, xg[:g], np.zeros(g), t)
        k = bc.kinds["right"]
        if k == PERIODIC:
            u[n + g:] = u[g:2 * g]
        elif k == OUTFLOW:
            u[n + g:] = u[n + g - 1]
        else:
            u[n + g:] = _exact_cons(bc, xg[n + g:], np.zeros(g), t)
        return fld

    nx, ny = mesh.nx, mesh.ny
    xg = mesh.x_centers(with_ghosts=True)
    yg = mesh.y_centers(with_ghosts=True)
    yin = yg[g:ny + g]

    # x-direction strips over interior rows only.
    k = bc.kinds["left"]
    if k == PERIODIC:
        u[:g, g:ny + g] = u[nx:nx + g, g:ny + g]
    elif k == OUTFLOW:
        u[:g, g:ny + g] = u[g, g:ny + g]
    else:
        X, Y = np.meshgrid(xg[:g], yin, indexing="ij")
        u[:g, g:ny + g] = _exact_cons(bc, X, Y, t)
    k = bc.kinds["right"]
    if k == PERIODIC:
        u[nx + g:, g:ny + g] = u[g:2 * g, g:ny + g]
    elif k == OUTFLOW:
        u[nx + g:, g:ny + g] = u[nx + g - 1, g:ny + g]
    else:
        X, Y = np.meshgrid(xg[nx + g:], yin, indexing="ij")
        u[nx + g:, g:ny + g] = _exact_cons(bc, X, Y, t)

    # y-direction over the full x extent, corners included.
    k = bc.kinds["bottom"]
    if k == PERIODIC:
        u[:, :g] = u[:, ny:ny + g]
    elif k == OUTFLOW:
        u[:, :g] = u[:, g][:, None, :]
    else:
        X, Y = np.meshgrid(xg, yg[:g], indexing="ij")
        u[:, :g] = _exact_cons(bc, X, Y, t)
    k = bc.kinds["top"]
    if k == PERIODIC:
        u[:, ny + g:] = u[:, g:2 * g]
    elif k == OUTFLOW:
        u[:, ny + g:] = u[:, ny + g - 1][:, None, :]
    else:
        X, Y = np.meshgrid(xg, yg[ny + g:], indexing="ij")
        u[:, ny + g:] = _exact_cons(bc, X, Y, t)
    return fld
