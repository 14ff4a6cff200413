"""Registry of the built-in test problems, error norms and studies.

Each problem carries its primitive initial condition, boundary kind,
final time, optional body-force potential and, where one exists, the
closed-form solution used for error measurement and exact boundaries.
Problems without a closed form are compared against high-resolution
runs of this solver (labeled as self-reference in outputs).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .exceptions import ConfigError, UnknownProblem
from .grid import BoundaryCondition, Field, Mesh
from .source import PotentialSpec, potential_gaussian_1d, \
    potential_gaussian_2d, potential_linear_x, potential_traveling_sine
from .state import cons_to_prim
from .stepper import CFL_SAFE_DEFAULT, CflPolicy, compute_dt, integrate
from .weno import WenoVariant

TWO_PI = 2.0 * math.pi

#: Primitive-variable names in component order.
PRIM_NAMES = ("rho", "v1", "v2", "p11", "p12", "p22")


@dataclass
class ProblemSpec:
    """One registered test problem."""

    pid: str
    dim: int
    x0: float
    x1: float
    initial: Callable
    bc_kind: str
    t_final: float
    y0: float = 0.0
    y1: float = 0.0
    potential: Optional[PotentialSpec] = None
    exact: Optional[Callable] = None
    default_nx: int = 100
    default_ny: int = 1
    params: dict = field(default_factory=dict)

    def mesh(self, nx=None, ny=None):
        nx = nx or self.default_nx
        if self.dim == 1:
            return Mesh(1, nx, self.x0, self.x1)
        ny = ny or self.default_ny or nx
        return Mesh(2, nx, self.x0, self.x1, ny, self.y0, self.y1)

    def boundary(self):
        return BoundaryCondition.uniform(self.bc_kind, self.dim, self.exact)

    def make_field(self, nx=None, ny=None):
        return Field.from_primitive(self.mesh(nx, ny), self.initial)


def _prim(rho, v1, v2, p11, p12, p22):
    """Stack primitive components along the last axis."""
    parts = np.broadcast_arrays(
        np.asarray(rho, dtype=np.float64), v1, v2, p11, p12, p22)
    return np.stack([np.asarray(p, dtype=np.float64) for p in parts], axis=-1)


def _riemann_1d(left, right, x_disc=0.0):
    left = np.asarray(left, dtype=np.float64)
    right = np.asarray(right, dtype=np.float64)

    def init(x, y):
        x = np.asarray(x, dtype=np.float64)
        return np.where((x <= x_disc)[..., None], left, right)

    return init


# ------------------------------------------------------------------
# Smooth accuracy problems (closed-form solutions)
# ------------------------------------------------------------------

def _accuracy1():
    def exact(x, y, t):
        rho = 2.0 + np.sin(TWO_PI * (np.asarray(x) - t))
        one = np.ones_like(rho)
        return _prim(rho, one, 0.0 * one, one, 0.0 * one, one)

    return ProblemSpec(
        pid="accuracy1", dim=1, x0=-0.5, x1=0.5,
        initial=lambda x, y: exact(x, y, 0.0),
        bc_kind="periodic", t_final=0.5, exact=exact, default_nx=80,
    )


def _accuracy2():
    def exact(x, y, t):
        x = np.asarray(x, dtype=np.float64)
        rho = 2.0 + np.sin(TWO_PI * (x - t))
        p11 = 5.0 + t - x + np.cos(TWO_PI * (x - t)) / (4.0 * math.pi)
        one = np.ones_like(rho)
        return _prim(rho, one, 0.0 * one, p11, 0.0 * one, one)

    return ProblemSpec(
        pid="accuracy2", dim=1, x0=-0.5, x1=0.5,
        initial=lambda x, y: exact(x, y, 0.0),
        bc_kind="exact", t_final=0.5, exact=exact,
        potential=potential_linear_x(1.0), default_nx=80,
    )


def _accuracy3():
    def exact(x, y, t):
        x = np.asarray(x, dtype=np.float64)
        ph = TWO_PI * (x - t)
        rho = 2.0 + np.sin(ph)
        p11 = 1.5 + (np.cos(2.0 * ph) - 8.0 * np.sin(ph)) / 8.0
        one = np.ones_like(rho)
        return _prim(rho, one, 0.0 * one, p11, 0.0 * one, one)

    return ProblemSpec(
        pid="accuracy3", dim=1, x0=-0.5, x1=0.5,
        initial=lambda x, y: exact(x, y, 0.0),
        bc_kind="periodic", t_final=0.5, exact=exact,
        potential=potential_traveling_sine(1.0, TWO_PI, 1.0), default_nx=80,
    )


def _lowdensity(eps_tilde=1e-2):
    eps_tilde = float(eps_tilde)

    def exact(x, y, t):
        x = np.asarray(x, dtype=np.float64)
        rho = eps_tilde + np.sin(TWO_PI * (x - t)) ** 2
        p11 = (5.0 + (t - x) * (0.5 * eps_tilde + 0.25)
               + np.sin(2.0 * TWO_PI * (x - t)) / (16.0 * math.pi))
        one = np.ones_like(rho)
        return _prim(rho, one, 0.0 * one, p11, 0.0 * one, one)

    return ProblemSpec(
        pid="lowdensity", dim=1, x0=-0.25, x1=0.25,
        initial=lambda x, y: exact(x, y, 0.0),
        bc_kind="exact", t_final=0.5, exact=exact,
        potential=potential_linear_x(1.0), default_nx=80,
        params={"eps_tilde": eps_tilde},
    )


# ------------------------------------------------------------------
# Riemann and shock problems
# ------------------------------------------------------------------

def _sod():
    return ProblemSpec(
        pid="sod", dim=1, x0=-0.5, x1=0.5,
        initial=_riemann_1d((1.0, 0.0, 0.0, 2.0, 0.05, 0.6),
                            (0.125, 0.0, 0.0, 0.2, 0.1, 0.2)),
        bc_kind="outflow", t_final=0.125, default_nx=100,
    )


def _two_shock():
    return ProblemSpec(
        pid="two-shock", dim=1, x0=-0.5, x1=0.5,
        initial=_riemann_1d((1.0, 1.0, 1.0, 1.0, 0.0, 1.0),
                            (1.0, -1.0, -1.0, 1.0, 0.0, 1.0)),
        bc_kind="outflow", t_final=0.125, default_nx=100,
    )


def _two_rarefaction():
    return ProblemSpec(
        pid="two-rarefaction", dim=1, x0=-0.5, x1=0.5,
        initial=_riemann_1d((2.0, -0.5, -0.5, 1.5, 0.5, 1.5),
                            (1.0, 1.0, 1.0, 1.0, 0.0, 1.0)),
        bc_kind="outflow", t_final=0.15, default_nx=200,
    )


def _near_vacuum_1d():
    return ProblemSpec(
        pid="near-vacuum-1d", dim=1, x0=-0.5, x1=0.5,
        initial=_riemann_1d((1.0, -5.0, 0.0, 2.0, 0.0, 2.0),
                            (1.0, 5.0, 0.0, 2.0, 0.0, 2.0)),
        bc_kind="outflow", t_final=0.05, default_nx=100,
    )


def _shu_osher():
    def init(x, y):
        x = np.asarray(x, dtype=np.float64)
        rho = np.where(x <= -4.0, 3.857143, 1.0 + 0.2 * np.sin(5.0 * x))
        v1 = np.where(x <= -4.0, 2.699369, 0.0)
        p = np.where(x <= -4.0, 10.33333, 1.0)
        z = np.zeros_like(rho)
        return _prim(rho, v1, z, p, z, p)

    return ProblemSpec(
        pid="shu-osher", dim=1, x0=-5.0, x1=5.0, initial=init,
        bc_kind="outflow", t_final=1.8, default_nx=200,
    )


def _two_rarefaction_source():
    return ProblemSpec(
        pid="two-rarefaction-source", dim=1, x0=0.0, x1=4.0,
        initial=_riemann_1d((1.0, -4.0, 0.0, 9.0, 7.0, 9.0),
                            (1.0, 4.0, 0.0, 9.0, 7.0, 9.0), x_disc=2.0),
        bc_kind="outflow", t_final=0.1,
        potential=potential_gaussian_1d(25.0, 200.0, 2.0), default_nx=500,
    )


# ------------------------------------------------------------------
# 2-D problems
# ------------------------------------------------------------------

def _radial_velocity(x, y, speed):
    r = np.sqrt(np.asarray(x) ** 2 + np.asarray(y) ** 2)
    safe = np.where(r > 0.0, r, 1.0)
    vx = np.where(r > 0.0, speed * np.asarray(x) / safe, 0.0)
    vy = np.where(r > 0.0, speed * np.asarray(y) / safe, 0.0)
    return vx, vy


def _near_vacuum_2d():
    def init(x, y):
        vx, vy = _radial_velocity(x, y, 8.0)
        one = np.ones_like(vx)
        return _prim(one, vx, vy, 2.0 * one, 0.0 * one, 2.0 * one)

    return ProblemSpec(
        pid="near-vacuum-2d", dim=2, x0=-2.0, x1=2.0, y0=-2.0, y1=2.0,
        initial=init, bc_kind="outflow", t_final=0.05,
        default_nx=200, default_ny=200,
    )


def _disc_near_vacuum_2d():
    def init(x, y):
        r = np.sqrt(np.asarray(x) ** 2 + np.asarray(y) ** 2)
        inside = r < 1.0
        vx, vy = _radial_velocity(x, y, 8.0)
        one = np.ones_like(r)
        return _prim(
            one,
            np.where(inside, vx, 0.0),
            np.where(inside, vy, 0.0),
            np.where(inside, 2.0, 1.0),
            0.0 * one,
            np.where(inside, 2.0, 1.0),
        )

    return ProblemSpec(
        pid="disc-near-vacuum-2d", dim=2, x0=-2.0, x1=2.0, y0=-2.0, y1=2.0,
        initial=init, bc_kind="outflow", t_final=0.05,
        default_nx=200, default_ny=200,
    )


def _uniform_plasma_source():
    def init(x, y):
        one = np.ones_like(np.asarray(x, dtype=np.float64))
        return _prim(0.1 * one, 0.0 * one, 0.0 * one,
                     9.0 * one, 7.0 * one, 9.0 * one)

    return ProblemSpec(
        pid="uniform-plasma-source", dim=2, x0=0.0, x1=4.0, y0=0.0, y1=4.0,
        initial=init, bc_kind="outflow", t_final=0.1,
        potential=potential_gaussian_2d(25.0, 200.0, 200.0, 2.0, 2.0),
        default_nx=200, default_ny=200,
    )


def _realistic_2d(v_t=0.0):
    v_t = float(v_t)

    def init(x, y):
        one = np.ones_like(np.asarray(x, dtype=np.float64))
        return _prim(0.109885 * one, 0.0 * one, 0.0 * one,
                     one, 0.0 * one, one)

    # The exciting source acts along x only; the absorption term v_t
    # rho W deposits into E11.
    pot = potential_gaussian_2d(
        amplitude=1.0, decay_x=1.0 / 100.0, decay_y=1.0 / 100.0,
        center_x=50.0, center_y=50.0, grad_axes="x", v_t=v_t,
    )
    return ProblemSpec(
        pid="realistic-2d", dim=2, x0=0.0, x1=100.0, y0=0.0, y1=100.0,
        initial=init, bc_kind="outflow", t_final=0.5,
        potential=pot, default_nx=100, default_ny=100,
        params={"v_t": v_t},
    )


_REGISTRY = {
    "accuracy1": _accuracy1,
    "accuracy2": _accuracy2,
    "accuracy3": _accuracy3,
    "lowdensity": _lowdensity,
    "sod": _sod,
    "two-shock": _two_shock,
    "two-rarefaction": _two_rarefaction,
    "near-vacuum-1d": _near_vacuum_1d,
    "shu-osher": _shu_osher,
    "near-vacuum-2d": _near_vacuum_2d,
    "disc-near-vacuum-2d": _disc_near_vacuum_2d,
    "two-rarefaction-source": _two_rarefaction_source,
    "uniform-plasma-source": _uniform_plasma_source,
    "realistic-2d": _realistic_2d,
}


def problem_ids():
    return sorted(_REGISTRY)


def get_problem(pid, **params):
    """Fully populated ProblemSpec for a registered id."""
    try:
        builder = _REGISTRY[pid]
    except KeyError:
        raise UnknownProblem(
            "unknown problem %r (known: %s)" % (pid, ", ".join(problem_ids()))
        ) from None
    try:
        return builder(**params)
    except TypeError:
        raise ConfigError(
            "problem %r does not accept parameters %s"
            % (pid, sorted(params))) from None


# ------------------------------------------------------------------
# Error norms and convergence studies
# ------------------------------------------------------------------

@dataclass
class ErrorReport:
    """Norms per selected variable on one mesh, plus observed orders."""

    n: int
    norms: dict
    orders: dict = field(default_factory=dict)
    activations: int = 0

    def norm(self, var, kind):
        return self.norms[var][kind]

    def order(self, var, kind):
        return self.orders.get(var, {}).get(kind)


def error_norms(fld: Field, exact, t, variables=("rho",)):
    """L1/L2/Linf errors of primitive variables against exact(x, y, t).

    L1 is scaled by the cell volume, L2 by its square root, Linf is the
    raw max over cell centers.
    """
    mesh = fld.mesh
    X, Y = mesh.interior_meshgrid()
    vex = np.asarray(exact(X, Y, t), dtype=np.float64)
    vnum = cons_to_prim(fld.interior)
    vol = mesh.dx * (mesh.dy if mesh.dim == 2 else 1.0)
    out = {}
    for var in variables:
        k = PRIM_NAMES.index(var)
        diff = np.abs(vnum[..., k] - vex[..., k])
        out[var] = {
            "l1": vol * float(np.sum(diff)),
            "l2": math.sqrt(vol * float(np.sum(diff * diff))),
            "linf": float(np.max(diff)),
        }
    return out


def power_law_dt(problem: ProblemSpec, coarsest_nx, exponent=5.0 / 3.0):
    """Coefficient C of dt = C dx^exponent, pinned on the coarsest mesh.

    C is the largest value for which the coarsest-mesh step obeys the
    positivity CFL dt(u0, 1/12) at the initial state.
    """
    fld = problem.make_field(coarsest_nx)
    dt0 = compute_dt(fld, CFL_SAFE_DEFAULT)
    return dt0 / fld.mesh.dx ** exponent


def convergence_study(pid, mesh_list, variant=WenoVariant(), limiter="on",
                      variables=("rho",), problem_params=None,
                      exponent=5.0 / 3.0, cfl_cap=CFL_SAFE_DEFAULT):
    """Run one problem over a mesh ladder and report norms and orders.

    The time step is the power law dt = C dx^exponent so that the
    third-order time error stays below the fifth-order space error,
    capped per step at the positivity CFL: near-vacuum sweeps raise the
    mesh wave speed far above its initial value, and a larger step
    there both loses the positivity guarantee and lets the limiter
    clip hard enough to destroy the design order.
    """
    problem = get_problem(pid, **(problem_params or {}))
    if problem.exact is None:
        raise UnknownProblem("problem %r has no exact solution" % pid)
    C = power_law_dt(problem, min(mesh_list), exponent)
    if limiter == "adaptive":
        policy = CflPolicy(mode="adaptive")
    else:
        policy = CflPolicy(mode="uniform", cfl_main=cfl_cap)
    reports = []
    for n in sorted(mesh_list):
        fld = problem.make_field(n)
        dt = C * fld.mesh.dx ** exponent
        fld, stats = integrate(
            fld, problem.boundary(), problem.t_final, variant,
            source=problem.potential, limiter=limiter, dt_fixed=dt,
            policy=policy,
        )
        norms = error_norms(fld, problem.exact, problem.t_final, variables)
        rep = ErrorReport(n, norms, activations=stats.activations)
        if reports:
            prev = reports[-1]
            ratio = math.log2(n / prev.n)
            rep.orders = {
                var: {
                    kind: math.log2(prev.norm(var, kind) / rep.norm(var, kind))
                    / ratio
                    for kind in ("l1", "l2", "linf")
                    if rep.norm(var, kind) > 0.0 and prev.norm(var, kind) > 0.0
                }
                for var in variables
            }
        reports.append(rep)
    return reports
