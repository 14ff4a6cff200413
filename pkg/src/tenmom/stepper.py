"""SSPRK3 / integrating-factor SSPRK3 stepping and the adaptive driver.

One step is three forward-Euler stages wrapped in exponential source
propagators (identity when no potential is present).  Every stage value
is admissibility-checked before the propagator is applied; a failed
check raises PositivityFailure, which the adaptive driver treats as a
signal to rewind and redo the step at the safe CFL of 1/12 with the
positivity limiter enabled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import PositivityFailure, SolverFailure
from .fluxes import residual_1d, residual_2d
from .grid import BoundaryCondition, Field, fill_ghosts
from .limiter import W_HAT
from .source import PotentialSpec, SourceIntegrals, absorption_residual, \
    propagate_source, source_integrals
from .state import ADMISSIBILITY_EPS, admissible_mask, max_speed_x, max_speed_y
from .weno import WenoVariant

CFL_SAFE_DEFAULT = W_HAT  # 1/12, from the 4-point Gauss-Lobatto endpoint weight


@dataclass
class CflPolicy:
    """Uniform or adaptive CFL selection."""

    mode: str = "adaptive"
    cfl_main: float = 0.95
    cfl_safe: float = CFL_SAFE_DEFAULT

    def __post_init__(self):
        if self.mode not in ("uniform", "adaptive"):
            raise ValueError("mode must be 'uniform' or 'adaptive'")
        if not 0.0 < self.cfl_safe <= W_HAT + 1e-15:
            raise ValueError("cfl_safe must lie in (0, 1/12]")
        if self.cfl_main > 1.0:
            raise ValueError("cfl_main must not exceed 1")


@dataclass
class StepOutcome:
    """Accepted step: updated field plus bookkeeping for the manifest."""

    field: Field
    dt_used: float
    limiter_was_needed: bool
    retried: bool
    activations: int = 0


def compute_dt(fld: Field, cfl):
    """Time step cfl / max(alpha_x/dx + alpha_y/dy) over interior cells."""
    u = fld.interior
    ax = max_speed_x(u)
    if fld.mesh.dim == 1:
        return cfl / float(np.max(ax / fld.mesh.dx))
    ay = max_speed_y(u)
    return cfl / float(np.max(ax / fld.mesh.dx + ay / fld.mesh.dy))


def _check_admissible(u, eps, stage):
    mask = admissible_mask(u, eps)
    if not mask.all():
        bad = np.unravel_index(int(np.argmin(mask)), mask.shape)
        raise PositivityFailure(
            "inadmissible cell %s in stage %d" % (bad, stage),
            stage=stage, cell=bad,
        )


def _residual(fld, bc, t_stage, variant, limiter_on, source, eps):
    fill_ghosts(fld, bc, t_stage)
    if fld.mesh.dim == 1:
        res, act = residual_1d(fld.u, fld.mesh.dx, variant, limiter_on, eps)
    else:
        res, act = residual_2d(fld.u, fld.mesh.dx, fld.mesh.dy,
                               variant, limiter_on, eps)
    if source is not None and source.v_t != 0.0:
        X, Y = fld.mesh.interior_meshgrid()
        res += absorption_residual(fld.interior, source, X, Y, t_stage)
    return res, act


def if_ssprk3_step(fld: Field, bc: BoundaryCondition, dt, t=0.0,
                   variant=WenoVariant(), limiter_on=False,
                   source: Optional[PotentialSpec] = None,
                   eps=ADMISSIBILITY_EPS):
    """One integrating-factor SSPRK3 step from t to t + dt.

    Without a source the exponential factors are identities and this is
    the plain SSPRK3 scheme.  Raises PositivityFailure when any stage
    value leaves the admissible set (checked before propagation).
    """
    mesh = fld.mesh
    un = fld.interior.copy()
    work = fld.copy()
    acts = 0

    use_source = source is not None
    if use_source:
        X, Y = mesh.interior_meshgrid()
        int_full = source_integrals(source, X, Y, t, dt)
        int_half = source_integrals(source, X, Y, t, 0.5 * dt)
        int_mid = source_integrals(source, X, Y, t + 0.5 * dt, 0.5 * dt)
        int_mid_back = SourceIntegrals(-np.asarray(int_mid.a_hat),
                                       -np.asarray(int_mid.b_hat))

    # Stage 1
    res, a = _residual(work, bc, t, variant, limiter_on, source, eps)
    acts += a
    u1 = un + dt * res
    _check_admissible(u1, eps, 1)
    work.interior[...] = propagate_source(u1, int_full) if use_source else u1

    # Stage 2
    res, a = _residual(work, bc, t + dt, variant, limiter_on, source, eps)
    acts += a
    u2 = work.interior + dt * res
    _check_admissible(u2, eps, 2)
    if use_source:
        work.interior[...] = 0.75 * propagate_source(un, int_half) \
            + 0.25 * propagate_source(u2, int_mid_back)
    else:
        work.interior[...] = 0.75 * un + 0.25 * u2

    # Stage 3
    res, a = _residual(work, bc, t + 0.5 * dt, variant, limiter_on, source, eps)
    acts += a
    u3 = work.interior + dt * res
    _check_admissible(u3, eps, 3)
    if use_source:
        work.interior[...] = (propagate_source(un, int_full)
                              + 2.0 * propagate_source(u3, int_mid)) / 3.0
    else:
        work.interior[...] = (un + 2.0 * u3) / 3.0

    return StepOutcome(work, dt, limiter_on and acts > 0, False, acts)


def ssprk3_step(fld, bc, dt, t=0.0, variant=WenoVariant(), limiter_on=False,
                source=None, eps=ADMISSIBILITY_EPS):
    """Plain SSPRK3 step; with a time-independent source the exponential
    factors reduce to exp(B dt) and this coincides with if_ssprk3_step."""
    return if_ssprk3_step(fld, bc, dt, t, variant, limiter_on, source, eps)


def advance_adaptive(fld, bc, t, t_final, policy: CflPolicy,
                     variant=WenoVariant(), source=None,
                     eps=ADMISSIBILITY_EPS, dt_main=None):
    """One accepted step under the adaptive-CFL control flow.

    Adaptive mode first tries the main step without the limiter; on a
    positivity failure it rewinds and redoes the step with dt computed
    at the safe CFL and the limiter on.  The main step comes from the
    main CFL unless dt_main overrides it (accuracy studies drive the
    same control flow with their power-law step).  Uniform mode always
    takes the safe-CFL limited step.
    """
    remaining = t_final - t
    if policy.mode == "uniform":
        dt = min(compute_dt(fld, policy.cfl_safe), remaining)
        out = if_ssprk3_step(fld, bc, dt, t, variant, True, source, eps)
        return out
    dt = compute_dt(fld, policy.cfl_main) if dt_main is None else dt_main
    dt = min(dt, remaining)
    try:
        return if_ssprk3_step(fld, bc, dt, t, variant, False, source, eps)
    except PositivityFailure:
        dt = min(compute_dt(fld, policy.cfl_safe), remaining)
        if dt_main is not None:
            dt = min(dt, dt_main)
        try:
            out = if_ssprk3_step(fld, bc, dt, t, variant, True, source, eps)
        except PositivityFailure as exc:
            raise SolverFailure(
                "limited safe-CFL step lost positivity at t=%g "
                "(stage %s, cell %s); this contradicts the positivity "
                "theorems and indicates a bug" % (t, exc.stage, exc.cell),
                time=t,
            ) from exc
        out.retried = True
        return out


@dataclass
class RunStats:
    """Aggregate counters for one time integration."""

    steps: int = 0
    retries: int = 0
    activations: int = 0
    t_end: float = 0.0


def integrate(fld, bc, t_final, variant=WenoVariant(), source=None,
              limiter="adaptive", policy: Optional[CflPolicy] = None,
              dt_fixed=None, eps=ADMISSIBILITY_EPS, t0=0.0, on_step=None):
    """Advance to t_final; returns (field, RunStats).

    limiter selects the stepping mode: "adaptive" (Algorithm-style retry
    at CFL 1/12), "on" (limiter every step, safe CFL unless dt_fixed) or
    "off" (no limiter, main CFL unless dt_fixed; positivity failures
    propagate to the caller).  dt_fixed, when given, replaces the CFL
    time step (accuracy studies use dt = C dx^(5/3)).
    """
    if policy is None:
        policy = CflPolicy(mode="adaptive" if limiter == "adaptive" else "uniform")
    stats = RunStats()
    t = t0
    tiny = 1e-12 * max(1.0, abs(t_final))
    while t < t_final - tiny:
        if limiter == "adaptive":
            out = advance_adaptive(fld, bc, t, t_final, policy, variant,
                                   source, eps, dt_main=dt_fixed)
        elif dt_fixed is not None and limiter == "on":
            # Accuracy runs with the limiter: the power-law step is
            # capped at the stability CFL (near-vacuum sweeps drive the
            # wave speed up), and a positivity failure falls back to the
            # provable safe step exactly as the adaptive driver does.
            dt = min(dt_fixed, compute_dt(fld, policy.cfl_main), t_final - t)
            try:
                out = if_ssprk3_step(fld, bc, dt, t, variant, True, source, eps)
            except PositivityFailure:
                dt = min(compute_dt(fld, policy.cfl_safe), t_final - t)
                out = if_ssprk3_step(fld, bc, dt, t, variant, True, source, eps)
                out.retried = True
        else:
            if dt_fixed is not None:
                dt = min(dt_fixed, t_final - t)
            elif limiter == "on":
                dt = min(compute_dt(fld, policy.cfl_safe), t_final - t)
            else:
                dt = min(compute_dt(fld, policy.cfl_main), t_final - t)
            out = if_ssprk3_step(fld, bc, dt, t, variant, limiter == "on",
                                 source, eps)
        fld = out.field
        t += out.dt_used
        stats.steps += 1
        stats.retries += int(out.retried)
        stats.activations += out.activations
        if on_step is not None:
            on_step(fld, t, stats)
    stats.t_end = t
    return fld, stats
