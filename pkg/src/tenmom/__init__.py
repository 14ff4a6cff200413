"""Positivity-preserving fifth-order WENO solver for the Ten-Moment equations."""

from .eigensystem import (EigenDecomposition, eigen_x, eigen_y, face_average,
                          from_characteristic, to_characteristic)
from .exceptions import (AnchorViolation, ConfigError, NonAdmissible,
                         NonFinite, PositivityFailure, SolverFailure,
                         TenMomError, UnknownProblem, ZeroDensity)
from .fluxes import FaceFluxPair, WSplitState, face_flux_1d, residual_1d, \
    residual_2d, split_cell
from .grid import BoundaryCondition, Field, Mesh, fill_ghosts
from .limiter import (GL4_NODES, GL4_WEIGHTS, W_HAT, LimiterWorkset,
                      LimitResult, compute_q_star, limit_face_flux,
                      limit_face_state)
from .problems import (ErrorReport, ProblemSpec, convergence_study,
                       error_norms, get_problem, problem_ids)
from .source import (PotentialSpec, SourceIntegrals, absorption_residual,
                     potential_gaussian_1d, potential_gaussian_2d,
                     potential_linear_x, potential_traveling_sine,
                     potential_zero, propagate_source, source_integrals)
from .state import (ADMISSIBILITY_EPS, admissible_mask, cons_to_prim, flux_x,
                    flux_y, is_admissible, max_speed_x, max_speed_y,
                    prim_to_cons)
from .stepper import (CflPolicy, RunStats, StepOutcome, advance_adaptive,
                      compute_dt, if_ssprk3_step, integrate, ssprk3_step)
from .weno import WenoVariant, reconstruct_left, reconstruct_right

__version__ = "0.1.0"
