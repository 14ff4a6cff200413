"""Exception types shared across the solver."""


class TenMomError(Exception):
    """Base class for all solver errors."""


class ZeroDensity(TenMomError):
    """Density magnitude below the division floor; the state is unusable."""


class NonAdmissible(TenMomError):
    """Operation requires an admissible state (rho > 0, positive definite p)."""


class NonFinite(TenMomError):
    """NaN/Inf detected; signals an upstream blow-up.

    Carries the face/cell index where the value was first seen.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class AnchorViolation(TenMomError):
    """Limiter anchor state fails the eps margins; indicates an upstream bug."""


class PositivityFailure(TenMomError):
    """A Runge-Kutta stage produced an inadmissible cell.

    Recoverable signal: the adaptive driver rewinds to the previous time
    level and retries with the safe CFL and the limiter enabled.
    """

    def __init__(self, message, stage=None, cell=None):
        super().__init__(message)
        self.stage = stage
        self.cell = cell


class UnknownProblem(TenMomError):
    """Requested problem id is not registered."""


class ConfigError(TenMomError):
    """Run configuration is inconsistent or incomplete."""


class SolverFailure(TenMomError):
    """Fatal failure during time stepping, with step/time context."""

    def __init__(self, message, step=None, time=None):
        super().__init__(message)
        self.step = step
        self.time = time
