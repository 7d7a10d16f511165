"""Exception types shared across the package."""


class VarChaosError(Exception):
    """Base class for all package-specific errors."""


class DomainError(VarChaosError):
    """Input outside the mathematical domain of an operation (non-finite
    values, nonpositive widths, invalid parameters)."""


class SingularityError(DomainError):
    """A width coordinate reached the collapse guard: the 1/rho**3
    centrifugal barrier makes rho <= 0 unreachable for exact flows, so
    hitting the guard signals integrator failure rather than physics."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class InfeasibleEnergyError(VarChaosError):
    """Requested energy below the minimum reachable under the given
    initial-condition convention, or unreachable at e=0."""


class DegenerateStructureError(VarChaosError):
    """The antisymmetric structure matrix is singular (or numerically so)
    at the evaluation point: the ansatz is ill-posed there."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class GridError(VarChaosError):
    """Invalid spectral grid or initial data that does not fit the box."""


class BoxEscapeError(VarChaosError):
    """Probability reached the edge of the periodic box; wraparound would
    silently corrupt observables, so evolution aborts. Carries the partial
    observable series collected up to the abort."""

    def __init__(self, message, t=None, partial=None):
        super().__init__(message)
        self.t = t
        self.partial = partial


class NormIntegrityError(VarChaosError):
    """Wavefunction norm drifted beyond tolerance (aliasing or escape)."""


class CheckpointError(VarChaosError):
    """Malformed checkpoint file (bad magic, version, or size)."""


class AlignmentError(VarChaosError):
    """Two series that must share a time grid do not."""
