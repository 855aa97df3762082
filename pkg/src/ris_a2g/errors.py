"""Exception types shared across the simulator."""


class SimulationError(Exception):
    """Base class for all simulator errors."""


class InvalidParameterError(SimulationError, ValueError):
    """A value violates a documented precondition or invariant."""


class DegenerateGeometryError(SimulationError, ValueError):
    """Geometry with a zero propagation distance (colocated nodes)."""


class CapacityError(SimulationError):
    """Requested exhaustive search exceeds the allowed instance size."""


class ConfigurationError(SimulationError):
    """A scenario source (preset or config file) failed validation.

    `field` carries the dotted path of the offending entry, e.g.
    ``trajectory.radius``.
    """

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
