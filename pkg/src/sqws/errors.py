"""Exception types shared across the package."""


class SqwsError(Exception):
    """Base class for all package errors."""


class ParameterError(SqwsError, ValueError):
    """A config or family parameter is missing or out of range."""


class SelectorError(SqwsError, ValueError):
    """A target selector does not resolve to exactly one vertex."""


class ConnectivityError(SqwsError, ValueError):
    """An operation requiring a connected graph got a disconnected one."""


class DegeneracyError(SqwsError, ValueError):
    """The requested normalization is undefined (e.g. edgeless graph)."""


class CapacityError(SqwsError, ValueError):
    """Problem size exceeds a hard limit of the chosen method."""


class StateError(SqwsError, ValueError):
    """A density matrix violates its structural invariants."""


class QuadratureError(SqwsError, ValueError):
    """Not enough samples to integrate an observable series."""


class NumericalInstabilityError(SqwsError, RuntimeError):
    """An integration guard (trace, positivity) tripped mid-run."""


class ConfigError(SqwsError, ValueError):
    """A sweep/CLI configuration is malformed."""
