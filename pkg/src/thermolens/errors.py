"""Exception types shared across the package."""


class ThermolensError(Exception):
    """Base class for all package-specific errors."""


class DomainError(ThermolensError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EmptyCollectionError(ThermolensError):
    """A metric was requested for a collection with no individuals."""


class ZeroEnergyError(ThermolensError):
    """Entropy efficiency is undefined because the average energy is zero."""


class DegenerateError(ThermolensError):
    """The data has no spread, so the requested statistic is undefined."""


class ConvergenceError(ThermolensError):
    """An iterative solver exhausted its iteration budget."""
