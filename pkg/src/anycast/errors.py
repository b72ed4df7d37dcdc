"""Exception hierarchy shared by every solver and generator."""


class AnycastError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(AnycastError, ValueError):
    """Malformed instance, layout, parameter or edge set."""


class InvalidSolutionError(AnycastError, ValueError):
    """A solution refers to nodes or edges the instance does not have."""


class UnsupportedSizeError(AnycastError):
    """An exact method was asked to run beyond its size cap."""


class UnsupportedInstanceError(AnycastError):
    """A solver was given an instance outside the class it handles."""
