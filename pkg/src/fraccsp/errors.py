"""Exception types shared across the package."""


class FracCspError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidArgument(FracCspError, ValueError):
    pass


class UnknownVertex(InvalidArgument, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ResourceLimit(FracCspError, RuntimeError):
    """An exhaustive search would exceed its configured cap."""
