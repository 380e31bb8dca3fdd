"""Exception types shared across the package."""


class NetrelError(Exception):
    pass


class DomainError(NetrelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PreconditionError(NetrelError, ValueError):
    """The input does not satisfy a hypothesis the operation relies on."""


class CapacityError(NetrelError, RuntimeError):
    """An exhaustive enumeration would exceed its configured cap."""


class GraphFormatError(NetrelError, ValueError):
    """Malformed graph text. ``lineno`` is 1-based, or None for whole-file problems."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
