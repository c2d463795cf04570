"""Exception types raised across the package."""


class TriclubError(Exception):
    """Base class for all errors raised by this package."""


class InvalidVertexError(TriclubError, ValueError):
    """A vertex id is outside ``0..n-1`` of the graph it is used with."""


class EmptySetError(TriclubError, ValueError):
    pass


class ContractError(TriclubError, ValueError):
    """A documented precondition of an operation does not hold."""


class OracleScaleError(TriclubError):
    """The brute-force oracle refuses graphs above its size limit."""


class ParameterTooLargeError(TriclubError):
    """A structural parameter exceeds the cap of the requested algorithm."""


class ValidationError(TriclubError, ValueError):
    """A tree decomposition fails one of the decomposition conditions."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


class StateLimitExceeded(TriclubError):
    """A dynamic programming table grew beyond the configured cap."""


class ParseError(TriclubError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SelfLoopError(ParseError):
    pass
