"""Exception types shared across the package."""


class GsrouteError(Exception):
    """Base class for all library errors."""


class GraphDomainError(GsrouteError):
    """A vertex or edge argument is outside the graph's domain."""


class DisconnectedError(GsrouteError):
    """An operation required two vertices to be connected and they are not."""


class SizeBoundError(GsrouteError):
    """An exhaustive search was requested beyond its configured size bound."""


class HypothesisError(GsrouteError):
    """A protocol's structural hypothesis is not met by the input."""


class ProtocolError(GsrouteError):
    """A protocol run failed to reach its guaranteed final state."""


class ZeroProbabilityError(GsrouteError):
    """A measurement branch with (numerically) zero probability was requested."""
