"""Exception hierarchy shared across the package."""


class PagegenusError(Exception):
    """Base class for all package errors."""


class GraphInputError(PagegenusError):
    """A graph could not be built from the given input."""


class MalformedLine(GraphInputError):
    """An edge-list line is not two nonnegative integers."""


class SelfLoop(GraphInputError):
    """An edge joins a vertex to itself."""


class DisconnectedGraph(GraphInputError):
    """The input graph has more than one connected component."""


class MalformedGraph6(GraphInputError):
    """The input is not a valid graph6 encoding."""


class InvalidParameters(GraphInputError):
    """Generator parameters do not describe a supported graph."""


class CapacityExceeded(PagegenusError):
    """A configured memory budget (cycle index, distribution buffer) was hit.

    Callers may fall back to streaming enumeration where available.
    """


class CapExceeded(PagegenusError):
    """The brute-force rotation space exceeds the caller's cap."""


class NoUnsatisfiedVertex(PagegenusError):
    """Every vertex already carries its full face quota (search base case)."""


class SearchSpaceExhausted(PagegenusError):
    """No feasible face-count level admits a set of simple-cycle faces.

    This should not happen for connected multigraphs; if it does, it means
    the graph needs a facial walk that repeats a vertex, which this engine's
    candidate faces cannot express. Surfaced as a hard diagnostic rather
    than silently returning a wrong genus.
    """


class BudgetExhausted(PagegenusError):
    """A node/time budget ran out before the computation finished.

    Carries the best bracket known at the point of interruption.
    """

    def __init__(self, message, lower=None, upper=None, nodes=0):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.nodes = nodes


class MalformedCertificate(PagegenusError):
    """A certificate file does not follow the PAGE-CERT v1 format."""


class FingerprintMismatch(PagegenusError):
    """A certificate was issued for a different graph."""
