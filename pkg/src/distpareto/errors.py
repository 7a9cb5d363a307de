"""Exception types shared across the package."""


class GraphParseError(ValueError):
    """Malformed edge-list or graph6 input; the message names the offending line."""


class DisconnectedGraphError(ValueError):
    """Raised when a connected graph is required.

    Carries one vertex from each of two distinct components so the caller can
    report or inspect them.
    """

    def __init__(self, reachable_vertex: int, unreachable_vertex: int):
        self.reachable_vertex = reachable_vertex
        self.unreachable_vertex = unreachable_vertex
        super().__init__(
            f"graph is disconnected: vertices {reachable_vertex} and "
            f"{unreachable_vertex} lie in different components"
        )


class CapExceededError(RuntimeError):
    """An operation was asked to run above its configured size limit."""


class EigensolverError(RuntimeError):
    """Numerical contract violated (residual too large, non-positive Perron vector)."""
