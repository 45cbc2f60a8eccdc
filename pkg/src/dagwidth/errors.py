"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DagWidthError(Exception):
    """Base class for all errors raised by dagwidth."""


class CycleError(DagWidthError):
    """The input graph contains a directed cycle.

    ``cycle`` holds one witness as a closed vertex sequence, e.g. ``[0, 1, 2, 0]``.
    """

    def __init__(self, cycle: list[int]):
        self.cycle = list(cycle)
        super().__init__("graph has a directed cycle: " + " -> ".join(map(str, self.cycle)))


class SelfLoopError(DagWidthError):
    def __init__(self, vertex: int):
        self.vertex = vertex
        super().__init__(f"self-loop on vertex {vertex}")


class VertexRangeError(DagWidthError, IndexError):
    """A vertex id or topological position is out of range."""


class ParamError(DagWidthError, ValueError):
    """Invalid generator or solver parameters."""


class MissingEdgeError(DagWidthError):
    """A splice was requested along an edge that no path of the cover uses."""

    def __init__(self, edge: tuple[int, int]):
        self.edge = edge
        super().__init__(f"edge {edge} has multiplicity 0 in the cover")


class InvalidCoverError(DagWidthError):
    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("invalid path cover: " + "; ".join(self.violations[:5]))


class NotAFlowError(DagWidthError):
    """Flow values violate conservation or demands."""


class StaleResidualError(DagWidthError):
    """A step of a decrementing path is no longer residual under the current flow."""


class NotASubgraphError(DagWidthError):
    pass


class MalformedDecrementError(DagWidthError):
    pass


class NotMinimumError(DagWidthError):
    """The cover admits a decrementing path, so it is not a minimum path cover."""


class InvalidCycleError(DagWidthError):
    pass


class TooLargeError(DagWidthError):
    """Instance exceeds the size limit of an exhaustive oracle."""


class InvariantViolation(DagWidthError, AssertionError):
    """Raised by debug-mode invariant checks."""
