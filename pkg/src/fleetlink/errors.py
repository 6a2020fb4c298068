"""Exception types shared across the package."""


class FleetlinkError(Exception):
    """Base class for all fleetlink errors."""


class NotSeparable(FleetlinkError):
    """Raised when no separating hyperplane with positive margin exists."""


class Infeasible(FleetlinkError):
    """Raised by bisection when the predicate fails even at the upper end."""


class Unreachable(FleetlinkError):
    """Raised when a target cannot be connected within the search budget."""

    def __init__(self, target_index, message=None):
        self.target_index = target_index
        super().__init__(message or f"target {target_index} unreachable within budget")


class MalformedTree(FleetlinkError):
    """Raised when a communication tree violates its structural invariants."""


class CoincidentPredetermined(FleetlinkError):
    """Raised when two predetermined trajectories coincide at some step."""


class SolverFailure(FleetlinkError):
    """Raised by a QCQP backend when it cannot produce a usable solution."""


class InvalidWarmStart(FleetlinkError):
    """Raised when the predetermined trajectory violates the freshly built
    constraint set beyond tolerance; signals an upstream bug."""


class InfeasibleStart(FleetlinkError):
    """Raised when the initial fleet placement violates collision or
    connectivity preconditions."""


class ScenarioError(FleetlinkError):
    """Raised on scenario schema or cross-reference validation failures."""
