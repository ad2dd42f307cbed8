"""Exception types shared across the package."""

from __future__ import annotations

import enum


class MikError(Exception):
    """Base class for all domain errors."""


class DuplicateEndpointsError(MikError):
    """Two endpoint coordinates coincide and the policy forbids it."""


class MissingOrientationError(MikError):
    """An interval lacks an orientation where one is required."""


class TooLargeForBruteForceError(MikError):
    """No interval representation available and the graph exceeds the brute-force cap."""


class DirectedCycleError(MikError):
    """The arc set contains a directed cycle; no proper coloring exists."""


class SolverTimeout(MikError):
    """The exact solver exhausted its time budget.

    Carries the best bounds established before giving up: every k < lower_bound
    was refuted; upper_bound (may be None) is the best feasible value found.
    """

    def __init__(self, lower_bound, upper_bound=None):
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        super().__init__(f"timeout: lower_bound={lower_bound}, upper_bound={upper_bound}")


class CnfParseError(MikError):
    """Malformed DIMACS input."""


class NotExact3SatError(MikError):
    """A clause does not have exactly three literals."""


class NotMonotone3SatError(MikError):
    """A clause mixes negated and unnegated literals."""


class NotAPosetError(MikError):
    """Arc set is not transitive/acyclic/irreflexive."""


class NotTwoDimensionalError(MikError):
    """The poset admits no realizer by two linear orders."""


class RejectReason(enum.Enum):
    NOT_INTERVAL_GRAPH = "NotIntervalGraph"
    ARCS_NOT_TRANSITIVE = "ArcsNotTransitive"
    ARC_CYCLE = "ArcCycle"
    ROTATION_CONFLICT = "RotationConflict"
    ORDER_CONFLICT = "OrderConflict"
    NOT_TWO_DIMENSIONAL = "NotTwoDimensional"


class RecognitionReject(MikError):
    """The input is not a containment interval graph.

    reason is machine-readable; detail names the violated constraint.
    """

    def __init__(self, reason: RejectReason, detail: str = ""):
        self.reason = reason
        self.detail = detail
        msg = reason.value if not detail else f"{reason.value}: {detail}"
        super().__init__(msg)
