"""Custom exception classes for the hypergraph covering toolkit.

This module defines project-specific exceptions for instance validation,
file parsing, solver misconfiguration, exact enumeration limits and
experiment preconditions.
"""

from typing import Any, Optional


class HyperAcoError(Exception):
    """Base class for every error raised by the package."""

    def __init__(self, message: str, field: Optional[Any] = None) -> None:
        """Initialize HyperAcoError with message and optional field."""
        self.message = message
        self.field = field
        super().__init__(message + (f" ({field})" if field is not None else ""))


class ValidationError(HyperAcoError):
    """Raised when a hypergraph or an id set fails validation."""


class UncoveredVertexError(ValidationError):
    """Raised when a vertex belongs to no hyperedge."""

    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__("Vertex is contained in no hyperedge", f"vertex {vertex}")


class NonPositiveWeightError(ValidationError):
    """Raised when a hyperedge weight is zero, negative or not finite."""

    def __init__(self, edge: int, weight: float) -> None:
        self.edge = edge
        self.weight = weight
        super().__init__(
            "Hyperedge weight must be positive", f"edge {edge}, weight {weight}"
        )


class EmptyEdgeError(ValidationError):
    """Raised when a hyperedge has no vertices."""

    def __init__(self, edge: int) -> None:
        self.edge = edge
        super().__init__("Hyperedge must contain at least one vertex", f"edge {edge}")


class VertexRangeError(ValidationError):
    """Raised when a vertex or edge id falls outside its dense range."""


class ConfigError(HyperAcoError):
    """Raised when a solver or experiment configuration is invalid."""


class HgrParseError(HyperAcoError):
    """Raised when an HGR file cannot be parsed."""

    def __init__(self, message: str, line: int) -> None:
        self.line = line
        super().__init__(message, f"line {line}")


class DegenerateWeightsError(HyperAcoError):
    """Raised when selection weights sum to zero or are not finite."""


class InstanceTooLargeError(HyperAcoError):
    """Raised when an instance exceeds an enumeration or generation limit."""

    def __init__(self, size: int, limit: int) -> None:
        self.size = size
        self.limit = limit
        super().__init__("Instance exceeds the supported size", f"{size} > {limit}")


class InvalidSequenceError(HyperAcoError):
    """Raised when an edge-size sequence cannot drive the generator."""


class PreconditionViolatedError(HyperAcoError):
    """Raised when a closed-form bound is requested outside its domain."""


class UnknownOptimumError(HyperAcoError):
    """Raised when an experiment needs an optimum that cannot be obtained."""


class PendantEdgesPresentError(HyperAcoError):
    """Raised when the worst-case experiment meets pendant vertices."""
