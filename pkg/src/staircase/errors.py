"""Exception types shared by every module.

Each error maps onto one CLI exit status: argument problems exit 64,
capability limits (rank caps, budgets) exit 2.
"""

from __future__ import annotations


class StaircaseError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(StaircaseError, ValueError):
    """An input is malformed or out of range."""


class UnsupportedGraphError(StaircaseError):
    """The graph lacks a property the operation needs (e.g. it has a cycle)."""


class PosetError(StaircaseError):
    """Cover relations contain a cycle."""


class RepresentationError(StaircaseError):
    """Cover relations are not a Hasse diagram (a transitive edge was given)."""


class HostMismatchError(StaircaseError):
    """Two group elements live in different Coxeter groups."""


class CapabilityError(StaircaseError):
    """A configured size limit would be exceeded.

    ``reason`` is a short machine-readable tag reported by the CLI.
    """

    def __init__(self, message: str, reason: str = "capability") -> None:
        super().__init__(message)
        self.reason = reason


class AxiomViolationError(StaircaseError):
    """A block poset fails one or more staircase axioms.

    ``violations`` lists every failure, not just the first.
    """

    def __init__(self, violations: list) -> None:
        self.violations = list(violations)
        summary = "; ".join(f"axiom {v.axiom}: {v.witness}" for v in self.violations)
        super().__init__(f"not a staircase diagram ({summary})")


class LabellingError(StaircaseError):
    """An assignment of group elements to blocks is not a labelling."""

    def __init__(self, violations: list) -> None:
        self.violations = list(violations)
        summary = "; ".join(f"{sorted(b)}: condition {c}" for b, c in self.violations)
        super().__init__(f"not a labelling ({summary})")


class NoCompleteBPDecomposition(StaircaseError):
    """The element has no complete Billey-Postnikov decomposition."""


class ArithmeticSeriesError(StaircaseError, ArithmeticError):
    """A power-series operation is undefined (e.g. division by a series of higher valuation)."""
