"""Exception hierarchy.

Negative verification outcomes are reports, not exceptions. These classes
cover invalid input, broken files and misuse.
"""
from typing import Optional, Tuple


class WdrdError(Exception):
    """Base class for all toolkit errors."""


class InvalidParameterError(WdrdError, ValueError):
    """A builder received a parameter outside its domain."""


class FormatError(WdrdError, ValueError):
    """A group-table, digraph or catalog document could not be parsed."""


class NotAGroupError(WdrdError, ValueError):
    """A multiplication table violates a group axiom."""

    def __init__(self, message: str, triple: Optional[Tuple[int, ...]] = None):
        super().__init__(message)
        self.triple = triple


class LoopError(WdrdError, ValueError):
    """The identity was put in a connection set."""


class ConnectivityError(WdrdError):
    """The digraph is not strongly connected."""

    def __init__(self, message: str, witness: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.witness = witness


class NoCircuitError(WdrdError):
    """The digraph has no arcs, so it has no circuit and no girth."""


class InvalidStateError(WdrdError):
    """An operation was requested on data that does not support it."""


class ParameterOutOfRangeError(WdrdError, ValueError):
    """A family parameter violates the constraint of its family."""

    def __init__(self, message: str, constraint: str = ""):
        super().__init__(message)
        self.constraint = constraint


class DomainError(WdrdError, ValueError):
    """A formula was evaluated outside the set where it is defined."""


class UnsupportedFamilyError(WdrdError, ValueError):
    """The family has no closed-form distance row."""


class SearchExhaustedError(WdrdError):
    """A constrained search finished (or hit its node limit) without a solution."""


class CacheCorruptError(WdrdError):
    """A cached artifact failed its checksum or re-verification."""


class IncompleteCatalogError(WdrdError):
    """A negative answer would need a catalog that is not marked complete."""
