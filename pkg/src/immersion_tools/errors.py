"""
Exception hierarchy for immersion_tools.

Recoverable domain errors derive from :class:`DomainError` and map to CLI exit
code 1. Payload problems (unreadable files, malformed JSON) derive from
:class:`PayloadError` and map to exit code 2. :class:`InternalExhaustion` is an
assertion: it fires only if an algorithm backed by a theorem runs out of cases.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover
    from immersion_tools.hform import FormViolation

# ===========================
# Exception Hierarchy
# ===========================


class ImmersionToolsError(Exception):
    """Base exception for immersion_tools operations."""

    pass


class DomainError(ImmersionToolsError):
    """An input violates a mathematical precondition."""

    pass


class PayloadError(ImmersionToolsError):
    """A file or JSON payload could not be read or parsed."""

    pass


class DimensionMismatch(DomainError):
    """Operands have incompatible dimensions."""

    pass


class SingularMatrix(DomainError):
    """A matrix that must be invertible (or have nonzero determinant) is singular."""

    pass


class InvalidForm(DomainError):
    """An HForm fails validation."""

    def __init__(self, violation: "FormViolation") -> None:
        super().__init__(f"{violation.condition}: {violation.message}")
        self.violation = violation


class IllegalGenerator(DomainError):
    """A transvection or good map does not satisfy its g-value conditions."""

    pass


class DimensionTooLarge(DomainError):
    """Exhaustive computation requested above its dimension guard."""

    pass


class DimensionTooSmall(DomainError):
    """Operation requires a larger ambient dimension."""

    pass


class NotOrthogonal(DomainError):
    """A matrix does not preserve the H-form."""

    pass


class NoSupportRoom(DomainError):
    """Fewer than three orthonormal basis vectors lie outside an S-letter's support."""

    pass


class MissingRationalAction(DomainError):
    """The action on rational homology was required but not supplied."""

    pass


class ParityViolation(DomainError):
    """A triple-point count has the wrong parity for the surface."""

    pass


class GuardViolation(DomainError):
    """A size guard on an enumeration or series computation was exceeded."""

    pass


class MalformedFunction(DomainError):
    """A symbol function table is incomplete or inconsistent with its group."""

    pass


class InternalExhaustion(ImmersionToolsError, AssertionError):
    """No case of a constructive proof applied. Indicates a bug, never bad input."""

    pass
