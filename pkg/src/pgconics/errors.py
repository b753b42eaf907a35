"""Exception hierarchy shared by all modules.

Precondition failures derive from ``DomainError`` (the caller asked for
something outside the mathematical domain).  ``StructureViolation`` and
``WitnessError`` signal that an internal invariant broke, i.e. a bug.
"""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GeometryError, ValueError):
    """Input violates an operation's precondition."""


# field construction / arithmetic
class NotAPrimePower(DomainError):
    pass


class EvenCharacteristic(DomainError):
    pass


class DegenerateField(DomainError):
    pass


class DivisionByZero(DomainError, ZeroDivisionError):
    pass


class NoSquareRoot(DomainError):
    pass


# incidence geometry
class IdenticalArguments(DomainError):
    pass


class DegenerateFrame(DomainError):
    pass


# conics
class ZeroForm(DomainError):
    pass


class NotProper(DomainError):
    pass


class IdenticalConics(DomainError):
    pass


class NotDisjoint(DomainError):
    pass


# pencils
class HasBasePoints(DomainError):
    pass


class AllDegenerate(DomainError):
    pass


class BadIndices(DomainError):
    pass


class WrongShape(DomainError):
    pass


class UnsupportedDegenerate(DomainError):
    pass


# census
class BoundExceeded(DomainError):
    pass


class DegeneratePointSet(DomainError):
    pass


class NoneExist(GeometryError):
    """A search finished without finding what was asked for."""


# internal invariants
class StructureViolation(GeometryError):
    """A pencil produced a configuration the classification does not allow."""


class WitnessError(GeometryError, AssertionError):
    """A constructed diagonalizing collineation failed verification."""
