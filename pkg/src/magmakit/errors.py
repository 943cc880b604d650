"""Exception hierarchy shared by every module of the toolkit.

Every error raised on purpose derives from :class:`MagmaError`, so callers
(and the command line front end) can separate domain failures from bugs.
Errors that signal a resource limit derive from :class:`CapExceeded`, which
the CLI maps to exit status 3.
"""

from __future__ import annotations


class MagmaError(Exception):
    """Base class for all domain errors."""


class InvalidMagma(MagmaError, ValueError):
    """A table or element list violates the structural invariants."""


class NotAQuasigroup(MagmaError):
    """Division was requested on a table that is not a Latin square."""

    def __init__(self, message: str, *, row: int | None = None, column: int | None = None):
        super().__init__(message)
        self.row = row
        self.column = column


class NotALoop(MagmaError):
    """An operation needs a Latin square with a two-sided identity."""


class NotAGroup(MagmaError):
    """An operation needs a group table."""


class NoIdentity(MagmaError):
    """An operation needs a two-sided identity element."""


class PreconditionUnmet(MagmaError):
    """An identity check needs structure the magma does not carry."""


class InvalidParams(MagmaError, ValueError):
    """Family parameters violate their admissibility constraints."""


class InvalidN(InvalidParams):
    """The size parameter of a family is out of range."""


class CapExceeded(MagmaError):
    """A computation would exceed a configured resource cap."""

    def __init__(self, message: str, *, component: str | None = None):
        super().__init__(message)
        self.component = component


class ProductTooLarge(CapExceeded):
    """A direct product would exceed the element cap."""


class OverlapViolation(MagmaError):
    """Two subsets that must be disjoint share elements."""


class ImproperComponents(MagmaError):
    """One component's element set is contained in another's."""

    def __init__(self, message: str, *, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class InsufficientMix(MagmaError):
    """A declared mixed kind needs component kinds that are absent."""


class ElementAbsent(MagmaError, KeyError):
    """A named element does not occur where it is required."""

    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class NotNormal(MagmaError):
    """A substructure required to be normal is not."""

    def __init__(self, message: str, *, slot: int | None = None):
        super().__init__(message)
        self.slot = slot


class NotAGroupComponent(MagmaError):
    """A component required to be a group is not one."""


class KindMismatch(MagmaError):
    """Source and target slots of a map carry incompatible kinds."""


class MapIncomplete(MagmaError):
    """An element map does not cover its whole source component."""


class FormatError(MagmaError, ValueError):
    """A text file could not be parsed; carries a line/column position."""

    def __init__(self, message: str, *, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
