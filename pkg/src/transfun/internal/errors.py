"""Errors raised by the library.

Every error carries the process exit code the command line reports for it,
the way an HTTP error carries its status code. Errors raised while a
constructor tree is built or evaluated also carry the slash-separated path
of the offending node (``/`` is the root, ``/0/1`` the second child of the
first child).
"""

from typing import ClassVar


class TransfunError(Exception):
    """Base class for all library errors."""

    exit_code: ClassVar[int] = 3

    def __init__(self, detail: str) -> None:
        """Create the error with a one-line diagnostic."""
        super().__init__(detail)
        self.detail = detail
        self.path: str | None = None

    def locate(self, path: str) -> None:
        """Record the node path, keeping the innermost one already set."""
        if self.path is None:
            self.path = path

    def __str__(self) -> str:
        if self.path is None:
            return self.detail
        return f"{self.detail} (at node {self.path})"


class DocumentError(TransfunError):
    """A document could not be read or does not match its schema."""

    exit_code = 2


class InvalidSpace(TransfunError):
    """A space has no atoms or repeats an atom label."""


class NegativeMass(TransfunError):
    """A mass, matrix entry, kernel value or density is negative."""


class NonFinite(TransfunError):
    """A number is NaN or infinite."""


class NegativeScalar(TransfunError):
    """A scaling factor is negative."""


class UnknownAtom(TransfunError):
    """A label does not belong to the space it is used with."""


class SpaceMismatch(TransfunError):
    """Two values that must live on the same space do not."""


class DimensionMismatch(TransfunError):
    """An array does not have the shape its spaces require."""


class BoundViolated(TransfunError):
    """A countable matrix column reaches its declared bound."""


class InvalidSpec(TransfunError):
    """A constructor tree is inconsistent."""


class MissingColumn(InvalidSpec):
    """A countable matrix has no column for some domain atom."""


class InternalInconsistency(TransfunError):
    """A statically proved property was refuted by the randomized checker."""

    exit_code = 4
