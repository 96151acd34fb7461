"""Packages internal to the library."""

from .errors import (
    DocumentError,
    InternalInconsistency,
    SpaceMismatch,
    TransfunError,
)
from .models import (
    Axiom,
    CheckConfig,
    PropertyReport,
    Verdict,
    VerdictStatus,
)

from . import (
    measures,
    properties,
    transfunctions,
)

__all__ = [
    "Axiom",
    "CheckConfig",
    "DocumentError",
    "InternalInconsistency",
    "PropertyReport",
    "SpaceMismatch",
    "TransfunError",
    "Verdict",
    "VerdictStatus",
    "measures",
    "properties",
    "transfunctions",
]
