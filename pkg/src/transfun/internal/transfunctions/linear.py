"""Matrix representation of linear transfunctions.

On finite spaces a linear tree is fully described by its images of the
unit point masses, one column per domain atom.
"""

import enum

import numpy as np

from transfun.internal.errors import DimensionMismatch
from transfun.internal.measures import Space
from transfun.internal.transfunctions.evaluation import apply_masses
from transfun.internal.transfunctions.nodes import Transfunction, is_linear


class NotLinear(enum.Enum):
    """Marker returned for trees that have no matrix representation."""

    NOT_LINEAR = "not_linear"


NOT_LINEAR = NotLinear.NOT_LINEAR


def to_matrix(spec: Transfunction) -> np.ndarray | NotLinear:
    """Returns the matrix whose column j is the image of the unit mass at atom j.

    Trees containing a max or a semigroup product node give ``NOT_LINEAR``.
    """
    if not is_linear(spec):
        return NOT_LINEAR
    images = apply_masses(spec, np.eye(len(spec.domain)))
    return np.ascontiguousarray(images.T)


def is_function_matrix(
    matrix: np.ndarray,
    domain: Space,
    codomain: Space,
) -> dict[str, str] | None:
    """Recovers the function a 0-1 matrix with one nonzero per column represents.

    Returns the table x_j -> y_i, or None when some entry is not 0 or 1 or
    some column does not have exactly one nonzero entry.
    """
    matrix = np.asarray(matrix, dtype=float)
    expected = (len(codomain), len(domain))
    if matrix.shape != expected:
        raise DimensionMismatch(f"matrix has shape {matrix.shape}, expected {expected}")
    if not np.all((matrix == 0.0) | (matrix == 1.0)):
        return None
    if not np.all(matrix.sum(axis=0) == 1.0):
        return None
    rows = matrix.argmax(axis=0)
    return {x: codomain.atoms[i] for x, i in zip(domain.atoms, rows, strict=True)}
