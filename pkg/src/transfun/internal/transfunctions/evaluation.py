"""Evaluation of constructor trees on measures.

Evaluation is batched: the per-kind functions take a 2-D array holding one
measure per row (columns follow the domain atom order) and return the
images as rows over the codomain atoms. ``apply`` is the single-measure view.
Errors raised below a node are tagged with that node's path.
"""

import numpy as np

from transfun.internal.errors import InvalidSpec, SpaceMismatch, TransfunError
from transfun.internal.measures import Measure
from transfun.internal.transfunctions.nodes import (
    Compose,
    CountableMatrix,
    InputMultiplier,
    Kernel,
    Matrix,
    MaxWith,
    OutputMultiplier,
    PostProject,
    PreProject,
    Pushforward,
    SemigroupProduct,
    Transfunction,
    child_path,
)


def apply(spec: Transfunction, mu: Measure) -> Measure:
    """Evaluates a transfunction on one measure."""
    if mu.space != spec.domain:
        raise SpaceMismatch(
            f"measure lives on {mu.space.id!r} but the transfunction expects {spec.domain.id!r}",
        )
    return Measure(spec.codomain, apply_masses(spec, mu.masses[None, :])[0])


def apply_masses(spec: Transfunction, masses: np.ndarray, path: str = "/") -> np.ndarray:
    """Evaluates a transfunction on a batch of mass vectors, one per row."""
    try:
        match spec:
            case Pushforward():
                return apply_pushforward(spec, masses)
            case Matrix():
                return apply_matrix(spec, masses)
            case CountableMatrix():
                return apply_countable_matrix(spec, masses)
            case Kernel():
                return apply_kernel(spec, masses)
            case OutputMultiplier():
                return apply_output_multiplier(spec, masses, path)
            case InputMultiplier():
                return apply_input_multiplier(spec, masses, path)
            case MaxWith():
                return apply_max_with(spec, masses, path)
            case PreProject():
                return apply_pre_project(spec, masses, path)
            case PostProject():
                return apply_post_project(spec, masses, path)
            case SemigroupProduct():
                return apply_semigroup_product(spec, masses, path)
            case Compose():
                return apply_compose(spec, masses, path)
            case _:
                raise InvalidSpec(f"unknown node type {type(spec).__name__}")
    except TransfunError as err:
        err.locate(path)
        raise


def apply_pushforward(spec: Pushforward, masses: np.ndarray) -> np.ndarray:
    """result(y) = mu(f^-1({y}))."""
    return masses @ spec.incidence


def apply_matrix(spec: Matrix, masses: np.ndarray) -> np.ndarray:
    """result = A mu."""
    return masses @ spec.entries.T


def apply_countable_matrix(spec: CountableMatrix, masses: np.ndarray) -> np.ndarray:
    """result = sum over domain atoms x of mu(x) * column(x)."""
    return masses @ spec.column_matrix


def apply_kernel(spec: Kernel, masses: np.ndarray) -> np.ndarray:
    """result(y) = rho(y) * sum over x of phi(x, y) * mu(x)."""
    return masses @ spec.transfer


def apply_output_multiplier(
    spec: OutputMultiplier,
    masses: np.ndarray,
    path: str = "/",
) -> np.ndarray:
    """result = f * inner(mu)."""
    return apply_masses(spec.inner, masses, child_path(path, 0)) * spec.density


def apply_input_multiplier(
    spec: InputMultiplier,
    masses: np.ndarray,
    path: str = "/",
) -> np.ndarray:
    """result = inner(g * mu)."""
    return apply_masses(spec.inner, masses * spec.density, child_path(path, 0))


def apply_max_with(spec: MaxWith, masses: np.ndarray, path: str = "/") -> np.ndarray:
    """result = max(inner(mu), rho), atomwise."""
    return np.maximum(apply_masses(spec.inner, masses, child_path(path, 0)), spec.rho.masses)


def apply_pre_project(spec: PreProject, masses: np.ndarray, path: str = "/") -> np.ndarray:
    """result = inner(mu restricted to A)."""
    return apply_masses(spec.inner, masses * spec.indicator, child_path(path, 0))


def apply_post_project(spec: PostProject, masses: np.ndarray, path: str = "/") -> np.ndarray:
    """result = inner(mu) restricted to B."""
    return apply_masses(spec.inner, masses, child_path(path, 0)) * spec.indicator


def apply_semigroup_product(
    spec: SemigroupProduct,
    masses: np.ndarray,
    path: str = "/",
) -> np.ndarray:
    """result(z) = sum over u, v with op(u, v) = z of left(mu)(u) * right(mu)(v)."""
    left = apply_masses(spec.left, masses, child_path(path, 0))
    right = apply_masses(spec.right, masses, child_path(path, 1))
    return np.einsum("bu,bv,uvz->bz", left, right, spec.structure)


def apply_compose(spec: Compose, masses: np.ndarray, path: str = "/") -> np.ndarray:
    """result = outer(inner(mu))."""
    inner = apply_masses(spec.inner, masses, child_path(path, 1))
    return apply_masses(spec.outer, inner, child_path(path, 0))
