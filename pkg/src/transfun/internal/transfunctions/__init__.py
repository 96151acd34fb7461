"""Transfunction constructor trees and their evaluation."""

from .evaluation import (
    apply,
    apply_compose,
    apply_countable_matrix,
    apply_input_multiplier,
    apply_kernel,
    apply_masses,
    apply_matrix,
    apply_max_with,
    apply_output_multiplier,
    apply_post_project,
    apply_pre_project,
    apply_pushforward,
    apply_semigroup_product,
)
from .linear import NOT_LINEAR, NotLinear, is_function_matrix, to_matrix
from .nodes import (
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
    compose,
    depth,
    identity,
    is_linear,
    node_count,
    walk,
)

__all__ = [
    "NOT_LINEAR",
    "Compose",
    "CountableMatrix",
    "InputMultiplier",
    "Kernel",
    "Matrix",
    "MaxWith",
    "NotLinear",
    "OutputMultiplier",
    "PostProject",
    "PreProject",
    "Pushforward",
    "SemigroupProduct",
    "Transfunction",
    "apply",
    "apply_compose",
    "apply_countable_matrix",
    "apply_input_multiplier",
    "apply_kernel",
    "apply_masses",
    "apply_matrix",
    "apply_max_with",
    "apply_output_multiplier",
    "apply_post_project",
    "apply_pre_project",
    "apply_pushforward",
    "apply_semigroup_product",
    "compose",
    "depth",
    "identity",
    "is_function_matrix",
    "is_linear",
    "node_count",
    "to_matrix",
    "walk",
]
