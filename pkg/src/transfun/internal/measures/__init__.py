"""Finite measures on discrete spaces."""

from .measure import (
    Measure,
    add,
    check_masses,
    density_array,
    dirac,
    evaluate,
    isclose,
    leq,
    make_measure,
    measure_max,
    multiply_density,
    mutually_singular,
    normalize,
    product,
    project,
    scale,
    setwise_distance,
    total_mass,
    tv_distance,
    zero_measure,
)
from .space import ProductSpace, Space, pair_label

__all__ = [
    "Measure",
    "ProductSpace",
    "Space",
    "add",
    "check_masses",
    "density_array",
    "dirac",
    "evaluate",
    "isclose",
    "leq",
    "make_measure",
    "measure_max",
    "multiply_density",
    "mutually_singular",
    "normalize",
    "pair_label",
    "product",
    "project",
    "scale",
    "setwise_distance",
    "total_mass",
    "tv_distance",
    "zero_measure",
]
