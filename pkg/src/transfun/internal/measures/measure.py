"""Finite nonnegative measures on discrete spaces and their arithmetic.

Measures are immutable values: one read-only mass array aligned with the
atom order of their space. Every operation returns a new measure.
"""

import dataclasses as dc
import math
from collections.abc import Iterable, Iterator, Mapping
from typing import Any

import numpy as np

from transfun.internal.errors import (
    DimensionMismatch,
    NegativeMass,
    NegativeScalar,
    NonFinite,
    SpaceMismatch,
    UnknownAtom,
)
from transfun.internal.measures.space import ProductSpace, Space


@dc.dataclass(frozen=True, eq=False)
class Measure:
    """A finite measure with finite support: one nonnegative mass per atom."""

    space: Space
    masses: np.ndarray

    def __post_init__(self) -> None:
        masses = np.array(self.masses, dtype=float)
        if masses.shape != (len(self.space),):
            raise DimensionMismatch(
                f"measure on {self.space.id!r} needs {len(self.space)} masses, "
                f"got shape {masses.shape}",
            )
        check_masses(masses, what=f"measure on {self.space.id!r}")
        masses.flags.writeable = False
        object.__setattr__(self, "masses", masses)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Measure):
            return NotImplemented
        return self.space == other.space and bool(np.array_equal(self.masses, other.masses))

    def __repr__(self) -> str:
        inner = ", ".join(f"{label}: {mass:g}" for label, mass in self.items())
        return f"Measure({self.space.id}, {{{inner}}})"

    def mass_of(self, label: str) -> float:
        """Returns the mass of a single atom."""
        return float(self.masses[self.space.index_of(label)])

    def items(self) -> Iterator[tuple[str, float]]:
        """Yields (label, mass) for atoms of strictly positive mass, in space order."""
        for label, mass in zip(self.space.atoms, self.masses, strict=True):
            if mass > 0:
                yield label, float(mass)

    def support(self) -> frozenset[str]:
        """Returns the atoms of strictly positive mass."""
        return frozenset(label for label, _ in self.items())


def check_masses(values: np.ndarray, what: str) -> None:
    """Raises unless every value is finite and nonnegative."""
    if not np.all(np.isfinite(values)):
        raise NonFinite(f"{what} contains a NaN or infinite value")
    if np.any(values < 0):
        raise NegativeMass(f"{what} contains a negative value ({float(values.min()):g})")


def _same_space(mu1: Measure, mu2: Measure) -> None:
    if mu1.space != mu2.space:
        raise SpaceMismatch(
            f"measures live on different spaces {mu1.space.id!r} and {mu2.space.id!r}",
        )


def density_array(space: Space, g: Mapping[str, float], total: bool = False) -> np.ndarray:
    """Converts a label-keyed density into an array aligned with the space.

    Labels missing from the mapping get NaN unless ``total`` is set, in which
    case a missing label is an error.
    """
    out = np.full(len(space), np.nan)
    for label, value in g.items():
        weight = float(value)
        if not math.isfinite(weight):
            raise NonFinite(f"density on {space.id!r} has value {value!r} at atom {label!r}")
        if weight < 0:
            raise NegativeMass(f"density on {space.id!r} has value {weight:g} at atom {label!r}")
        out[space.index_of(label)] = weight
    if total and np.isnan(out).any():
        missing = [label for label, v in zip(space.atoms, out, strict=True) if np.isnan(v)]
        raise UnknownAtom(f"density on {space.id!r} has no value for atoms {missing}")
    return out


def make_measure(space: Space, entries: Iterable[tuple[str, Any]]) -> Measure:
    """Builds a measure from (label, mass) entries; repeated labels add up."""
    masses = np.zeros(len(space))
    for label, mass in entries:
        value = float(mass)
        if not math.isfinite(value):
            raise NonFinite(f"mass {mass!r} for atom {label!r} is not finite")
        if value < 0:
            raise NegativeMass(f"mass {value:g} for atom {label!r} is negative")
        masses[space.index_of(label)] += value
    return Measure(space, masses)


def zero_measure(space: Space) -> Measure:
    """The zero measure on a space."""
    return Measure(space, np.zeros(len(space)))


def dirac(space: Space, label: str, mass: float = 1.0) -> Measure:
    """A point mass at one atom."""
    return make_measure(space, [(label, mass)])


def total_mass(mu: Measure) -> float:
    """The norm of a positive measure: its mass on the whole space."""
    return float(mu.masses.sum())


def evaluate(mu: Measure, a: Iterable[str]) -> float:
    """The mass of a set of atoms."""
    labels = set(a)
    if not labels:
        return 0.0
    return float(mu.masses[mu.space.indices(sorted(labels))].sum())


def add(mu1: Measure, mu2: Measure) -> Measure:
    """Atomwise sum of two measures."""
    _same_space(mu1, mu2)
    return Measure(mu1.space, mu1.masses + mu2.masses)


def scale(alpha: float, mu: Measure) -> Measure:
    """Multiplies a measure by a nonnegative scalar."""
    if not math.isfinite(alpha):
        raise NonFinite(f"scalar {alpha!r} is not finite")
    if alpha < 0:
        raise NegativeScalar(f"scalar {alpha:g} is negative")
    return Measure(mu.space, alpha * mu.masses)


def leq(mu1: Measure, mu2: Measure, tolerance: float = 0.0) -> bool:
    """True when mu1(A) <= mu2(A) for every set A, i.e. atomwise domination."""
    _same_space(mu1, mu2)
    return bool(np.all(mu1.masses <= mu2.masses + tolerance))


def mutually_singular(mu1: Measure, mu2: Measure) -> bool:
    """True when the supports of the two measures are disjoint."""
    _same_space(mu1, mu2)
    return not bool(np.any((mu1.masses > 0) & (mu2.masses > 0)))


def project(mu: Measure, s: Iterable[str]) -> Measure:
    """Restricts a measure to a set of atoms: A -> mu(A & s)."""
    return Measure(mu.space, mu.masses * mu.space.indicator(s))


def product(mu: Measure, nu: Measure) -> Measure:
    """The product measure on the product space, mass of (x, y) = mu(x) * nu(y)."""
    space = ProductSpace.of(mu.space, nu.space)
    return Measure(space, np.outer(mu.masses, nu.masses).ravel())


def multiply_density(g: Mapping[str, float], mu: Measure) -> Measure:
    """The measure g * mu, (g * mu)(x) = g(x) * mu(x).

    ``g`` needs a value on every atom of the support of ``mu``; atoms
    carrying no mass may be left out.
    """
    weights = density_array(mu.space, g)
    undefined = np.isnan(weights) & (mu.masses > 0)
    if undefined.any():
        missing = [label for label, u in zip(mu.space.atoms, undefined, strict=True) if u]
        raise UnknownAtom(f"density has no value for atoms {missing} in the support")
    return Measure(mu.space, np.where(np.isnan(weights), 0.0, weights) * mu.masses)


def measure_max(nu: Measure, rho: Measure) -> Measure:
    """The lattice join: the least measure dominating both, atomwise maximum."""
    _same_space(nu, rho)
    return Measure(nu.space, np.maximum(nu.masses, rho.masses))


def tv_distance(mu: Measure, nu: Measure) -> float:
    """Total variation distance, the sum of absolute atom differences."""
    _same_space(mu, nu)
    return float(np.abs(mu.masses - nu.masses).sum())


def setwise_distance(mu: Measure, nu: Measure) -> float:
    """The largest difference |mu(A) - nu(A)| over all sets A."""
    _same_space(mu, nu)
    diff = mu.masses - nu.masses
    return float(max(diff[diff > 0].sum(), -diff[diff < 0].sum()))


def normalize(mu: Measure) -> Measure:
    """Rescales a nonzero measure to a probability measure."""
    mass = total_mass(mu)
    if mass <= 0:
        raise NonFinite(f"cannot normalize the zero measure on {mu.space.id!r}")
    return Measure(mu.space, mu.masses / mass)


def isclose(mu: Measure, nu: Measure, tolerance: float) -> bool:
    """True when every atom mass differs by at most ``tolerance``."""
    _same_space(mu, nu)
    return bool(np.all(np.abs(mu.masses - nu.masses) <= tolerance))
