"""Constructor tree for transfunctions.

Each node is an immutable value describing one construction. Nodes are
validated when built, so a tree that exists is consistent: children agree
on their spaces and all numeric tables are finite and nonnegative. The
precomputed arrays on each node are what the evaluator works with.
"""

import abc
import dataclasses as dc
import itertools
from collections.abc import Iterator, Mapping
from types import MappingProxyType
from typing import ClassVar

import numpy as np

from transfun.internal.errors import (
    BoundViolated,
    DimensionMismatch,
    InvalidSpec,
    MissingColumn,
    NonFinite,
    SpaceMismatch,
    UnknownAtom,
)
from transfun.internal.measures import Measure, Space, check_masses, density_array, total_mass


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class Transfunction(abc.ABC):
    """A map from finite measures on ``domain`` to finite measures on ``codomain``."""

    kind: ClassVar[str]
    domain: Space
    codomain: Space

    def children(self) -> tuple["Transfunction", ...]:
        """The direct subtrees, in the order used by node paths."""
        return ()


@dc.dataclass(frozen=True, eq=False)
class Pushforward(Transfunction):
    """The image of a measure under a function between atom sets."""

    kind: ClassVar[str] = "pushforward"

    domain: Space
    codomain: Space
    mapping: Mapping[str, str]
    incidence: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        mapping = MappingProxyType(dict(self.mapping))
        object.__setattr__(self, "mapping", mapping)
        missing = [x for x in self.domain.atoms if x not in mapping]
        if missing:
            raise InvalidSpec(f"pushforward function has no image for atoms {missing}")
        incidence = np.zeros((len(self.domain), len(self.codomain)))
        for x, y in mapping.items():
            incidence[self.domain.index_of(x), self.codomain.index_of(y)] = 1.0
        object.__setattr__(self, "incidence", _frozen(incidence))


@dc.dataclass(frozen=True, eq=False)
class Matrix(Transfunction):
    """A nonnegative matrix acting on mass vectors; rows are codomain atoms."""

    kind: ClassVar[str] = "matrix"

    domain: Space
    codomain: Space
    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.array(self.entries, dtype=float)
        expected = (len(self.codomain), len(self.domain))
        if entries.shape != expected:
            raise DimensionMismatch(f"matrix has shape {entries.shape}, expected {expected}")
        check_masses(entries, what="matrix")
        object.__setattr__(self, "entries", _frozen(entries))


@dc.dataclass(frozen=True, eq=False)
class CountableMatrix(Transfunction):
    """A matrix given column by column, each column a finite measure on the codomain.

    Every domain atom needs a column, and every column must have total mass
    strictly below ``bound``.
    """

    kind: ClassVar[str] = "countable_matrix"

    domain: Space
    codomain: Space
    columns: Mapping[str, Measure]
    bound: float
    column_matrix: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        columns = MappingProxyType(dict(self.columns))
        object.__setattr__(self, "columns", columns)
        if not np.isfinite(self.bound):
            raise NonFinite(f"declared column bound {self.bound!r} is not finite")
        if self.bound <= 0:
            raise InvalidSpec(f"declared column bound {self.bound:g} must be positive")

        missing = [x for x in self.domain.atoms if x not in columns]
        if missing:
            raise MissingColumn(f"no column for domain atoms {missing}")

        column_matrix = np.zeros((len(self.domain), len(self.codomain)))
        for label, column in columns.items():
            i = self.domain.index_of(label)
            if column.space != self.codomain:
                raise SpaceMismatch(
                    f"column {label!r} lives on {column.space.id!r}, "
                    f"expected codomain {self.codomain.id!r}",
                )
            mass = total_mass(column)
            if mass >= self.bound:
                raise BoundViolated(
                    f"column {label!r} has mass {mass:g}, not below the bound {self.bound:g}",
                )
            column_matrix[i] = column.masses
        object.__setattr__(self, "column_matrix", _frozen(column_matrix))


@dc.dataclass(frozen=True, eq=False)
class Kernel(Transfunction):
    """Integration of a bounded density against the product of input and ``rho``.

    ``phi`` is keyed by (domain label, codomain label); missing pairs are 0.
    """

    kind: ClassVar[str] = "kernel"

    domain: Space
    codomain: Space
    phi: Mapping[tuple[str, str], float]
    rho: Measure
    weights: np.ndarray = dc.field(init=False, repr=False)
    transfer: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        phi = MappingProxyType(dict(self.phi))
        object.__setattr__(self, "phi", phi)
        if self.rho.space != self.codomain:
            raise SpaceMismatch(
                f"kernel reference measure lives on {self.rho.space.id!r}, "
                f"expected codomain {self.codomain.id!r}",
            )
        weights = np.zeros((len(self.domain), len(self.codomain)))
        for (x, y), value in phi.items():
            weights[self.domain.index_of(x), self.codomain.index_of(y)] = value
        check_masses(weights, what="kernel density")
        object.__setattr__(self, "weights", _frozen(weights))
        object.__setattr__(self, "transfer", _frozen(weights * self.rho.masses[None, :]))


@dc.dataclass(frozen=True, eq=False)
class OutputMultiplier(Transfunction):
    """Multiplies the output of ``inner`` by a density on the codomain."""

    kind: ClassVar[str] = "output_multiplier"

    f: Mapping[str, float]
    inner: Transfunction
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)
    density: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "f", MappingProxyType(dict(self.f)))
        object.__setattr__(self, "domain", self.inner.domain)
        object.__setattr__(self, "codomain", self.inner.codomain)
        density = density_array(self.codomain, self.f, total=True)
        object.__setattr__(self, "density", _frozen(density))

    def children(self) -> tuple[Transfunction, ...]:
        return (self.inner,)


@dc.dataclass(frozen=True, eq=False)
class InputMultiplier(Transfunction):
    """Multiplies the input by a density on the domain before applying ``inner``."""

    kind: ClassVar[str] = "input_multiplier"

    inner: Transfunction
    g: Mapping[str, float]
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)
    density: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", MappingProxyType(dict(self.g)))
        object.__setattr__(self, "domain", self.inner.domain)
        object.__setattr__(self, "codomain", self.inner.codomain)
        density = density_array(self.domain, self.g, total=True)
        object.__setattr__(self, "density", _frozen(density))

    def children(self) -> tuple[Transfunction, ...]:
        return (self.inner,)


@dc.dataclass(frozen=True, eq=False)
class MaxWith(Transfunction):
    """The lattice join of the output of ``inner`` with a fixed measure ``rho``."""

    kind: ClassVar[str] = "max_with"

    inner: Transfunction
    rho: Measure
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "domain", self.inner.domain)
        object.__setattr__(self, "codomain", self.inner.codomain)
        if self.rho.space != self.codomain:
            raise SpaceMismatch(
                f"max_with measure lives on {self.rho.space.id!r}, "
                f"expected codomain {self.codomain.id!r}",
            )

    def children(self) -> tuple[Transfunction, ...]:
        return (self.inner,)


@dc.dataclass(frozen=True, eq=False)
class PreProject(Transfunction):
    """Restricts the input to a set of domain atoms before applying ``inner``."""

    kind: ClassVar[str] = "pre_project"

    atoms: frozenset[str]
    inner: Transfunction
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)
    indicator: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "domain", self.inner.domain)
        object.__setattr__(self, "codomain", self.inner.codomain)
        indicator = self.domain.indicator(sorted(self.atoms))
        object.__setattr__(self, "indicator", _frozen(indicator))

    def children(self) -> tuple[Transfunction, ...]:
        return (self.inner,)


@dc.dataclass(frozen=True, eq=False)
class PostProject(Transfunction):
    """Restricts the output of ``inner`` to a set of codomain atoms."""

    kind: ClassVar[str] = "post_project"

    atoms: frozenset[str]
    inner: Transfunction
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)
    indicator: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", frozenset(self.atoms))
        object.__setattr__(self, "domain", self.inner.domain)
        object.__setattr__(self, "codomain", self.inner.codomain)
        indicator = self.codomain.indicator(sorted(self.atoms))
        object.__setattr__(self, "indicator", _frozen(indicator))

    def children(self) -> tuple[Transfunction, ...]:
        return (self.inner,)


@dc.dataclass(frozen=True, eq=False)
class SemigroupProduct(Transfunction):
    """Pushes the product of two outputs forward along a semigroup operation.

    ``op`` is the full operation table on codomain atoms. It must be closed
    and associative.
    """

    kind: ClassVar[str] = "semigroup_product"

    left: Transfunction
    right: Transfunction
    op: Mapping[tuple[str, str], str]
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)
    structure: np.ndarray = dc.field(init=False, repr=False)

    def __post_init__(self) -> None:
        op = MappingProxyType(dict(self.op))
        object.__setattr__(self, "op", op)
        if self.left.domain != self.right.domain or self.left.codomain != self.right.codomain:
            raise SpaceMismatch(
                f"semigroup product factors map {self.left.domain.id!r}->"
                f"{self.left.codomain.id!r} and {self.right.domain.id!r}->"
                f"{self.right.codomain.id!r}",
            )
        object.__setattr__(self, "domain", self.left.domain)
        object.__setattr__(self, "codomain", self.left.codomain)

        atoms = self.codomain.atoms
        missing = [(u, v) for u, v in itertools.product(atoms, atoms) if (u, v) not in op]
        if missing:
            raise InvalidSpec(f"operation table is not total, missing pairs {missing[:3]}")
        table = np.zeros((len(atoms), len(atoms)), dtype=np.intp)
        for (u, v), z in op.items():
            if z not in self.codomain:
                raise UnknownAtom(
                    f"operation maps ({u}, {v}) to {z!r}, outside {self.codomain.id!r}",
                )
            table[self.codomain.index_of(u), self.codomain.index_of(v)] = self.codomain.index_of(z)

        n = len(atoms)
        for a, b, c in itertools.product(range(n), repeat=3):
            if table[table[a, b], c] != table[a, table[b, c]]:
                raise InvalidSpec(
                    f"operation is not associative on ({atoms[a]}, {atoms[b]}, {atoms[c]})",
                )

        structure = np.zeros((n, n, n))
        u_idx, v_idx = np.indices((n, n))
        structure[u_idx, v_idx, table] = 1.0
        object.__setattr__(self, "structure", _frozen(structure))

    def children(self) -> tuple[Transfunction, ...]:
        return (self.left, self.right)


@dc.dataclass(frozen=True, eq=False)
class Compose(Transfunction):
    """Applies ``inner`` and then ``outer``."""

    kind: ClassVar[str] = "compose"

    outer: Transfunction
    inner: Transfunction
    domain: Space = dc.field(init=False)
    codomain: Space = dc.field(init=False)

    def __post_init__(self) -> None:
        if self.inner.codomain != self.outer.domain:
            raise SpaceMismatch(
                f"cannot compose: inner codomain is {self.inner.codomain.id!r} "
                f"but outer domain is {self.outer.domain.id!r}",
            )
        object.__setattr__(self, "domain", self.inner.domain)
        object.__setattr__(self, "codomain", self.outer.codomain)

    def children(self) -> tuple[Transfunction, ...]:
        return (self.outer, self.inner)


LINEAR_KINDS = frozenset(
    {
        Pushforward.kind,
        Matrix.kind,
        CountableMatrix.kind,
        Kernel.kind,
        OutputMultiplier.kind,
        InputMultiplier.kind,
        PreProject.kind,
        PostProject.kind,
        Compose.kind,
    },
)


def compose(outer: Transfunction, inner: Transfunction) -> Compose:
    """The transfunction mu -> outer(inner(mu))."""
    return Compose(outer=outer, inner=inner)


def identity(space: Space) -> Pushforward:
    """The identity transfunction on a space."""
    return Pushforward(space, space, {x: x for x in space.atoms})


def child_path(path: str, index: int) -> str:
    """The path of the ``index``-th child of the node at ``path``."""
    return f"{path.rstrip('/')}/{index}"


def walk(spec: Transfunction, path: str = "/") -> Iterator[tuple[str, Transfunction]]:
    """Yields (path, node) for every node of the tree, pre-order."""
    yield path, spec
    for i, child in enumerate(spec.children()):
        yield from walk(child, child_path(path, i))


def is_linear(spec: Transfunction) -> bool:
    """True when the tree contains neither a max nor a semigroup product node."""
    return all(node.kind in LINEAR_KINDS for _, node in walk(spec))


def node_count(spec: Transfunction) -> int:
    """Number of nodes in the tree."""
    return sum(1 for _ in walk(spec))


def depth(spec: Transfunction) -> int:
    """Length of the longest root-to-leaf chain of edges."""
    return max((1 + depth(child) for child in spec.children()), default=0)
