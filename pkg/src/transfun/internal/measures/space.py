"""Discrete measurable spaces.

A space is an ordered list of atom labels; its sigma-algebra is the power
set, so a measure is fully described by one mass per atom.
"""

import dataclasses as dc
import json
from collections.abc import Iterable, Iterator
from functools import cached_property

import numpy as np

from transfun.internal.errors import InvalidSpace, UnknownAtom


@dc.dataclass(frozen=True)
class Space:
    """A discrete measurable space with a fixed atom order."""

    id: str
    atoms: tuple[str, ...]

    def __post_init__(self) -> None:
        atoms = tuple(self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if len(atoms) == 0:
            raise InvalidSpace(f"space {self.id!r} has no atoms")
        if len(set(atoms)) != len(atoms):
            repeated = sorted({a for a in atoms if atoms.count(a) > 1})
            raise InvalidSpace(f"space {self.id!r} repeats atom labels {repeated}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.atoms)}

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index_of(self, label: str) -> int:
        """Returns the position of an atom label."""
        try:
            return self._index[label]
        except KeyError:
            raise UnknownAtom(f"atom {label!r} is not in space {self.id!r}") from None

    def indices(self, labels: Iterable[str]) -> np.ndarray:
        """Returns the positions of several atom labels as an integer array."""
        return np.array([self.index_of(label) for label in labels], dtype=np.intp)

    def indicator(self, labels: Iterable[str]) -> np.ndarray:
        """Returns the 0-1 vector of a set of atoms."""
        out = np.zeros(len(self.atoms))
        out[self.indices(labels)] = 1.0
        return out


def pair_label(left: str, right: str) -> str:
    """Encodes an ordered pair of labels as a single, uniquely decodable label."""
    return json.dumps([left, right], ensure_ascii=False)


@dc.dataclass(frozen=True)
class ProductSpace(Space):
    """The product of two spaces; atoms are all pairs in row-major order."""

    left: Space
    right: Space

    def __post_init__(self) -> None:
        super().__post_init__()
        expected = tuple(pair_label(x, y) for x in self.left.atoms for y in self.right.atoms)
        if self.atoms != expected:
            raise InvalidSpace(
                f"product space {self.id!r} atoms are not the row-major pairs of "
                f"{self.left.id!r} and {self.right.id!r}",
            )

    @classmethod
    def of(cls, left: Space, right: Space) -> "ProductSpace":
        """Builds the product space of two spaces."""
        return cls(
            id=f"{left.id}x{right.id}",
            atoms=tuple(pair_label(x, y) for x in left.atoms for y in right.atoms),
            left=left,
            right=right,
        )

    @cached_property
    def _pairs(self) -> dict[str, tuple[str, str]]:
        return {
            pair_label(x, y): (x, y) for x in self.left.atoms for y in self.right.atoms
        }

    def pair_of(self, label: str) -> tuple[str, str]:
        """Decodes a product atom into its (left, right) labels."""
        try:
            return self._pairs[label]
        except KeyError:
            raise UnknownAtom(f"atom {label!r} is not in space {self.id!r}") from None
