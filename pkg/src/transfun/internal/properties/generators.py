"""Random inputs for the property checker.

Every generator draws from the numpy ``Generator`` it is handed and never
from global state, so a seed fully determines its output.
"""

import itertools

import numpy as np

from transfun.internal.measures import Measure, Space
from transfun.internal.models import CheckConfig
from transfun.internal.transfunctions import (
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
)


def trial_rng(seed: int, stream: int, trial: int) -> np.random.Generator:
    """An independent generator for one trial, derived from (seed, stream, trial)."""
    return np.random.default_rng([seed, stream, trial])


def random_measure(space: Space, cfg: CheckConfig, rng: np.random.Generator) -> Measure:
    """Uniform masses in [0, max_mass], with a random subset of atoms zeroed."""
    masses = rng.uniform(0.0, cfg.max_mass, size=len(space))
    keep = rng.random(len(space)) >= rng.random()
    return Measure(space, np.where(keep, masses, 0.0))


def random_singular_pair(
    space: Space,
    cfg: CheckConfig,
    rng: np.random.Generator,
) -> tuple[Measure, Measure]:
    """Two measures concentrated on complementary random sets of atoms."""
    masses = random_measure(space, cfg, rng).masses
    first = rng.random(len(space)) < 0.5
    return (
        Measure(space, np.where(first, masses, 0.0)),
        Measure(space, np.where(first, 0.0, masses)),
    )


def random_dominated_pair(
    space: Space,
    cfg: CheckConfig,
    rng: np.random.Generator,
) -> tuple[Measure, Measure]:
    """A pair (mu1, mu2) with mu1 <= mu2 atomwise."""
    upper = random_measure(space, cfg, rng)
    lower = Measure(space, upper.masses * rng.random(len(space)))
    return lower, upper


def random_tv_sequence(
    space: Space,
    target: Measure,
    cfg: CheckConfig,
    rng: np.random.Generator,
) -> list[Measure]:
    """Measures target + 2**-k * perturbation for k = 0 .. sequence_length - 1.

    The perturbation is a nonzero random measure, so the total variation
    distance to ``target`` halves strictly at each step.
    """
    perturbation = random_measure(space, cfg, rng).masses
    if not perturbation.any():
        perturbation = np.zeros(len(space))
        perturbation[rng.integers(len(space))] = rng.uniform(0.5, 1.0) * cfg.max_mass
    return [
        Measure(space, target.masses + perturbation * 2.0**-k)
        for k in range(cfg.sequence_length)
    ]


# --- random constructor trees ---------------------------------------------------

_LEAF_KINDS = ("pushforward", "matrix", "countable_matrix", "kernel")
_NODE_KINDS = (
    "output_multiplier",
    "input_multiplier",
    "max_with",
    "pre_project",
    "post_project",
    "semigroup_product",
    "compose",
)


def random_space(rng: np.random.Generator, max_atoms: int, name: str) -> Space:
    """A space with between 1 and ``max_atoms`` atoms."""
    n = int(rng.integers(1, max_atoms + 1))
    return Space(id=name, atoms=tuple(f"{name}{i}" for i in range(n)))


def _subset(space: Space, rng: np.random.Generator) -> frozenset[str]:
    return frozenset(x for x in space.atoms if rng.random() < 0.6)


def _small_measure(space: Space, rng: np.random.Generator) -> Measure:
    return Measure(space, rng.uniform(0.0, 1.0, size=len(space)) * (rng.random(len(space)) < 0.7))


def _semigroup_table(space: Space, rng: np.random.Generator) -> dict[tuple[str, str], str]:
    atoms = space.atoms
    n = len(atoms)
    if rng.random() < 0.5:
        # cyclic group
        return {
            (atoms[i], atoms[j]): atoms[(i + j) % n]
            for i, j in itertools.product(range(n), repeat=2)
        }
    # max semilattice
    return {
        (atoms[i], atoms[j]): atoms[max(i, j)]
        for i, j in itertools.product(range(n), repeat=2)
    }


def _random_leaf(domain: Space, codomain: Space, rng: np.random.Generator) -> Transfunction:
    kind = _LEAF_KINDS[int(rng.integers(len(_LEAF_KINDS)))]
    n_dom, n_cod = len(domain), len(codomain)
    match kind:
        case "pushforward":
            targets = rng.integers(n_cod, size=n_dom)
            return Pushforward(
                domain,
                codomain,
                {x: codomain.atoms[t] for x, t in zip(domain.atoms, targets, strict=True)},
            )
        case "matrix":
            entries = rng.uniform(0.0, 1.0, size=(n_cod, n_dom))
            if rng.random() < 0.5:
                entries = entries / entries.sum(axis=0, keepdims=True)
            return Matrix(domain, codomain, entries)
        case "countable_matrix":
            columns = {}
            for x in domain.atoms:
                column = rng.uniform(0.0, 1.0, size=n_cod)
                if rng.random() < 0.5:
                    column = column / column.sum()
                columns[x] = Measure(codomain, column)
            bound = max(float(c.masses.sum()) for c in columns.values()) + 1.0
            return CountableMatrix(domain, codomain, columns, bound)
        case _:
            phi = {
                (x, y): float(rng.uniform(0.0, 1.0)) for x in domain.atoms for y in codomain.atoms
            }
            return Kernel(domain, codomain, phi, _small_measure(codomain, rng))


def random_transfunction(
    domain: Space,
    codomain: Space,
    depth: int,
    rng: np.random.Generator,
    max_atoms: int = 5,
) -> Transfunction:
    """A random constructor tree of at most ``depth`` levels below the root."""
    if depth <= 0 or rng.random() < 0.25:
        return _random_leaf(domain, codomain, rng)

    kind = _NODE_KINDS[int(rng.integers(len(_NODE_KINDS)))]
    below = depth - 1
    match kind:
        case "output_multiplier":
            inner = random_transfunction(domain, codomain, below, rng, max_atoms)
            f = {y: float(rng.uniform(0.0, 2.0)) for y in codomain.atoms}
            return OutputMultiplier(f, inner)
        case "input_multiplier":
            inner = random_transfunction(domain, codomain, below, rng, max_atoms)
            g = {x: float(rng.uniform(0.0, 2.0)) for x in domain.atoms}
            return InputMultiplier(inner, g)
        case "max_with":
            inner = random_transfunction(domain, codomain, below, rng, max_atoms)
            rho = _small_measure(codomain, rng) if rng.random() < 0.8 else Measure(
                codomain,
                np.zeros(len(codomain)),
            )
            return MaxWith(inner, rho)
        case "pre_project":
            inner = random_transfunction(domain, codomain, below, rng, max_atoms)
            return PreProject(_subset(domain, rng), inner)
        case "post_project":
            inner = random_transfunction(domain, codomain, below, rng, max_atoms)
            return PostProject(_subset(codomain, rng), inner)
        case "semigroup_product":
            left = random_transfunction(domain, codomain, below, rng, max_atoms)
            right = random_transfunction(domain, codomain, below, rng, max_atoms)
            return SemigroupProduct(left, right, _semigroup_table(codomain, rng))
        case _:
            middle = random_space(rng, max_atoms, name=f"M{int(rng.integers(10**6))}_")
            inner = random_transfunction(domain, middle, below, rng, max_atoms)
            outer = random_transfunction(middle, codomain, below, rng, max_atoms)
            return Compose(outer=outer, inner=inner)
