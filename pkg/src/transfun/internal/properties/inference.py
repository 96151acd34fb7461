"""Static inference of axioms over the constructor tree.

Each node kind has a rule that derives its proved axioms, bound constant
and continuity modulus from those of its children. Axioms a rule cannot
prove stay unknown; the randomized checker decides them. The only static
refutations are constructive ones for semigroup products, found by
evaluating the tree on point masses.
"""

import dataclasses as dc
import itertools

import numpy as np
import structlog

from transfun.internal.codec import spec_digest
from transfun.internal.models import (
    Axiom,
    CheckConfig,
    PropertyReport,
    Verdict,
    VerdictStatus,
    Witness,
)
from transfun.internal.properties.laws import evaluate_law
from transfun.internal.properties.witness import build_witness
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

log = structlog.stdlib.get_logger()

# Column sums this close to 1 count as unit sums
UNIT_SUM_TOLERANCE = 1e-12

ALL_AXIOMS = frozenset(Axiom)
LINEAR_AXIOMS = frozenset(
    {
        Axiom.weakly_additive,
        Axiom.strongly_additive,
        Axiom.homogeneous,
        Axiom.monotone,
        Axiom.bounded,
        Axiom.continuous,
    },
)


@dc.dataclass(frozen=True)
class StaticFacts:
    """What the rule table proves about a (sub)tree."""

    proved: frozenset[Axiom]
    bound: float | None = None
    modulus: float | None = None

    def __post_init__(self) -> None:
        proved = set(self.proved)
        bound = self.bound
        if Axiom.strongly_additive in proved:
            proved.add(Axiom.weakly_additive)
        if Axiom.measure_preserving in proved:
            proved.add(Axiom.bounded)
            bound = 1.0
        if Axiom.bounded not in proved:
            bound = None
        modulus = self.modulus if Axiom.continuous in proved else None
        object.__setattr__(self, "proved", frozenset(proved))
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "modulus", modulus)


def _linear_leaf(column_sums: np.ndarray, coarse_bound: float | None = None) -> StaticFacts:
    """Facts for a nonnegative matrix-like leaf with the given column masses."""
    tight = float(column_sums.max(initial=0.0))
    bound = tight if coarse_bound is None else coarse_bound
    proved = set(LINEAR_AXIOMS)
    if np.allclose(column_sums, 1.0, rtol=0.0, atol=UNIT_SUM_TOLERANCE):
        proved.add(Axiom.measure_preserving)
    return StaticFacts(frozenset(proved), bound=bound, modulus=bound)


def _scaled(facts: StaticFacts, factor: float) -> StaticFacts:
    """Facts after multiplying input or output by a density bounded by ``factor``."""
    return StaticFacts(
        facts.proved - {Axiom.measure_preserving},
        bound=None if facts.bound is None else facts.bound * factor,
        modulus=None if facts.modulus is None else facts.modulus * factor,
    )


def static_facts(spec: Transfunction) -> StaticFacts:
    """Applies the rule table recursively."""
    match spec:
        case Pushforward():
            return StaticFacts(ALL_AXIOMS, bound=1.0, modulus=1.0)
        case Matrix():
            return _linear_leaf(spec.entries.sum(axis=0))
        case CountableMatrix():
            return _linear_leaf(spec.column_matrix.sum(axis=1))
        case Kernel():
            coarse = float(spec.weights.max(initial=0.0)) * float(spec.rho.masses.sum())
            return _linear_leaf(spec.transfer.sum(axis=1), coarse_bound=coarse)
        case OutputMultiplier() | InputMultiplier():
            return _scaled(static_facts(spec.inner), float(spec.density.max(initial=0.0)))
        case PreProject() | PostProject():
            return _scaled(static_facts(spec.inner), 1.0)
        case MaxWith():
            inner = static_facts(spec.inner)
            if not spec.rho.masses.any():
                return inner
            # the join with a fixed measure is 1-Lipschitz and monotone
            return StaticFacts(
                inner.proved & {Axiom.monotone, Axiom.continuous},
                modulus=inner.modulus,
            )
        case SemigroupProduct():
            left, right = static_facts(spec.left), static_facts(spec.right)
            return StaticFacts(left.proved & right.proved & {Axiom.monotone, Axiom.continuous})
        case Compose():
            outer, inner = static_facts(spec.outer), static_facts(spec.inner)
            both = outer.proved & inner.proved
            proved = both & {
                Axiom.strongly_additive,
                Axiom.homogeneous,
                Axiom.monotone,
                Axiom.measure_preserving,
                Axiom.bounded,
                Axiom.continuous,
            }
            # weak additivity survives only if the outer map adds non-singular images
            if Axiom.weakly_additive in inner.proved and Axiom.strongly_additive in outer.proved:
                proved = proved | {Axiom.weakly_additive}
            bound = None
            if outer.bound is not None and inner.bound is not None:
                bound = outer.bound * inner.bound
            modulus = None
            if outer.modulus is not None and inner.modulus is not None:
                modulus = outer.modulus * inner.modulus
            return StaticFacts(proved, bound=bound, modulus=modulus)
    raise TypeError(f"unknown node type {type(spec).__name__}")


def _point_masses(spec: Transfunction) -> np.ndarray:
    return np.eye(len(spec.domain))


def constructive_refutations(spec: Transfunction, tolerance: float) -> dict[Axiom, Witness]:
    """Witnesses against homogeneity and additivity of a semigroup product root.

    Point masses expose the degree-2 scaling (phi(2 delta) = 4 phi(delta))
    and the cross terms of the product of a sum.
    """
    if not isinstance(spec, SemigroupProduct):
        return {}
    deltas = _point_masses(spec)
    n = len(deltas)
    found: dict[Axiom, Witness] = {}

    candidates: list[tuple[Axiom, list[np.ndarray], np.ndarray | None]] = [
        (Axiom.homogeneous, [deltas], np.full(n, 2.0)),
        (Axiom.strongly_additive, [deltas, deltas], None),
    ]
    pairs = list(itertools.combinations(range(n), 2))
    if pairs:
        first, second = zip(*pairs, strict=True)
        candidates.append(
            (Axiom.weakly_additive, [deltas[list(first)], deltas[list(second)]], None),
        )

    for axiom, inputs, alpha in candidates:
        violation, outputs = evaluate_law(spec, axiom, inputs, alpha, None, tolerance)
        hits = np.flatnonzero(violation > tolerance)
        if hits.size:
            found[axiom] = build_witness(spec, inputs, outputs, alpha, violation, int(hits[0]))
            log.debug("statically refuted", axiom=axiom.value, candidate=int(hits[0]))
    return found


def static_verdicts(spec: Transfunction, tolerance: float) -> list[Verdict]:
    """One static verdict per axiom."""
    facts = static_facts(spec)
    refuted = constructive_refutations(spec, tolerance)
    verdicts = []
    for axiom in Axiom:
        if axiom in facts.proved:
            constant = {Axiom.bounded: facts.bound, Axiom.continuous: facts.modulus}.get(axiom)
            verdicts.append(Verdict(axiom=axiom, status=VerdictStatus.proved, constant=constant))
        elif axiom in refuted:
            verdicts.append(
                Verdict(
                    axiom=axiom,
                    status=VerdictStatus.refuted_with_witness,
                    witness=refuted[axiom],
                ),
            )
        else:
            verdicts.append(Verdict(axiom=axiom, status=VerdictStatus.unknown))
    return verdicts


def infer_properties(spec: Transfunction, cfg: CheckConfig | None = None) -> PropertyReport:
    """Static-only report: proved, constructively refuted or unknown per axiom."""
    cfg = cfg or CheckConfig()
    return PropertyReport(
        spec_digest=spec_digest(spec),
        config=cfg,
        verdicts=static_verdicts(spec, cfg.tolerance),
    )
