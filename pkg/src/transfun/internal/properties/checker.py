"""Randomized checking of the axioms.

Trials are drawn per axiom from an independent stream of the configured
seed, stacked into one batch and evaluated together. The first trial whose
violation exceeds the tolerance becomes the witness.
"""

import numpy as np
import structlog

from transfun.internal.codec import measure_from_document, spec_digest
from transfun.internal.errors import InternalInconsistency
from transfun.internal.models import (
    Axiom,
    CheckConfig,
    PropertyReport,
    Verdict,
    VerdictStatus,
)
from transfun.internal.properties.generators import (
    random_dominated_pair,
    random_measure,
    random_singular_pair,
    random_tv_sequence,
    trial_rng,
)
from transfun.internal.properties.inference import StaticFacts, static_facts, static_verdicts
from transfun.internal.properties.laws import DIVERGENCE_SCALES, evaluate_law, ratios
from transfun.internal.properties.witness import build_witness
from transfun.internal.transfunctions import Transfunction, apply_masses, is_linear

log = structlog.stdlib.get_logger()

# Random streams: one per axiom in declaration order, then the bound estimate
_STREAMS = {axiom: i for i, axiom in enumerate(Axiom)}
BOUND_STREAM = len(_STREAMS)


class _Trials:
    """A stacked batch of trial inputs for one axiom."""

    def __init__(
        self,
        inputs: list[np.ndarray],
        alpha: np.ndarray | None = None,
        constant: float | None = None,
    ) -> None:
        self.inputs = inputs
        self.alpha = alpha
        self.constant = constant


def _rows(space_size: int, rows: list[np.ndarray]) -> np.ndarray:
    return np.array(rows, dtype=float).reshape(len(rows), space_size)


def _with_point_masses(
    spec: Transfunction,
    cfg: CheckConfig,
    rngs: list[np.random.Generator],
) -> np.ndarray:
    """Unit point masses at every atom followed by one random measure per trial."""
    n = len(spec.domain)
    drawn = [random_measure(spec.domain, cfg, rng).masses for rng in rngs]
    return np.vstack([np.eye(n), _rows(n, drawn)])


def _draw(spec: Transfunction, axiom: Axiom, cfg: CheckConfig, facts: StaticFacts) -> _Trials:
    domain = spec.domain
    n = len(domain)
    stream = _STREAMS[axiom]
    rngs = [trial_rng(cfg.seed, stream, t) for t in range(cfg.trials)]

    match axiom:
        case Axiom.weakly_additive:
            pairs = [random_singular_pair(domain, cfg, rng) for rng in rngs]
            return _Trials(
                [_rows(n, [a.masses for a, _ in pairs]), _rows(n, [b.masses for _, b in pairs])],
            )
        case Axiom.strongly_additive:
            pairs = [
                (random_measure(domain, cfg, rng), random_measure(domain, cfg, rng))
                for rng in rngs
            ]
            return _Trials(
                [_rows(n, [a.masses for a, _ in pairs]), _rows(n, [b.masses for _, b in pairs])],
            )
        case Axiom.homogeneous:
            alphas, measures = [], []
            for rng in rngs:
                alphas.append(rng.uniform(0.0, cfg.max_mass))
                measures.append(random_measure(domain, cfg, rng).masses)
            return _Trials([_rows(n, measures)], alpha=np.array(alphas))
        case Axiom.monotone:
            pairs = [random_dominated_pair(domain, cfg, rng) for rng in rngs]
            return _Trials(
                [_rows(n, [a.masses for a, _ in pairs]), _rows(n, [b.masses for _, b in pairs])],
            )
        case Axiom.measure_preserving:
            return _Trials([_with_point_masses(spec, cfg, rngs)])
        case Axiom.bounded:
            base = _with_point_masses(spec, cfg, rngs)
            if facts.bound is not None:
                return _Trials([base], constant=facts.bound)
            scales = np.tile(DIVERGENCE_SCALES, len(base))
            repeated = np.repeat(base, len(DIVERGENCE_SCALES), axis=0)
            return _Trials([repeated, repeated * scales[:, None]])
        case Axiom.continuous:
            targets, sequences = [], []
            for rng in rngs:
                target = random_measure(domain, cfg, rng)
                targets.append(target.masses)
                sequences.append([mu.masses for mu in random_tv_sequence(domain, target, cfg, rng)])
            if facts.modulus is not None:
                length = cfg.sequence_length
                flat_targets = np.repeat(_rows(n, targets), length, axis=0)
                terms = _rows(n, [term for seq in sequences for term in seq])
                return _Trials([flat_targets, terms], constant=facts.modulus)
            return _Trials(
                [
                    _rows(n, targets),
                    _rows(n, [seq[0] for seq in sequences]),
                    _rows(n, [seq[-1] for seq in sequences]),
                ],
            )
    raise ValueError(f"unknown axiom {axiom!r}")


def _observed_constant(
    axiom: Axiom,
    trials: _Trials,
    outputs: list[np.ndarray],
    tolerance: float,
) -> float | None:
    """The empirical bound ratio or continuity modulus seen over passing trials."""
    match axiom:
        case Axiom.bounded:
            return _nanmax(ratios(trials.inputs[0], outputs[0], tolerance))
        case Axiom.continuous:
            target_in, target_out = trials.inputs[0], outputs[0]
            moduli = []
            for term_in, term_out in zip(trials.inputs[1:], outputs[1:], strict=True):
                d_in = np.abs(term_in - target_in).sum(axis=1)
                d_out = np.abs(term_out - target_out).sum(axis=1)
                valid = d_in > tolerance
                moduli.append(d_out[valid] / d_in[valid])
            return _nanmax(np.concatenate(moduli))
    return None


def _nanmax(values: np.ndarray) -> float | None:
    finite = values[~np.isnan(values)]
    return float(finite.max()) if finite.size else None


def check_axiom(
    spec: Transfunction,
    axiom: Axiom,
    cfg: CheckConfig,
    facts: StaticFacts | None = None,
) -> Verdict:
    """Runs cfg.trials randomized trials of one axiom."""
    facts = facts or static_facts(spec)
    trials = _draw(spec, axiom, cfg, facts)
    violation, outputs = evaluate_law(
        spec,
        axiom,
        trials.inputs,
        trials.alpha,
        trials.constant,
        cfg.tolerance,
    )
    hits = np.flatnonzero(violation > cfg.tolerance)
    if hits.size:
        row = int(hits[0])
        log.info(
            "axiom refuted",
            axiom=axiom.value,
            candidate=row,
            violation=float(violation[row]),
        )
        return Verdict(
            axiom=axiom,
            status=VerdictStatus.refuted_with_witness,
            constant=trials.constant,
            witness=build_witness(spec, trials.inputs, outputs, trials.alpha, violation, row),
            provenance="trials",
        )

    log.debug("axiom passed trials", axiom=axiom.value, candidates=len(violation))
    return Verdict(
        axiom=axiom,
        status=VerdictStatus.passed_trials,
        constant=_observed_constant(axiom, trials, outputs, cfg.tolerance),
        provenance="trials",
    )


def check_all(
    spec: Transfunction,
    cfg: CheckConfig,
    axioms: list[Axiom] | None = None,
) -> PropertyReport:
    """Static inference merged with randomized trials.

    Raises InternalInconsistency when trials refute a statically proved axiom.
    """
    facts = static_facts(spec)
    wanted = set(axioms) if axioms is not None else set(Axiom)
    verdicts = []
    for static in static_verdicts(spec, cfg.tolerance):
        if static.axiom not in wanted:
            continue
        match static.status:
            case VerdictStatus.refuted_with_witness:
                verdicts.append(static)
            case VerdictStatus.proved:
                trial = check_axiom(spec, static.axiom, cfg, facts)
                if trial.status == VerdictStatus.refuted_with_witness:
                    raise InternalInconsistency(
                        f"{static.axiom.value} is proved but a trial violates it "
                        f"by {trial.witness.violation if trial.witness else 'nan'}",
                    )
                verdicts.append(static.model_copy(update={"provenance": "static+trials"}))
            case _:
                verdicts.append(check_axiom(spec, static.axiom, cfg, facts))

    log.info(
        "checked transfunction",
        trials=cfg.trials,
        refuted=[v.axiom.value for v in verdicts if v.status == VerdictStatus.refuted_with_witness],
    )
    return PropertyReport(spec_digest=spec_digest(spec), config=cfg, verdicts=verdicts)


def estimate_bound(spec: Transfunction, cfg: CheckConfig) -> float:
    """Empirical sup of output mass over input mass.

    Unit point masses at every domain atom are always included. For linear
    trees the supremum is attained there, so only the point masses count.
    """
    n = len(spec.domain)
    rows = np.eye(n)
    if not is_linear(spec):
        drawn = [
            random_measure(spec.domain, cfg, trial_rng(cfg.seed, BOUND_STREAM, t)).masses
            for t in range(cfg.trials)
        ]
        rows = np.vstack([rows, _rows(n, drawn)])
    estimate = _nanmax(ratios(rows, apply_masses(spec, rows), cfg.tolerance))
    return 0.0 if estimate is None else estimate


def replay_witness(spec: Transfunction, verdict: Verdict, cfg: CheckConfig) -> float:
    """Recomputes the violation of a stored witness without randomness."""
    witness = verdict.witness
    if witness is None:
        raise ValueError(f"verdict for {verdict.axiom.value} carries no witness")
    inputs = [measure_from_document(doc, spec.domain).masses[None, :] for doc in witness.inputs]
    alpha = None if witness.alpha is None else np.array([witness.alpha])
    constant = verdict.constant
    if constant is None and verdict.axiom in (Axiom.bounded, Axiom.continuous):
        facts = static_facts(spec)
        constant = facts.bound if verdict.axiom == Axiom.bounded else facts.modulus
    violation, _ = evaluate_law(spec, verdict.axiom, inputs, alpha, constant, cfg.tolerance)
    return float(violation[0])
