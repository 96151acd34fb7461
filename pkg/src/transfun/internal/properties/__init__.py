"""Axiom inference and randomized property checking."""

from .checker import check_all, check_axiom, estimate_bound, replay_witness
from .generators import (
    random_dominated_pair,
    random_measure,
    random_singular_pair,
    random_space,
    random_transfunction,
    random_tv_sequence,
    trial_rng,
)
from .inference import StaticFacts, infer_properties, static_facts, static_verdicts

__all__ = [
    "StaticFacts",
    "check_all",
    "check_axiom",
    "estimate_bound",
    "infer_properties",
    "random_dominated_pair",
    "random_measure",
    "random_singular_pair",
    "random_space",
    "random_transfunction",
    "random_tv_sequence",
    "replay_witness",
    "static_facts",
    "static_verdicts",
    "trial_rng",
]
