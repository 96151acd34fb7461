"""Violation measures for the seven axioms, evaluated on batches of trials.

Each law takes the trial inputs as 2-D arrays (one trial per row) and
returns the violation of every trial together with the compared outputs.
A trial violates its law when the violation exceeds the tolerance; trials
a law does not apply to get ``-inf``.
"""

import numpy as np

from transfun.internal.models import Axiom
from transfun.internal.transfunctions import Transfunction, apply_masses

# A ratio growing by this factor under rescaling counts as divergence
BOUND_DIVERGENCE = 100.0
# Rescalings tried against ratio divergence
DIVERGENCE_SCALES = (1e-6, 1e6)
# Continuity without a modulus only asserts the last term is below this many tolerances
CONTINUITY_FLOOR = 10.0

Outputs = list[np.ndarray]


def _sup_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(a - b).max(axis=1, initial=0.0)


def _tv(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(a - b).sum(axis=1)


def ratios(masses: np.ndarray, images: np.ndarray, tolerance: float) -> np.ndarray:
    """Output mass over input mass per row; NaN where the input mass is at most tolerance."""
    inputs = masses.sum(axis=1)
    outputs = images.sum(axis=1)
    valid = inputs > tolerance
    out = np.full(len(masses), np.nan)
    out[valid] = outputs[valid] / inputs[valid]
    return out


def additivity(spec: Transfunction, m1: np.ndarray, m2: np.ndarray) -> tuple[np.ndarray, Outputs]:
    """Distance between phi(m1 + m2) and phi(m1) + phi(m2)."""
    lhs = apply_masses(spec, m1 + m2)
    rhs = apply_masses(spec, m1) + apply_masses(spec, m2)
    return _sup_distance(lhs, rhs), [lhs, rhs]


def homogeneity(
    spec: Transfunction,
    alpha: np.ndarray,
    m: np.ndarray,
) -> tuple[np.ndarray, Outputs]:
    """Distance between phi(alpha m) and alpha phi(m)."""
    lhs = apply_masses(spec, alpha[:, None] * m)
    rhs = alpha[:, None] * apply_masses(spec, m)
    return _sup_distance(lhs, rhs), [lhs, rhs]


def monotonicity(
    spec: Transfunction,
    lower: np.ndarray,
    upper: np.ndarray,
) -> tuple[np.ndarray, Outputs]:
    """Largest amount by which phi(lower) exceeds phi(upper) on some atom."""
    lo = apply_masses(spec, lower)
    hi = apply_masses(spec, upper)
    return np.clip(lo - hi, 0.0, None).max(axis=1, initial=0.0), [lo, hi]


def preservation(spec: Transfunction, m: np.ndarray) -> tuple[np.ndarray, Outputs]:
    """Mass defect | ||phi(m)|| - ||m|| |."""
    out = apply_masses(spec, m)
    return np.abs(out.sum(axis=1) - m.sum(axis=1)), [out]


def boundedness(
    spec: Transfunction,
    m: np.ndarray,
    constant: float,
    tolerance: float,
) -> tuple[np.ndarray, Outputs]:
    """Amount by which ||phi(m)|| / ||m|| exceeds a known constant."""
    out = apply_masses(spec, m)
    r = ratios(m, out, tolerance)
    return np.where(np.isnan(r), -np.inf, r - constant), [out]


def divergence(
    spec: Transfunction,
    base: np.ndarray,
    scaled: np.ndarray,
    tolerance: float,
) -> tuple[np.ndarray, Outputs]:
    """Growth of the mass ratio when an input is rescaled."""
    outputs = [apply_masses(spec, base), apply_masses(spec, scaled)]
    r0 = ratios(base, outputs[0], tolerance)
    r1 = ratios(scaled, outputs[1], tolerance)
    v = r1 - BOUND_DIVERGENCE * r0
    return np.where(np.isnan(v), -np.inf, v), outputs


def lipschitz(
    spec: Transfunction,
    target: np.ndarray,
    term: np.ndarray,
    modulus: float,
) -> tuple[np.ndarray, Outputs]:
    """Amount by which tv(phi(term), phi(target)) exceeds modulus * tv(term, target)."""
    at_target = apply_masses(spec, target)
    at_term = apply_masses(spec, term)
    v = _tv(at_term, at_target) - modulus * _tv(term, target)
    return v, [at_target, at_term]


def convergence(
    spec: Transfunction,
    target: np.ndarray,
    first: np.ndarray,
    last: np.ndarray,
    tolerance: float,
) -> tuple[np.ndarray, Outputs]:
    """Failure of the output distances to shrink along a sequence converging to ``target``.

    The last output distance must be within the floor, or have shrunk at
    least like the square root of the input distances.
    """
    at_target = apply_masses(spec, target)
    at_first = apply_masses(spec, first)
    at_last = apply_masses(spec, last)
    d_first = _tv(at_first, at_target)
    d_last = _tv(at_last, at_target)
    shrink = np.sqrt(_tv(last, target) / _tv(first, target))
    v = np.minimum(d_last - CONTINUITY_FLOOR * tolerance, d_last - shrink * d_first)
    return v, [at_target, at_first, at_last]


def evaluate_law(
    spec: Transfunction,
    axiom: Axiom,
    inputs: list[np.ndarray],
    alpha: np.ndarray | None,
    constant: float | None,
    tolerance: float,
) -> tuple[np.ndarray, Outputs]:
    """Dispatches to the law of an axiom given its trial inputs.

    The shape of ``inputs`` selects the variant for the two axioms that
    have one: a single input checks a known bound constant and two inputs
    check ratio divergence; two inputs check a continuity modulus and
    three check plain convergence.
    """
    match axiom:
        case Axiom.weakly_additive | Axiom.strongly_additive:
            return additivity(spec, inputs[0], inputs[1])
        case Axiom.homogeneous:
            if alpha is None:
                raise ValueError("homogeneity trials need a scalar per trial")
            return homogeneity(spec, alpha, inputs[0])
        case Axiom.monotone:
            return monotonicity(spec, inputs[0], inputs[1])
        case Axiom.measure_preserving:
            return preservation(spec, inputs[0])
        case Axiom.bounded if len(inputs) == 1:
            if constant is None:
                raise ValueError("a bound check needs the bound constant")
            return boundedness(spec, inputs[0], constant, tolerance)
        case Axiom.bounded:
            return divergence(spec, inputs[0], inputs[1], tolerance)
        case Axiom.continuous if len(inputs) == 2:
            if constant is None:
                raise ValueError("a modulus check needs the modulus")
            return lipschitz(spec, inputs[0], inputs[1], constant)
        case Axiom.continuous:
            return convergence(spec, inputs[0], inputs[1], inputs[2], tolerance)
    raise ValueError(f"unknown axiom {axiom!r}")
