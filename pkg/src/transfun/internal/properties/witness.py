"""Building counterexamples out of a failed batch of trials."""

import sys

import numpy as np

from transfun.internal.codec import measure_to_document
from transfun.internal.measures import Measure
from transfun.internal.models import Witness
from transfun.internal.transfunctions import Transfunction


def build_witness(
    spec: Transfunction,
    inputs: list[np.ndarray],
    outputs: list[np.ndarray],
    alpha: np.ndarray | None,
    violation: np.ndarray,
    row: int,
) -> Witness:
    """Freezes row ``row`` of a trial batch into a replayable witness."""
    return Witness(
        inputs=[measure_to_document(Measure(spec.domain, m[row])) for m in inputs],
        outputs=[measure_to_document(Measure(spec.codomain, m[row])) for m in outputs],
        alpha=None if alpha is None else float(alpha[row]),
        violation=min(float(violation[row]), sys.float_info.max),
    )
