"""Defines the subcommands of the command line.

Each command takes a parsed RunManifest and returns the JSON document it
produces; the entry point writes it out and maps errors to exit codes.
"""

import collections
import json
import pathlib

import structlog

from transfun.internal.codec import (
    dump_document,
    measure_from_document,
    measure_to_document,
    parse_document,
    space_from_document,
    space_to_document,
    spec_adapter,
    spec_from_document,
    spec_to_document,
)
from transfun.internal.errors import DocumentError
from transfun.internal.measures import Measure, Space
from transfun.internal.models import (
    Command,
    InfoSummary,
    MeasureDocument,
    RunManifest,
    SpaceDocument,
)
from transfun.internal.properties import check_all, infer_properties
from transfun.internal.transfunctions import (
    Transfunction,
    apply,
    compose,
    depth,
    is_linear,
    node_count,
    walk,
)

log = structlog.stdlib.get_logger()


def _read(path: str) -> str:
    try:
        return pathlib.Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DocumentError(f"cannot read {path}: {e}") from e


def load_space(path: str) -> Space:
    """Reads a space document."""
    return space_from_document(parse_document(_read(path), SpaceDocument, path))


def load_measure(path: str, space: Space) -> Measure:
    """Reads a measure document and resolves it against ``space``."""
    return measure_from_document(parse_document(_read(path), MeasureDocument, path), space)


def load_spec(path: str) -> Transfunction:
    """Reads and validates a transfunction spec document."""
    return spec_from_document(parse_document(_read(path), spec_adapter, path))


def _require_inputs(manifest: RunManifest, count: int) -> None:
    if len(manifest.inputs) != count:
        raise DocumentError(
            f"{manifest.command.value} takes {count} input file(s), got {len(manifest.inputs)}",
        )


def cmd_apply(manifest: RunManifest) -> str:
    """Applies a spec to a measure and returns the image measure document."""
    _require_inputs(manifest, 2)
    spec_path, measure_path = manifest.inputs
    spec = load_spec(spec_path)
    space = load_space(manifest.space) if manifest.space else spec.domain
    mu = load_measure(measure_path, space)
    return dump_document(measure_to_document(apply(spec, mu)))


def cmd_check(manifest: RunManifest) -> str:
    """Runs static inference and randomized trials; returns the report document."""
    _require_inputs(manifest, 1)
    spec = load_spec(manifest.inputs[0])
    axioms = None if manifest.axiom is None else [manifest.axiom]
    report = check_all(spec, manifest.config, axioms)
    return dump_document(report)


def cmd_infer(manifest: RunManifest) -> str:
    """Returns the static-only report document."""
    _require_inputs(manifest, 1)
    report = infer_properties(load_spec(manifest.inputs[0]), manifest.config)
    return dump_document(report)


def cmd_compose(manifest: RunManifest) -> str:
    """Composes two specs, outer first, into one spec document."""
    _require_inputs(manifest, 2)
    outer, inner = (load_spec(path) for path in manifest.inputs)
    return dump_document(spec_to_document(compose(outer, inner)))


def _summarize_spec(spec: Transfunction) -> InfoSummary:
    kinds = collections.Counter(node.kind for _, node in walk(spec))
    return InfoSummary(
        document="spec",
        domain=space_to_document(spec.domain),
        codomain=space_to_document(spec.codomain),
        nodes=node_count(spec),
        depth=depth(spec),
        linear=is_linear(spec),
        kinds=dict(sorted(kinds.items())),
    )


def _summarize_measure(doc: MeasureDocument, space: Space | None) -> InfoSummary:
    if space is not None:
        mu = measure_from_document(doc, space)
        return InfoSummary(
            document="measure",
            id=space.id,
            atoms=len(space),
            total_mass=float(mu.masses.sum()),
            support=len(mu.support()),
        )
    # without a space, only the listed labels are known
    values = list(doc.masses.values())
    return InfoSummary(
        document="measure",
        id=doc.space,
        atoms=len(values),
        total_mass=float(sum(values)),
        support=sum(1 for v in values if v > 0),
    )


def cmd_info(manifest: RunManifest) -> str:
    """Summarizes a space, measure or spec document."""
    _require_inputs(manifest, 1)
    path = manifest.inputs[0]
    text = _read(path)
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path}: not valid JSON: {e.msg}") from e
    if not isinstance(raw, dict):
        raise DocumentError(f"{path}: expected a JSON object")

    if "kind" in raw:
        summary = _summarize_spec(load_spec(path))
    elif "atoms" in raw:
        space = load_space(path)
        summary = InfoSummary(document="space", id=space.id, atoms=len(space))
    else:
        doc = parse_document(text, MeasureDocument, path)
        space = load_space(manifest.space) if manifest.space else None
        summary = _summarize_measure(doc, space)
    return dump_document(summary)


_COMMANDS = {
    Command.apply: cmd_apply,
    Command.check: cmd_check,
    Command.infer: cmd_infer,
    Command.compose: cmd_compose,
    Command.info: cmd_info,
}


def dispatch(manifest: RunManifest) -> str:
    """Runs the command a manifest names."""
    log.debug("running command", command=manifest.command.value, inputs=manifest.inputs)
    return _COMMANDS[manifest.command](manifest)
