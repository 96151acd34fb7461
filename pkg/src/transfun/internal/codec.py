"""Conversion between JSON documents and in-memory values."""

import hashlib
import json
from typing import Any

import numpy as np
from pydantic import BaseModel, TypeAdapter, ValidationError

from transfun.internal.errors import DocumentError, SpaceMismatch, TransfunError
from transfun.internal.measures import Measure, Space, make_measure
from transfun.internal.models import (
    ComposeDocument,
    CountableMatrixDocument,
    InputMultiplierDocument,
    KernelDocument,
    MatrixDocument,
    MaxWithDocument,
    MeasureDocument,
    OutputMultiplierDocument,
    PostProjectDocument,
    PreProjectDocument,
    PushforwardDocument,
    SemigroupProductDocument,
    SpaceDocument,
    SpecDocument,
)
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
from transfun.internal.transfunctions.nodes import child_path

spec_adapter: TypeAdapter[Any] = TypeAdapter(SpecDocument)


def parse_document(text: str, model: type[BaseModel] | TypeAdapter[Any], source: str) -> Any:
    """Parses JSON text against a model, raising DocumentError on any mismatch."""
    try:
        if isinstance(model, TypeAdapter):
            return model.validate_json(text)
        return model.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"])
        raise DocumentError(f"{source}: {first['msg']} at {where or 'top level'}") from e


def dump_document(document: BaseModel) -> str:
    """Serializes a document model to indented JSON."""
    return document.model_dump_json(indent=2, by_alias=True, exclude_none=True)


# --- spaces and measures ----------------------------------------------------


def space_to_document(space: Space) -> SpaceDocument:
    return SpaceDocument(id=space.id, atoms=list(space.atoms))


def space_from_document(doc: SpaceDocument) -> Space:
    return Space(id=doc.id, atoms=tuple(doc.atoms))


def measure_to_document(mu: Measure) -> MeasureDocument:
    return MeasureDocument(space=mu.space.id, masses=dict(mu.items()))


def measure_from_document(doc: MeasureDocument, space: Space) -> Measure:
    """Resolves a measure document against the space it names."""
    if doc.space != space.id:
        raise SpaceMismatch(f"measure names space {doc.space!r} but {space.id!r} was expected")
    return make_measure(space, doc.masses.items())


# --- constructor trees --------------------------------------------------------


def _pair_key(key: str, left: Space, right: Space) -> tuple[str, str]:
    """Splits a "u,v" key at the one comma that leaves a left and a right atom.

    Labels may contain commas themselves, so every split is tried. A key
    that matches no split is returned as split at its only comma, leaving
    the node to report the unknown atom.
    """
    cuts = [i for i, ch in enumerate(key) if ch == ","]
    if not cuts:
        raise DocumentError(f"pair key {key!r} must have the form 'u,v'")
    splits = [(key[:i], key[i + 1 :]) for i in cuts]
    matching = [(u, v) for u, v in splits if u in left and v in right]
    if len(matching) == 1:
        return matching[0]
    if len(matching) > 1:
        raise DocumentError(f"pair key {key!r} splits into atoms in more than one way")
    if len(splits) == 1:
        return splits[0]
    raise DocumentError(f"pair key {key!r} does not split into a pair of atoms")


def spec_from_document(doc: Any, path: str = "/") -> Transfunction:
    """Builds a validated constructor tree; errors name the offending node path."""
    try:
        return _build(doc, path)
    except TransfunError as err:
        err.locate(path)
        raise


def _build(doc: Any, path: str) -> Transfunction:
    match doc:
        case PushforwardDocument():
            return Pushforward(
                space_from_document(doc.domain),
                space_from_document(doc.codomain),
                doc.mapping,
            )
        case MatrixDocument():
            domain, codomain = space_from_document(doc.domain), space_from_document(doc.codomain)
            if any(len(row) != len(domain) for row in doc.entries):
                raise DocumentError(f"matrix rows must each have {len(domain)} entries")
            entries = np.array(doc.entries, dtype=float).reshape(len(doc.entries), len(domain))
            return Matrix(domain, codomain, entries)
        case CountableMatrixDocument():
            domain, codomain = space_from_document(doc.domain), space_from_document(doc.codomain)
            columns = {
                label: measure_from_document(column, codomain)
                for label, column in doc.columns.items()
            }
            return CountableMatrix(domain, codomain, columns, doc.bound)
        case KernelDocument():
            domain, codomain = space_from_document(doc.domain), space_from_document(doc.codomain)
            phi = {_pair_key(key, domain, codomain): value for key, value in doc.phi.items()}
            return Kernel(domain, codomain, phi, measure_from_document(doc.rho, codomain))
        case OutputMultiplierDocument():
            return OutputMultiplier(doc.f, spec_from_document(doc.inner, child_path(path, 0)))
        case InputMultiplierDocument():
            return InputMultiplier(spec_from_document(doc.inner, child_path(path, 0)), doc.g)
        case MaxWithDocument():
            inner = spec_from_document(doc.inner, child_path(path, 0))
            return MaxWith(inner, measure_from_document(doc.rho, inner.codomain))
        case PreProjectDocument():
            return PreProject(
                frozenset(doc.atoms),
                spec_from_document(doc.inner, child_path(path, 0)),
            )
        case PostProjectDocument():
            return PostProject(
                frozenset(doc.atoms),
                spec_from_document(doc.inner, child_path(path, 0)),
            )
        case SemigroupProductDocument():
            left = spec_from_document(doc.left, child_path(path, 0))
            right = spec_from_document(doc.right, child_path(path, 1))
            atoms = left.codomain
            op = {_pair_key(key, atoms, atoms): value for key, value in doc.op.items()}
            return SemigroupProduct(left, right, op)
        case ComposeDocument():
            return Compose(
                outer=spec_from_document(doc.outer, child_path(path, 0)),
                inner=spec_from_document(doc.inner, child_path(path, 1)),
            )
        case _:
            raise DocumentError(f"unsupported spec document {type(doc).__name__}")


def _density(space: Space, weights: np.ndarray) -> dict[str, float]:
    return {label: float(w) for label, w in zip(space.atoms, weights, strict=True)}


def spec_to_document(spec: Transfunction) -> Any:
    """Serializes a constructor tree into its document model."""
    match spec:
        case Pushforward():
            return PushforwardDocument(
                domain=space_to_document(spec.domain),
                codomain=space_to_document(spec.codomain),
                mapping={x: spec.mapping[x] for x in spec.domain.atoms},
            )
        case Matrix():
            return MatrixDocument(
                domain=space_to_document(spec.domain),
                codomain=space_to_document(spec.codomain),
                entries=spec.entries.tolist(),
            )
        case CountableMatrix():
            return CountableMatrixDocument(
                domain=space_to_document(spec.domain),
                codomain=space_to_document(spec.codomain),
                columns={x: measure_to_document(spec.columns[x]) for x in spec.domain.atoms},
                bound=spec.bound,
            )
        case Kernel():
            return KernelDocument(
                domain=space_to_document(spec.domain),
                codomain=space_to_document(spec.codomain),
                phi={
                    f"{x},{y}": float(spec.weights[i, j])
                    for i, x in enumerate(spec.domain.atoms)
                    for j, y in enumerate(spec.codomain.atoms)
                    if spec.weights[i, j] != 0
                },
                rho=measure_to_document(spec.rho),
            )
        case OutputMultiplier():
            return OutputMultiplierDocument(
                f=_density(spec.codomain, spec.density),
                inner=spec_to_document(spec.inner),
            )
        case InputMultiplier():
            return InputMultiplierDocument(
                inner=spec_to_document(spec.inner),
                g=_density(spec.domain, spec.density),
            )
        case MaxWith():
            return MaxWithDocument(
                inner=spec_to_document(spec.inner),
                rho=measure_to_document(spec.rho),
            )
        case PreProject():
            return PreProjectDocument(
                atoms=[x for x in spec.domain.atoms if x in spec.atoms],
                inner=spec_to_document(spec.inner),
            )
        case PostProject():
            return PostProjectDocument(
                atoms=[y for y in spec.codomain.atoms if y in spec.atoms],
                inner=spec_to_document(spec.inner),
            )
        case SemigroupProduct():
            atoms = spec.codomain.atoms
            return SemigroupProductDocument(
                left=spec_to_document(spec.left),
                right=spec_to_document(spec.right),
                op={f"{u},{v}": spec.op[(u, v)] for u in atoms for v in atoms},
            )
        case Compose():
            return ComposeDocument(
                outer=spec_to_document(spec.outer),
                inner=spec_to_document(spec.inner),
            )
        case _:
            raise DocumentError(f"cannot serialize node type {type(spec).__name__}")


def spec_digest(spec: Transfunction) -> str:
    """SHA-256 of the canonical (sorted, compact) spec document."""
    doc = spec_to_document(spec).model_dump(mode="json", by_alias=True)
    canonical = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()
