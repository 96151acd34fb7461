"""Defines the document models, enumerations and report structures."""

from enum import Enum
from typing import Annotated, Literal, Union

from pydantic import BaseModel, ConfigDict, Field


class _Document(BaseModel):
    """Strict base: unknown fields and non-finite numbers are rejected."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False, populate_by_name=True)


class SpaceDocument(_Document):
    """A discrete space: an id and its ordered atom labels."""

    id: str
    atoms: list[str]


class MeasureDocument(_Document):
    """A measure referencing its space by id; missing labels have mass 0."""

    space: str
    masses: dict[str, float] = Field(default_factory=dict)


class PushforwardDocument(_Document):
    kind: Literal["pushforward"] = "pushforward"
    domain: SpaceDocument
    codomain: SpaceDocument
    mapping: dict[str, str] = Field(alias="map")


class MatrixDocument(_Document):
    kind: Literal["matrix"] = "matrix"
    domain: SpaceDocument
    codomain: SpaceDocument
    entries: list[list[float]] = Field(
        json_schema_extra={"description": "Row-major; rows are codomain atoms."},
    )


class CountableMatrixDocument(_Document):
    kind: Literal["countable_matrix"] = "countable_matrix"
    domain: SpaceDocument
    codomain: SpaceDocument
    columns: dict[str, MeasureDocument]
    bound: float


class KernelDocument(_Document):
    kind: Literal["kernel"] = "kernel"
    domain: SpaceDocument
    codomain: SpaceDocument
    phi: dict[str, float] = Field(
        json_schema_extra={"description": "Keyed 'x,y'; missing pairs are 0."},
    )
    rho: MeasureDocument


class OutputMultiplierDocument(_Document):
    kind: Literal["output_multiplier"] = "output_multiplier"
    f: dict[str, float]
    inner: "SpecDocument"


class InputMultiplierDocument(_Document):
    kind: Literal["input_multiplier"] = "input_multiplier"
    inner: "SpecDocument"
    g: dict[str, float]


class MaxWithDocument(_Document):
    kind: Literal["max_with"] = "max_with"
    inner: "SpecDocument"
    rho: MeasureDocument


class PreProjectDocument(_Document):
    kind: Literal["pre_project"] = "pre_project"
    atoms: list[str]
    inner: "SpecDocument"


class PostProjectDocument(_Document):
    kind: Literal["post_project"] = "post_project"
    atoms: list[str]
    inner: "SpecDocument"


class SemigroupProductDocument(_Document):
    kind: Literal["semigroup_product"] = "semigroup_product"
    left: "SpecDocument"
    right: "SpecDocument"
    op: dict[str, str] = Field(
        json_schema_extra={"description": "Keyed 'u,v'; values are codomain labels."},
    )


class ComposeDocument(_Document):
    kind: Literal["compose"] = "compose"
    outer: "SpecDocument"
    inner: "SpecDocument"


SpecDocument = Annotated[
    Union[
        PushforwardDocument,
        MatrixDocument,
        CountableMatrixDocument,
        KernelDocument,
        OutputMultiplierDocument,
        InputMultiplierDocument,
        MaxWithDocument,
        PreProjectDocument,
        PostProjectDocument,
        SemigroupProductDocument,
        ComposeDocument,
    ],
    Field(discriminator="kind"),
]

for _model in (
    OutputMultiplierDocument,
    InputMultiplierDocument,
    MaxWithDocument,
    PreProjectDocument,
    PostProjectDocument,
    SemigroupProductDocument,
    ComposeDocument,
):
    _model.model_rebuild()


class Axiom(str, Enum):
    """The seven properties a transfunction may have.

    - weakly_additive: additive on mutually singular pairs.
    - strongly_additive: additive on all pairs.
    - homogeneous: commutes with positive scaling.
    - monotone: preserves domination.
    - measure_preserving: preserves total mass.
    - bounded: output mass at most C times input mass.
    - continuous: preserves total-variation convergence.
    """

    weakly_additive = "weakly_additive"
    strongly_additive = "strongly_additive"
    homogeneous = "homogeneous"
    monotone = "monotone"
    measure_preserving = "measure_preserving"
    bounded = "bounded"
    continuous = "continuous"


class VerdictStatus(str, Enum):
    """How a property was decided."""

    proved = "proved"
    refuted_with_witness = "refuted_with_witness"
    passed_trials = "passed_trials"
    unknown = "unknown"


class CheckConfig(BaseModel):
    """Settings of the randomized checker."""

    model_config = ConfigDict(extra="forbid", frozen=True, allow_inf_nan=False)

    trials: int = Field(1000, gt=0)
    tolerance: float = Field(1e-9, gt=0)
    seed: int = Field(0, ge=0, lt=2**64)
    max_mass: float = Field(10.0, gt=0)
    sequence_length: int = Field(20, gt=0)


class Witness(_Document):
    """A counterexample, stored with full measures so it replays without randomness.

    ``inputs`` are the trial measures, ``outputs`` the two sides that were
    compared (or the single image for mass checks), ``alpha`` the scalar of a
    homogeneity trial and ``violation`` the amount by which the law failed.
    """

    inputs: list[MeasureDocument]
    outputs: list[MeasureDocument]
    alpha: float | None = None
    violation: float


class Verdict(_Document):
    """The decision about one axiom."""

    axiom: Axiom
    status: VerdictStatus
    constant: float | None = Field(
        None,
        json_schema_extra={
            "description": "Bounded: the constant C; 0 means the map "
            "sends every measure to zero, so any positive C bounds it. "
            "Continuous: the modulus under total variation.",
        },
    )
    witness: Witness | None = None
    provenance: Literal["static", "trials", "static+trials"] = "static"


class PropertyReport(_Document):
    """All verdicts for one transfunction."""

    spec_digest: str
    config: CheckConfig
    verdicts: list[Verdict]

    def verdict(self, axiom: Axiom) -> Verdict:
        """Returns the verdict for an axiom."""
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)


class Command(str, Enum):
    """Subcommands of the command line."""

    apply = "apply"
    check = "check"
    infer = "infer"
    compose = "compose"
    info = "info"


class RunManifest(BaseModel):
    """One command-line invocation after argument parsing."""

    model_config = ConfigDict(extra="forbid")

    command: Command
    inputs: list[str]
    space: str | None = None
    axiom: Axiom | None = None
    config: CheckConfig = Field(default_factory=CheckConfig)
    output: str | None = Field(None, json_schema_extra={"description": "None means stdout."})


class InfoSummary(_Document):
    """What ``info`` reports about a document."""

    document: Literal["space", "measure", "spec"]
    id: str | None = None
    atoms: int | None = None
    total_mass: float | None = None
    support: int | None = None
    domain: SpaceDocument | None = None
    codomain: SpaceDocument | None = None
    nodes: int | None = None
    depth: int | None = None
    linear: bool | None = None
    kinds: dict[str, int] | None = None
