import json
import pathlib

import pytest

X = {"id": "X", "atoms": ["x1", "x2"]}
Y = {"id": "Y", "atoms": ["y1", "y2"]}
Z3 = {"id": "Z3", "atoms": ["0", "1", "2"]}


@pytest.fixture()
def write(tmp_path: pathlib.Path):
    """Writes a JSON document into the test directory and returns its path."""

    def _write(name: str, doc: object) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture()
def identity_spec(write) -> str:
    return write(
        "identity.json",
        {"kind": "pushforward", "domain": X, "codomain": X, "map": {"x1": "x1", "x2": "x2"}},
    )


@pytest.fixture()
def defective_matrix_spec(write) -> str:
    return write(
        "defective.json",
        {"kind": "matrix", "domain": X, "codomain": Y, "entries": [[0.5, 0.0], [0.5, 0.9]]},
    )


@pytest.fixture()
def stochastic_matrix_spec(write) -> str:
    return write(
        "stochastic.json",
        {"kind": "matrix", "domain": X, "codomain": Y, "entries": [[0.5, 0.25], [0.5, 0.75]]},
    )


@pytest.fixture()
def convolution_spec(write) -> str:
    identity = {"kind": "pushforward", "domain": Z3, "codomain": Z3, "map": {a: a for a in "012"}}
    op = {f"{u},{v}": str((int(u) + int(v)) % 3) for u in "012" for v in "012"}
    return write(
        "convolution.json",
        {"kind": "semigroup_product", "left": identity, "right": identity, "op": op},
    )
