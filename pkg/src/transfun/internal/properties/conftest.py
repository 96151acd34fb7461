import itertools

import pytest

from transfun.internal.measures import Space
from transfun.internal.models import CheckConfig
from transfun.internal.transfunctions import SemigroupProduct, identity


@pytest.fixture()
def x() -> Space:
    return Space(id="X", atoms=("x1", "x2"))


@pytest.fixture()
def y() -> Space:
    return Space(id="Y", atoms=("y1", "y2"))


@pytest.fixture()
def z3() -> Space:
    return Space(id="Z3", atoms=("0", "1", "2"))


@pytest.fixture()
def convolution(z3: Space) -> SemigroupProduct:
    op = {(u, v): str((int(u) + int(v)) % 3) for u, v in itertools.product(z3.atoms, repeat=2)}
    return SemigroupProduct(identity(z3), identity(z3), op)


@pytest.fixture()
def cfg() -> CheckConfig:
    return CheckConfig(trials=200, seed=42)
