import pytest

from transfun.internal.measures import Space


@pytest.fixture()
def z3() -> Space:
    return Space(id="Z3", atoms=("0", "1", "2"))
