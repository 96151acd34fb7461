import itertools

import numpy as np
import pytest

from transfun.internal.errors import SpaceMismatch
from transfun.internal.measures import (
    Measure,
    Space,
    dirac,
    make_measure,
    total_mass,
    zero_measure,
)
from transfun.internal.transfunctions import (
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
    apply,
    apply_masses,
    compose,
    identity,
)


def test_pushforward_sums_preimages(x, y):
    constant = Pushforward(x, y, {"x1": "y1", "x2": "y1"})

    out = apply(constant, Measure(x, [2.0, 3.0]))

    assert out.masses.tolist() == [5.0, 0.0]
    assert apply(identity(x), Measure(x, [2.0, 3.0])) == Measure(x, [2.0, 3.0])


def test_injective_pushforward_permutes_masses(x):
    swap = Pushforward(x, x, {"x1": "x2", "x2": "x1"})

    assert apply(swap, Measure(x, [2.0, 3.0])).masses.tolist() == [3.0, 2.0]


def test_matrix_application(x, y):
    stochastic = Matrix(x, y, [[0.5, 0.0], [0.5, 1.0]])
    doubling = Matrix(x, y, [[2.0, 0.0], [0.0, 2.0]])

    out = apply(stochastic, Measure(x, [2.0, 4.0]))

    assert out.masses.tolist() == [1.0, 5.0]
    assert total_mass(out) == 6.0
    assert apply(doubling, Measure(x, [1.0, 1.0])).masses.tolist() == [2.0, 2.0]


def test_countable_matrix_application(y):
    x3 = Space(id="N", atoms=("n1", "n2", "n3"))
    columns = {
        "n1": dirac(y, "y1"),
        "n2": dirac(y, "y1"),
        "n3": Measure(y, [0.25, 0.5]),
    }
    spec = CountableMatrix(x3, y, columns, bound=2.0)

    assert apply(spec, make_measure(x3, [("n3", 2.0)])).masses.tolist() == [0.5, 1.0]
    out = apply(spec, Measure(x3, [1.0, 4.0, 0.0]))
    assert out.masses.tolist() == [5.0, 0.0]


def test_kernel_application(y):
    x1 = Space(id="X1", atoms=("x1",))
    spec = Kernel(
        x1,
        y,
        {("x1", "y1"): 0.3, ("x1", "y2"): 0.7},
        Measure(y, [1.0, 1.0]),
    )

    out = apply(spec, dirac(x1, "x1", 2.0))

    assert out.masses.tolist() == pytest.approx([0.6, 1.4])
    assert apply(Kernel(x1, y, {}, Measure(y, [1.0, 1.0])), dirac(x1, "x1")) == zero_measure(y)


def test_multipliers(x, y):
    ident = Matrix(x, y, np.eye(2))

    out = apply(OutputMultiplier({"y1": 2.0, "y2": 1.0}, ident), Measure(x, [3.0, 4.0]))
    assert out.masses.tolist() == [6.0, 4.0]

    masked = InputMultiplier(identity(x), {"x1": 0.0, "x2": 1.0})
    assert apply(masked, Measure(x, [5.0, 7.0])).masses.tolist() == [0.0, 7.0]


def test_indicator_input_multiplier_matches_pre_project(x, y):
    inner = Matrix(x, y, [[0.5, 1.0], [0.5, 2.0]])
    mu = Measure(x, [3.0, 4.0])

    by_density = apply(InputMultiplier(inner, {"x1": 1.0, "x2": 0.0}), mu)
    by_projection = apply(PreProject(frozenset({"x1"}), inner), mu)

    assert by_density == by_projection


def test_max_with(x):
    rho = Measure(x, [2.0, 2.0])

    assert apply(MaxWith(identity(x), rho), Measure(x, [1.0, 3.0])).masses.tolist() == [2.0, 3.0]
    assert apply(MaxWith(identity(x), rho), zero_measure(x)) == rho
    assert apply(MaxWith(identity(x), zero_measure(x)), Measure(x, [1.0, 3.0])) == Measure(
        x,
        [1.0, 3.0],
    )


def test_projections(x):
    three = Space(id="T", atoms=("a", "b", "c"))

    out = apply(PreProject(frozenset({"a", "c"}), identity(three)), Measure(three, [2.0, 3.0, 4.0]))
    assert out.masses.tolist() == [2.0, 0.0, 4.0]

    empty = PostProject(frozenset(), identity(x))
    assert apply(empty, Measure(x, [1.0, 1.0])) == zero_measure(x)


def test_convolution(z3, convolution):
    assert apply(convolution, dirac(z3, "0")) == dirac(z3, "0")
    assert apply(convolution, Measure(z3, [1.0, 1.0, 0.0])).masses.tolist() == [1.0, 2.0, 1.0]
    assert apply(convolution, zero_measure(z3)) == zero_measure(z3)


def _cyclic_convolution(n: int) -> SemigroupProduct:
    zn = Space(id=f"Z{n}", atoms=tuple(str(k) for k in range(n)))
    op = {(u, v): str((int(u) + int(v)) % n) for u, v in itertools.product(zn.atoms, repeat=2)}
    return SemigroupProduct(identity(zn), identity(zn), op)


@pytest.mark.parametrize("n", range(2, 9))
def test_convolution_matches_double_sum(n):
    spec = _cyclic_convolution(n)
    rng = np.random.default_rng(n)

    for _ in range(100):
        masses = rng.uniform(0.0, 10.0, size=n)
        expected = [0.0] * n
        for i in range(n):
            for j in range(n):
                expected[(i + j) % n] += masses[i] * masses[j]

        out = apply(spec, Measure(spec.domain, masses))

        assert out.masses.tolist() == pytest.approx(expected, rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_convolution_scales_with_the_square(n):
    spec = _cyclic_convolution(n)
    rng = np.random.default_rng(100 + n)

    for _ in range(100):
        mu = Measure(spec.domain, rng.uniform(0.0, 10.0, size=n))
        alpha = float(rng.uniform(0.1, 5.0))

        scaled = apply(spec, Measure(spec.domain, alpha * mu.masses))

        assert scaled.masses.tolist() == pytest.approx(
            (alpha**2 * apply(spec, mu).masses).tolist(),
            rel=1e-12,
        )


def test_compose_with_identity_is_neutral(x, y):
    spec = Matrix(x, y, [[0.5, 1.0], [0.5, 2.0]])
    mu = Measure(x, [3.0, 4.0])

    assert apply(compose(identity(y), spec), mu) == apply(spec, mu)
    assert apply(compose(spec, identity(x)), mu) == apply(spec, mu)


def test_apply_names_both_spaces(x, y):
    with pytest.raises(SpaceMismatch, match="'Y'.*'X'"):
        apply(identity(x), zero_measure(y))


def test_batched_evaluation_matches_single(x, y, convolution, z3):
    spec = MaxWith(Matrix(x, y, [[0.5, 1.0], [0.5, 2.0]]), Measure(y, [1.0, 0.0]))
    batch = np.array([[1.0, 2.0], [0.0, 0.0], [3.0, 0.5]])

    out = apply_masses(spec, batch)

    for row, masses in zip(out, batch, strict=True):
        assert row.tolist() == apply(spec, Measure(x, masses)).masses.tolist()

    conv_batch = np.array([[1.0, 1.0, 0.0], [0.0, 2.0, 0.0]])
    assert apply_masses(convolution, conv_batch).tolist() == [[1.0, 2.0, 1.0], [0.0, 0.0, 4.0]]
