import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from transfun.internal.errors import (
    DimensionMismatch,
    NegativeMass,
    NegativeScalar,
    NonFinite,
    SpaceMismatch,
    UnknownAtom,
)
from transfun.internal.measures import (
    Measure,
    Space,
    add,
    dirac,
    evaluate,
    isclose,
    leq,
    make_measure,
    measure_max,
    multiply_density,
    mutually_singular,
    normalize,
    product,
    project,
    scale,
    setwise_distance,
    total_mass,
    tv_distance,
    zero_measure,
)

Z3 = Space(id="Z3", atoms=("0", "1", "2"))


def measures_on(space: Space, max_mass: float = 100.0) -> st.SearchStrategy[Measure]:
    mass = st.floats(min_value=0.0, max_value=max_mass, allow_nan=False, allow_infinity=False)
    return st.lists(mass, min_size=len(space), max_size=len(space)).map(
        lambda masses: Measure(space, masses),
    )


def test_measure_is_read_only(z3):
    mu = Measure(z3, [1.0, 2.0, 0.0])

    with pytest.raises(ValueError):
        mu.masses[0] = 5.0


def test_measure_validation(z3):
    with pytest.raises(NegativeMass):
        Measure(z3, [1.0, -0.5, 0.0])
    with pytest.raises(NonFinite):
        Measure(z3, [1.0, math.inf, 0.0])
    with pytest.raises(NonFinite):
        Measure(z3, [math.nan, 0.0, 0.0])
    with pytest.raises(DimensionMismatch):
        Measure(z3, [1.0, 2.0])


def test_make_measure_adds_repeated_labels(z3):
    mu = make_measure(z3, [("0", 1.0), ("2", 0.5), ("0", 2.0)])

    assert mu.masses.tolist() == [3.0, 0.0, 0.5]
    assert dict(mu.items()) == {"0": 3.0, "2": 0.5}
    assert mu.support() == frozenset({"0", "2"})


def test_make_measure_rejects_unknown_labels(z3):
    with pytest.raises(UnknownAtom, match="'7'"):
        make_measure(z3, [("7", 1.0)])


def test_evaluate_and_total_mass(z3):
    mu = Measure(z3, [1.0, 2.0, 4.0])

    assert evaluate(mu, {"0", "2"}) == 5.0
    assert evaluate(mu, set()) == 0.0
    assert total_mass(mu) == 7.0
    assert evaluate(mu, z3.atoms) == total_mass(mu)


def test_scale(z3):
    mu = Measure(z3, [1.0, 2.0, 4.0])

    assert scale(0.5, mu).masses.tolist() == [0.5, 1.0, 2.0]
    assert scale(0.0, mu) == zero_measure(z3)
    with pytest.raises(NegativeScalar):
        scale(-1.0, mu)
    with pytest.raises(NonFinite):
        scale(math.nan, mu)


def test_operations_reject_mixed_spaces(z3):
    other = Space(id="Z2", atoms=("0", "1"))

    with pytest.raises(SpaceMismatch, match="'Z3'.*'Z2'"):
        add(zero_measure(z3), zero_measure(other))
    with pytest.raises(SpaceMismatch):
        tv_distance(zero_measure(z3), zero_measure(other))


def test_leq_and_singularity(z3):
    small = Measure(z3, [1.0, 0.0, 1.0])
    big = Measure(z3, [2.0, 1.0, 1.0])

    assert leq(small, big)
    assert not leq(big, small)
    assert mutually_singular(dirac(z3, "0"), dirac(z3, "1"))
    assert not mutually_singular(small, big)


def test_project(z3):
    mu = Measure(z3, [1.0, 2.0, 4.0])

    assert project(mu, {"1", "2"}).masses.tolist() == [0.0, 2.0, 4.0]
    assert project(mu, set()) == zero_measure(z3)


def test_product_masses():
    x = Space(id="X", atoms=("a", "b"))
    y = Space(id="Y", atoms=("c", "d"))

    joint = product(Measure(x, [1.0, 2.0]), Measure(y, [3.0, 0.5]))

    assert joint.space.id == "XxY"
    assert joint.masses.tolist() == [3.0, 0.5, 6.0, 1.0]
    assert total_mass(joint) == 3.0 * 3.5


def test_multiply_density(z3):
    mu = Measure(z3, [1.0, 2.0, 0.0])

    # the atom without mass needs no density value
    out = multiply_density({"0": 3.0, "1": 0.5}, mu)

    assert out.masses.tolist() == [3.0, 1.0, 0.0]
    with pytest.raises(UnknownAtom, match="'1'"):
        multiply_density({"0": 1.0}, mu)
    with pytest.raises(NegativeMass):
        multiply_density({"0": -1.0, "1": 1.0}, mu)


def test_measure_max(z3):
    nu = Measure(z3, [1.0, 5.0, 0.0])
    rho = Measure(z3, [2.0, 1.0, 0.0])

    assert measure_max(nu, rho).masses.tolist() == [2.0, 5.0, 0.0]


def test_distances(z3):
    mu = Measure(z3, [1.0, 2.0, 0.0])
    nu = Measure(z3, [0.0, 3.0, 1.0])

    assert tv_distance(mu, nu) == 3.0
    assert setwise_distance(mu, nu) == 2.0
    assert tv_distance(mu, mu) == 0.0


def test_normalize(z3):
    mu = Measure(z3, [1.0, 3.0, 0.0])

    assert normalize(mu).masses.tolist() == [0.25, 0.75, 0.0]
    with pytest.raises(NonFinite):
        normalize(zero_measure(z3))


def test_isclose(z3):
    mu = Measure(z3, [1.0, 2.0, 0.0])

    assert isclose(mu, Measure(z3, [1.0 + 1e-12, 2.0, 0.0]), tolerance=1e-9)
    assert not isclose(mu, Measure(z3, [1.1, 2.0, 0.0]), tolerance=1e-9)


@given(measures_on(Z3), measures_on(Z3))
def test_add_is_commutative(mu, nu):
    assert add(mu, nu) == add(nu, mu)


@given(measures_on(Z3), measures_on(Z3), measures_on(Z3))
def test_add_is_associative(a, b, c):
    left = add(add(a, b), c).masses
    right = add(a, add(b, c)).masses

    assert np.allclose(left, right, rtol=1e-12, atol=0.0)


@given(measures_on(Z3), measures_on(Z3), st.floats(min_value=0.0, max_value=1e3))
def test_scale_distributes_over_add(mu, nu, alpha):
    left = scale(alpha, add(mu, nu)).masses
    right = add(scale(alpha, mu), scale(alpha, nu)).masses

    assert np.allclose(left, right, rtol=1e-12, atol=1e-12)


@given(measures_on(Z3), measures_on(Z3))
def test_leq_is_antisymmetric(mu, nu):
    above = add(mu, nu)

    assert leq(mu, mu)
    if leq(above, mu):
        assert above == mu
    if leq(mu, nu) and leq(nu, mu):
        assert mu == nu


@given(measures_on(Z3), measures_on(Z3), measures_on(Z3))
def test_leq_is_transitive(a, d1, d2):
    b = add(a, d1)
    c = add(b, d2)

    assert leq(a, b)
    assert leq(b, c)
    assert leq(a, c)


@given(measures_on(Z3), measures_on(Z3))
def test_tv_is_symmetric_and_separates(mu, nu):
    assert tv_distance(mu, nu) == tv_distance(nu, mu)
    assert tv_distance(mu, mu) == 0.0
    assert (tv_distance(mu, nu) == 0.0) == (mu == nu)


@given(measures_on(Z3), measures_on(Space(id="P", atoms=("p", "q"))))
def test_product_mass_is_the_product_of_masses(mu, nu):
    expected = total_mass(mu) * total_mass(nu)

    assert total_mass(product(mu, nu)) == pytest.approx(expected, rel=1e-12, abs=1e-300)


@given(measures_on(Z3), st.sets(st.sampled_from(Z3.atoms)))
def test_mass_adds_over_singular_pairs(mu, s):
    inside = project(mu, s)
    outside = project(mu, set(Z3.atoms) - s)

    assert mutually_singular(inside, outside)
    assert total_mass(add(inside, outside)) == pytest.approx(
        total_mass(inside) + total_mass(outside),
        rel=1e-12,
        abs=1e-300,
    )


@given(measures_on(Z3), measures_on(Z3))
def test_measure_max_is_least_upper_bound(mu, nu):
    joined = measure_max(mu, nu)

    assert leq(mu, joined)
    assert leq(nu, joined)
    assert leq(joined, add(mu, nu))


@given(measures_on(Z3), st.floats(min_value=0.0, max_value=1e3))
def test_scale_is_homogeneous_in_mass(mu, alpha):
    assert total_mass(scale(alpha, mu)) == pytest.approx(alpha * total_mass(mu), rel=1e-12)


@given(measures_on(Z3), measures_on(Z3), measures_on(Z3))
def test_tv_triangle_inequality(a, b, c):
    assert tv_distance(a, c) <= tv_distance(a, b) + tv_distance(b, c) + 1e-9


@given(measures_on(Z3), measures_on(Z3))
def test_setwise_distance_is_between_half_and_full_tv(mu, nu):
    d = setwise_distance(mu, nu)
    tv = tv_distance(mu, nu)

    assert tv / 2 - 1e-9 <= d <= tv + 1e-9


@given(measures_on(Z3), st.sets(st.sampled_from(Z3.atoms)))
def test_project_is_idempotent(mu, s):
    once = project(mu, s)

    assert project(once, s) == once
    assert leq(once, mu)


def test_items_skip_zero_masses(z3):
    mu = Measure(z3, np.array([0.0, 0.0, 2.5]))

    assert list(mu.items()) == [("2", 2.5)]
    assert mu.mass_of("0") == 0.0
