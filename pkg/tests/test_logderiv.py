from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arrsyz.algebra import Poly
from arrsyz.arrangement import Arrangement, ArrangementError, NotEssentialError, from_strings
from arrsyz.logderiv import (
    Derivation,
    EulerMultipleError,
    derivation_space,
    derivation_to_syzygy,
    euler_derivation,
    is_logarithmic,
    minimal_quadratic,
    syzygy_residual,
)

from conftest import BOOLEAN, BRAID, GENERIC5
from oracles import derivation_dim

F = Fraction

ORACLE_CASES = [
    (BRAID, 1),
    (BRAID, 2),
    (BOOLEAN, 1),
    (BOOLEAN, 2),
    (GENERIC5, 1),
    (GENERIC5, 2),
    (["x", "y", "z", "x+y", "y+2z"], 2),
    (["x", "y"], 0),
    (["x", "y", "x+y"], 1),
]


@pytest.mark.parametrize("forms, d", ORACLE_CASES)
def test_derivation_space_dim_matches_oracle(forms, d):
    names = ("x", "y", "z")[: 2 if all("z" not in f for f in forms) else 3]
    a = from_strings(forms, names)
    space = derivation_space(a, d)
    assert space.dim == derivation_dim(a.forms, d)
    for th in space.basis:
        assert is_logarithmic(th, a)


@pytest.mark.parametrize(
    "forms, dims",
    [(BRAID, (1, 4, 3)), (BOOLEAN, (3, 9, 9)), (GENERIC5, (1, 3, 3)), (["x", "y", "z", "x+y", "y+2z"], (1, 5, 3))],
)
def test_minimal_quadratic_dims(forms, dims):
    r = minimal_quadratic(from_strings(forms))
    assert r.dims == dims
    assert r.exists == (dims[1] > dims[2])


def test_boolean_plane_degree_zero_is_empty():
    assert derivation_space(from_strings(["x", "y"], ("x", "y")), 0).dim == 0


def test_euler_is_logarithmic_and_scales_f():
    a = from_strings(BRAID)
    e = euler_derivation(3)
    assert is_logarithmic(e, a)
    f = a.defining_polynomial()
    assert e.apply(f) == f.scale(a.n)


def test_non_logarithmic_derivation():
    a = from_strings(BRAID)
    dx = Derivation(0, (Poly.constant(3, 1), Poly.zero(3), Poly.zero(3)))
    assert not is_logarithmic(dx, a)


def test_braid_minimal_quadratic_is_logarithmic_and_new():
    r = minimal_quadratic(from_strings(BRAID))
    assert r.theta is not None and r.theta.degree == 2
    assert is_logarithmic(r.theta, from_strings(BRAID))


def test_syzygy_identity_braid():
    a = from_strings(BRAID)
    theta = minimal_quadratic(a).theta
    syz, p = derivation_to_syzygy(theta, a)
    assert theta.apply(a.defining_polynomial()) == p * a.defining_polynomial()
    assert syzygy_residual(syz, a).is_zero()


def test_euler_multiple_has_no_syzygy():
    a = from_strings(BRAID)
    with pytest.raises(EulerMultipleError):
        derivation_to_syzygy(euler_derivation(3).times(Poly.variable(3, 0)), a)


def test_minimal_quadratic_requires_essential():
    with pytest.raises(NotEssentialError):
        minimal_quadratic(from_strings(["x", "y", "x+y"]))


def test_derivation_vector_roundtrip():
    theta = minimal_quadratic(from_strings(BRAID)).theta
    assert Derivation.from_vector(3, 2, theta.to_vector()) == theta


forms3 = st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any)
nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(lambda q: q != 0)


@given(st.lists(forms3, min_size=3, max_size=6), st.data())
@settings(max_examples=40, deadline=None)
def test_dims_invariant_under_rescale_and_permutation(forms, data):
    try:
        a = Arrangement(tuple(tuple(F(c) for c in f) for f in forms))
    except ArrangementError:
        return
    if not a.is_essential():
        return
    scalars = data.draw(st.lists(nonzero, min_size=a.n, max_size=a.n))
    perm = data.draw(st.permutations(range(a.n)))
    b = a.rescaled(scalars).permuted(perm)
    assert minimal_quadratic(a).dims == minimal_quadratic(b).dims


@given(st.lists(forms3, min_size=4, max_size=6))
@settings(max_examples=30, deadline=None)
def test_every_quadratic_basis_vector_gives_a_syzygy(forms):
    try:
        a = Arrangement(tuple(tuple(F(c) for c in f) for f in forms))
    except ArrangementError:
        return
    if not a.is_essential():
        return
    for th in derivation_space(a, 2).basis:
        try:
            syz, _ = derivation_to_syzygy(th, a)
        except EulerMultipleError:
            continue
        assert syzygy_residual(syz, a).is_zero()
