from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from arrsyz.algebra import Matrix, NotDivisibleError, Poly, monomials, nullspace, product, rref
from arrsyz.arrangement import from_strings
from arrsyz.classify3 import multiple_points
from arrsyz.cubic import evaluation_matrix

F = Fraction
x, y, z = (Poly.variable(3, i) for i in range(3))


def test_rref_identity():
    red, piv = rref(Matrix.identity(3))
    assert red == Matrix.identity(3)
    assert piv == [0, 1, 2]


def test_rref_rank_one():
    red, piv = rref(Matrix([[1, 2], [2, 4]]))
    assert red == Matrix([[1, 2], [0, 0]])
    assert piv == [0]


def test_rref_generic_five_evaluation_matrix_full_rank():
    pts = [mp.point for mp in multiple_points(from_strings(["x", "y", "z", "x+y+z", "x+2y+3z"]))]
    m = evaluation_matrix(pts)
    assert (m.rows, m.cols) == (10, 10)
    assert len(rref(m)[1]) == 10
    # independent oracle: sympy determinant is nonzero
    assert sp.Matrix([[sp.Rational(v.numerator, v.denominator) for v in r] for r in m.entries]).det() != 0


def test_nullspace_small_cases():
    assert nullspace(Matrix.identity(2)) == []
    (v,) = nullspace(Matrix([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_inverse_and_det():
    m = Matrix([[2, 1, 0], [0, 1, 3], [1, 0, 1]])
    assert m @ m.inverse() == Matrix.identity(3)
    assert m.det() == sp.Matrix([[2, 1, 0], [0, 1, 3], [1, 0, 1]]).det()
    with pytest.raises(ZeroDivisionError):
        Matrix([[1, 2], [2, 4]]).inverse()


matrices = st.integers(1, 5).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=1, max_size=5)
)


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_nullspace_vectors_are_exact_and_rank_nullity(rows):
    m = Matrix(rows)
    basis = nullspace(m)
    for v in basis:
        assert all(c == 0 for c in m @ v)
    assert m.rank() + len(basis) == m.cols


def test_partial_derivative_and_division():
    assert (x * y * z).diff(0) == y * z
    assert (x * x + x * y).divide_exact(x) == x + y
    with pytest.raises(NotDivisibleError):
        (x * x + y * y).divide_exact(x)


def test_braid_partial_at_ones_matches_sympy_oracle():
    X, Y, Z = sp.symbols("x y z")
    oracle = sp.diff(sp.expand(X * Y * Z * (X + Y + Z) * (X + Z) * (Y + Z)), X).subs({X: 1, Y: 1, Z: 1})
    assert oracle == 22
    Fp = product([x, y, z, x + y + z, x + z, y + z], 3)
    assert Fp.diff(0).evaluate((1, 1, 1)) == 22


def test_grlex_printing():
    p = y * z + x * x - z * z * F(1, 2)
    assert p.format() == "x^2 + y*z - 1/2*z^2"
    assert [m for m in monomials(3, 2)] == [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2)]


def test_non_homogeneous_rejected():
    with pytest.raises(ValueError):
        Poly(2, {(1, 0): 1, (0, 0): 1})


linear_forms = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)


@given(st.lists(linear_forms, min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_euler_identity(forms):
    p = product([Poly.linear(f) for f in forms], 3)
    lhs = Poly.zero(3)
    for i in range(3):
        lhs = lhs + Poly.variable(3, i) * p.diff(i)
    assert lhs == p.scale(len(forms))


@given(st.lists(linear_forms, min_size=1, max_size=3), st.lists(linear_forms, min_size=1, max_size=3))
@settings(max_examples=60, deadline=None)
def test_divide_exact_roundtrip(fs, gs):
    p = product([Poly.linear(f) for f in fs], 3)
    q = product([Poly.linear(g) for g in gs], 3)
    assert (p * q).divide_exact(q) == p


def test_substitute_linear():
    # (x + y)^2 with x -> y, y -> z
    p = (x + y) ** 2
    assert p.substitute_linear([y, z, x]) == (y + z) ** 2
