from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from arrsyz.algebra import Poly
from arrsyz.arrangement import (
    Arrangement,
    ArrangementError,
    NotEssentialError,
    arrangement_from_json,
    from_strings,
    normalize_coordinates,
    parse_arrangement,
    parse_linear_form,
)

from conftest import BRAID
from oracles import defining_polynomial

F = Fraction
NAMES = ("x", "y", "z")


@pytest.mark.parametrize(
    "text, coeffs",
    [
        ("x", (1, 0, 0)),
        ("2x - 1/3y + z", (2, F(-1, 3), 1)),
        ("3*x", (3, 0, 0)),
        ("y/2", (0, F(1, 2), 0)),
        ("-z + x", (1, 0, -1)),
        ("x + y + x", (2, 1, 0)),
    ],
)
def test_parse_linear_form(text, coeffs):
    assert parse_linear_form(text, NAMES) == tuple(F(c) for c in coeffs)


@pytest.mark.parametrize("text", ["x + q", "2", "x +", "x ^ 2", ""])
def test_parse_linear_form_rejects(text):
    with pytest.raises(ArrangementError):
        parse_linear_form(text, NAMES)


def test_parse_text_file_with_comments():
    a = parse_arrangement("# braid\nvars: x, y, z\nx\ny\n\nz  # coordinate\nx+y+z\nx+z\ny+z\n")
    assert a == from_strings(BRAID)
    assert a.n == 6 and a.k == 3


def test_parse_json():
    a = parse_arrangement('{"vars": ["x", "y"], "forms": [["1", "0"], ["1/2", "-1"]]}')
    assert a.forms == ((1, 0), (F(1, 2), -1))
    assert arrangement_from_json(a.to_json()) == a


def test_duplicate_and_zero_forms_rejected():
    with pytest.raises(ArrangementError):
        from_strings(["x", "2x"])
    with pytest.raises(ArrangementError):
        Arrangement(((0, 0, 0),))
    with pytest.raises(ArrangementError):
        Arrangement(((1, 0), (0, 1, 0)))


def test_parse_error_has_line_number():
    with pytest.raises(ArrangementError) as exc:
        parse_arrangement("vars: x,y,z\nx\ny + w\n")
    assert exc.value.line == 3


def test_rank_and_essential():
    assert from_strings(BRAID).rank() == 3
    a = from_strings(["x", "y", "x+y"])
    assert a.rank() == 2 and not a.is_essential()
    with pytest.raises(NotEssentialError):
        a.require_essential()


def test_braid_defining_polynomial_matches_oracle():
    a = from_strings(BRAID)
    p = a.defining_polynomial()
    vs, oracle = defining_polynomial(a.forms)
    assert len(p.terms) == len(sp.Poly(oracle, *vs).terms()) == 8
    assert sp.expand(sp.sympify(p.format(["v0", "v1", "v2"]).replace("^", "**")) - oracle) == 0


def test_jacobian_generators():
    a = from_strings(BRAID)
    jac = a.jacobian_generators()
    vs, oracle = defining_polynomial(a.forms)
    expected = [sp.diff(oracle, v).subs({w: 1 for w in vs}) for v in vs]
    assert [g.evaluate((1, 1, 1)) for g in jac] == expected == [22, 22, 28]


def test_parse_rejects_zero_and_duplicate_lines():
    with pytest.raises(ArrangementError):
        parse_arrangement("vars: x,y\nx\nx - x\n")
    with pytest.raises(ArrangementError):
        parse_arrangement("vars: x,y\nx\nx\n")


def test_dual_points():
    assert from_strings(["2x+4y", "z"]).dual_points() == [(1, 2, 0), (0, 0, 1)]


def test_normalize_coordinates_roundtrip():
    a = from_strings(["x+y", "y+z", "x+z", "x+y+z"])
    na, t, perm = normalize_coordinates(a)
    assert na.is_normalized()
    assert sorted(perm) == list(range(a.n))
    for pos, j in enumerate(perm):
        moved = t.apply_form(a.forms[j])
        assert moved == na.forms[pos]


def test_transform_pull_back_consistent_with_apply_form():
    a = from_strings(BRAID)
    na, t, perm = normalize_coordinates(a.permuted([3, 4, 0, 5, 1, 2]))
    pulled = t.inverse().pull_back(na.defining_polynomial())
    # product of forms is defined up to the scalar accumulated by the transform
    f = a.defining_polynomial()
    m, c = f.leading()
    assert pulled == f.scale(pulled.terms[m] / c)


forms3 = st.lists(st.integers(-3, 3), min_size=3, max_size=3).filter(any)
nonzero = st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(lambda q: q != 0)


@given(st.lists(forms3, min_size=3, max_size=6), st.data())
@settings(max_examples=50, deadline=None)
def test_rescaling_preserves_dual_points_and_rank(forms, data):
    try:
        a = Arrangement(tuple(tuple(F(c) for c in f) for f in forms))
    except ArrangementError:
        return
    scalars = data.draw(st.lists(nonzero, min_size=a.n, max_size=a.n))
    b = a.rescaled(scalars)
    assert b.dual_points() == a.dual_points()
    assert b.rank() == a.rank()
    fa, fb = a.defining_polynomial(), b.defining_polynomial()
    m, c = fa.leading()
    assert fb == fa.scale(fb.terms[m] / c)


def test_to_text_reparses():
    a = from_strings(["x", "y", "z", "2x - 1/3y + z"])
    assert parse_arrangement(a.to_text()) == a


def test_poly_linear():
    assert Poly.linear((1, 2, 0)).format() == "x + 2*y"
