import pytest

from arrsyz.arrangement import from_strings, normalize_coordinates
from arrsyz.decompose import NotDiagonalError, decompose, diagonal_values, edge_ideal_witness
from arrsyz.logderiv import derivation_space

from conftest import BOOLEAN, BRAID


def test_product_decomposition():
    a = from_strings(["x", "y", "x+y", "z"])
    d = decompose(a)
    assert d.e1 == 2 == d.dim_d1
    assert sorted(p.size for p in d.parts) == [1, 3]
    assert not d.diagnostics
    prod = d.part_polynomial(a, 0) * d.part_polynomial(a, 1)
    f = a.defining_polynomial()
    m, c = f.leading()
    assert prod == f.scale(prod.terms[m] / c)


def test_parts_are_irreducible():
    d = decompose(from_strings(["x", "y", "x+y", "z"]))
    for p in d.parts:
        if p.arrangement.k > 1:
            assert decompose(p.arrangement) is None
        else:
            assert p.arrangement.n == 1


def test_boolean_has_three_parts():
    d = decompose(from_strings(BOOLEAN))
    assert d.e1 == 3
    assert [p.eigenvalue for p in d.parts] == [0, 1, 2]


def test_irreducible_returns_none():
    assert decompose(from_strings(BRAID)) is None


def test_part_subspaces_are_complementary():
    d = decompose(from_strings(["x+z", "y", "x", "z", "y+2w", "w"], ("x", "y", "z", "w")))
    assert d.e1 == 2
    assert sum(p.subspace.rows for p in d.parts) == 4
    assert sorted(p.size for p in d.parts) == [3, 3]


def test_edge_ideal_witness():
    a, _, _ = normalize_coordinates(from_strings(["x", "y", "x+y", "z"]))
    d = decompose(a)
    w = edge_ideal_witness(a, d.theta)
    assert w.partition == ((0, 1), (2,))
    assert w.edges == ((0, 2), (1, 2))
    assert sorted(w.minimal_vertex_covers()) == [(0, 1), (2,)]


def test_edge_ideal_rejects_non_logarithmic():
    a, _, _ = normalize_coordinates(from_strings(["x", "y", "x+y", "z"]))
    bad = derivation_space(from_strings(BOOLEAN), 1).basis
    theta = next(t for t in bad if diagonal_values(t)[0] != diagonal_values(t)[1])
    with pytest.raises(ValueError):
        edge_ideal_witness(a, theta)


def test_diagonal_values_rejects_off_diagonal():
    a = from_strings(["x+y", "y"], ("x", "y"))
    off = next(t for t in derivation_space(a, 1).basis if t.components[0].to_vector(1)[1] != 0 or t.components[1].to_vector(1)[0] != 0)
    with pytest.raises(NotDiagonalError):
        diagonal_values(off)
