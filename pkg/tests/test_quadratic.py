from fractions import Fraction

import pytest

from arrsyz.algebra import Poly
from arrsyz.arrangement import from_strings, normalize_coordinates
from arrsyz.logderiv import Derivation, euler_derivation, is_logarithmic, minimal_quadratic
from arrsyz.quadratic import (
    BMatrix,
    CommonDivisorError,
    NotNormalizedError,
    build_ideal_uv,
    check_membership,
    coprime_representative,
    extract_b,
    plane_triple,
    representatives,
)

from conftest import BOOLEAN, BRAID

F = Fraction
x, y, z = (Poly.variable(3, i) for i in range(3))


def degenerate_theta(s, t):
    return Derivation(2, (x * (x + y + z.scale(s)), y * (x + y + z.scale(s)), z * (x + y + z.scale(t))))


def braid_b():
    a = from_strings(BRAID)
    theta, coprime = coprime_representative(minimal_quadratic(a), 3)
    assert coprime
    return a, extract_b(theta, a)


def test_degenerate_b_columns():
    b = extract_b(degenerate_theta(2, 3), from_strings(BOOLEAN))
    assert [[b.b(u, i) for u in (1, 2, 3)] for i in (1, 2, 3)] == [[1, 1, 2], [1, 1, 2], [1, 1, 3]]
    assert b.reconstruct() == degenerate_theta(2, 3).components


def test_degenerate_b_gives_zero_i_xy():
    b = extract_b(degenerate_theta(2, 3), from_strings(BOOLEAN))
    ixy = build_ideal_uv(b, 1, 2)
    assert ixy.is_zero and len(ixy.generators) == 2
    tri = plane_triple(b)
    assert tri.zero_flags == {"I_xy": True, "I_xz": False, "I_yz": False}
    sc = tri.scalars()
    assert sc["a1"] == sc["b1"] == sc["c2"] == sc["c3"] == 0
    assert sc["a2"] == sc["b3"] == -1


def test_euler_multiple_has_common_divisor():
    theta = euler_derivation(3).times(x)
    with pytest.raises(CommonDivisorError) as exc:
        extract_b(theta, from_strings(BOOLEAN))
    assert exc.value.divisor == x
    b = extract_b(theta, from_strings(BOOLEAN), require_coprime=False)
    assert b.entries == ((1, 1, 1), (0, 0, 0), (0, 0, 0))


def test_extract_b_requires_normalized_frame():
    with pytest.raises(NotNormalizedError):
        extract_b(degenerate_theta(2, 3), from_strings(["y", "x", "z"]))


def test_zero_b_gives_zero_generators():
    b = BMatrix(((F(0),) * 3,) * 3)
    for u, v in ((1, 2), (1, 3), (2, 3)):
        assert build_ideal_uv(b, u, v).is_zero


def test_identity_pattern_scalars():
    b = BMatrix(tuple(tuple(F(int(u == i)) for i in range(3)) for u in range(3)))
    assert set(plane_triple(b).scalars().values()) == {-1}


def test_generator_count_is_k_minus_one():
    b = BMatrix(tuple(tuple(F(u * 4 + i) for i in range(4)) for u in range(4)))
    for u, v in ((1, 2), (2, 4), (3, 4)):
        assert len(build_ideal_uv(b, u, v).generators) == 3


def test_simplified_generators_match_general_formula():
    _, b = braid_b()
    tri = plane_triple(b)
    simplified = tri.simplified_generators()
    for name, ideal in (("I_xy", tri.I_xy), ("I_xz", tri.I_xz), ("I_yz", tri.I_yz)):
        assert simplified[name] == ideal.generators


def test_braid_reconstruction_and_membership():
    a, b = braid_b()
    theta, _ = coprime_representative(minimal_quadratic(a), 3)
    assert b.reconstruct() == theta.components
    report = check_membership(a, b)
    assert report.passed and report.corollary_passed
    assert not plane_triple(b).any_zero
    assert not build_ideal_uv(b, 1, 2).is_zero


def test_corrupted_b_fails_membership():
    a, b = braid_b()
    failures = 0
    for u in (1, 2, 3):
        for i in (1, 2, 3):
            failures += not check_membership(a, b.perturbed(u, i, 1)).passed
    assert failures > 0
    assert not check_membership(a, b.perturbed(2, 1, 1)).passed


def test_type2_instance_membership():
    a = from_strings(["x", "y", "z", "x+y+z", "y+2z"])
    rep = minimal_quadratic(a)
    theta, coprime = coprime_representative(rep, 3)
    assert coprime and is_logarithmic(theta, a)
    assert check_membership(a, extract_b(theta, a)).passed


@pytest.mark.parametrize("forms", [BRAID, ["x", "y", "z", "x+y+z", "y+2z"], ["x", "y", "z", "x+y", "y+2z", "y+5z"]])
def test_three_representatives_pass(forms):
    a, _, _ = normalize_coordinates(from_strings(forms))
    rep = minimal_quadratic(a)
    theta, _ = coprime_representative(rep, 3)
    e = euler_derivation(3)
    reps = [theta, theta + e.times(x), theta + e.times(y)]
    assert len({r.to_vector() for r in reps}) == 3
    for r in reps:
        assert is_logarithmic(r, a)
        assert check_membership(a, extract_b(r, a, require_coprime=False)).passed


def test_representatives_order():
    a = from_strings(BRAID)
    rep = minimal_quadratic(a)
    reps = representatives(rep, 3)
    assert reps[0] == rep.theta
    assert reps[1] == rep.theta + euler_derivation(3).times(x)
