"""Hyperplane arrangements with low-degree logarithmic derivations, over Q."""

from .algebra import Matrix, NotDivisibleError, Poly, nullspace, rref
from .arrangement import (
    Arrangement,
    ArrangementError,
    NotEssentialError,
    ProjectiveTransform,
    from_strings,
    load_arrangement,
    normalize_coordinates,
    parse_arrangement,
)
from .classify3 import Classification, Tag, canonical_polynomial, canonicalize_t, classify, multiple_points
from .cubic import CubicReport, cubic_through_singular_locus
from .decompose import Decomposition, decompose, edge_ideal_witness
from .logderiv import (
    Derivation,
    DerivationSpace,
    derivation_space,
    derivation_to_syzygy,
    euler_derivation,
    is_logarithmic,
    minimal_quadratic,
)
from .quadratic import BMatrix, build_ideal_uv, check_membership, extract_b, plane_triple

__all__ = [
    "Arrangement",
    "ArrangementError",
    "BMatrix",
    "Classification",
    "CubicReport",
    "Decomposition",
    "Derivation",
    "DerivationSpace",
    "Matrix",
    "NotDivisibleError",
    "NotEssentialError",
    "Poly",
    "ProjectiveTransform",
    "Tag",
    "build_ideal_uv",
    "canonical_polynomial",
    "canonicalize_t",
    "check_membership",
    "classify",
    "cubic_through_singular_locus",
    "decompose",
    "derivation_space",
    "derivation_to_syzygy",
    "edge_ideal_witness",
    "euler_derivation",
    "extract_b",
    "from_strings",
    "is_logarithmic",
    "load_arrangement",
    "minimal_quadratic",
    "multiple_points",
    "normalize_coordinates",
    "nullspace",
    "parse_arrangement",
    "plane_triple",
    "rref",
]
