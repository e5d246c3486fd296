"""Does the singular locus of a line arrangement lie on a plane cubic?

Each singular point imposes one linear condition on the 10-dimensional space
of ternary cubics, so a cubic exists exactly when the evaluation matrix has
rank below 10.  This is a necessary condition for the three canonical
families, used as a cross-check and never as a classification gate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import Matrix, Poly, monomials, nullspace_rows, rank_of
from .arrangement import Arrangement
from .classify3 import multiple_points

CUBIC_MONOMIALS = monomials(3, 3)


@dataclass(frozen=True)
class CubicReport:
    point_count: int
    rank: int
    witness: Poly | None

    @property
    def cubic_exists(self) -> bool:
        return self.rank < 10

    def to_json(self) -> dict:
        return {
            "points": self.point_count,
            "rank": self.rank,
            "cubic_exists": self.cubic_exists,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }


def evaluation_matrix(points: Sequence[Sequence[Fraction]]) -> Matrix:
    rows = []
    for p in points:
        row = []
        for m in CUBIC_MONOMIALS:
            v = Fraction(1)
            for c, e in zip(p, m):
                v *= c**e
            row.append(v)
        rows.append(row)
    return Matrix(rows, cols=len(CUBIC_MONOMIALS))


def cubic_through_points(points: Sequence[Sequence[Fraction]]) -> CubicReport:
    m = evaluation_matrix(points)
    rank = rank_of(m.entries, m.cols) if points else 0
    null = nullspace_rows(m.entries, m.cols) if points else [tuple(Fraction(int(i == 0)) for i in range(10))]
    witness = Poly.from_vector(3, 3, null[0], CUBIC_MONOMIALS) if null else None
    return CubicReport(len(points), rank, witness)


def cubic_through_singular_locus(a: Arrangement) -> CubicReport:
    if a.k != 3:
        raise ValueError("cubic test needs k = 3")
    return cubic_through_points([mp.point for mp in multiple_points(a)])


def has_generic_five(a: Arrangement) -> bool:
    """True when some 5 lines of ``a`` are in general position (10 distinct double points)."""
    for idx in combinations(range(a.n), 5):
        sub = Arrangement(tuple(a.forms[i] for i in idx), a.names)
        mps = multiple_points(sub)
        if len(mps) == 10 and cubic_through_singular_locus(sub).rank == 10:
            return True
    return False
