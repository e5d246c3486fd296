"""Direct-product decomposition from linear logarithmic derivations.

In a frame where the first k forms are the coordinate hyperplanes every
linear logarithmic derivation is diagonal, ``theta(x_i) = a_i x_i``.  The dual
points then lie on the zero set of the edge ideal of the complete
multipartite graph whose parts are the level sets of ``a``, and the minimal
vertex covers are the complements of those parts.  Grouping the forms by
part gives the factors of the product.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra import Matrix, Poly, product, rank_of, rref
from .arrangement import Arrangement, ProjectiveTransform, normalize_coordinates
from .logderiv import Derivation, derivation_space
from .quadratic import NotNormalizedError


class NotDiagonalError(ValueError):
    pass


@dataclass(frozen=True)
class Part:
    eigenvalue: Fraction
    indices: tuple[int, ...]  # form indices into the input arrangement
    coordinates: tuple[int, ...]  # coordinate indices in the normalized frame
    subspace: Matrix  # rref basis (rows) of the span of the part's dual points
    arrangement: Arrangement  # the factor, in its own |coordinates| variables

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Decomposition:
    parts: tuple[Part, ...]
    theta: Derivation  # a separating derivation in the normalized frame
    transform: ProjectiveTransform
    permutation: tuple[int, ...]
    dim_d1: int
    diagnostics: tuple[str, ...] = field(default=())

    @property
    def e1(self) -> int:
        return len(self.parts)

    def part_polynomial(self, a: Arrangement, i: int) -> Poly:
        return product((Poly.linear(a.forms[j]) for j in self.parts[i].indices), a.k)

    def to_json(self) -> dict:
        return {
            "e1": self.e1,
            "dim_d1": self.dim_d1,
            "parts": [
                {
                    "eigenvalue": str(p.eigenvalue),
                    "forms": list(p.indices),
                    "subspace": [[str(v) for v in r] for r in p.subspace.entries],
                }
                for p in self.parts
            ],
            "diagnostics": list(self.diagnostics),
        }


def diagonal_values(theta: Derivation) -> tuple[Fraction, ...]:
    """The a-vector of a diagonal linear derivation; raises if off-diagonal."""
    if theta.degree != 1:
        raise NotDiagonalError("need a linear derivation")
    k = theta.k
    out = []
    for i, c in enumerate(theta.components):
        coeffs = c.to_vector(1) if c else (Fraction(0),) * k
        if any(v != 0 for j, v in enumerate(coeffs) if j != i):
            raise NotDiagonalError(f"component {i + 1} is not a multiple of x_{i + 1}")
        out.append(coeffs[i])
    return tuple(out)


def decompose(a: Arrangement) -> Decomposition | None:
    """Split ``a`` into a direct product, or None when dim D_1 = 1."""
    a.require_essential()
    na, t, perm = normalize_coordinates(a)
    d1 = derivation_space(na, 1)
    if d1.dim == 1:
        return None
    k = a.k
    diagnostics = []

    # Intersect the level-set partitions of every basis element.
    signatures = [[] for _ in range(k)]
    for theta in d1.basis:
        for i, v in enumerate(diagonal_values(theta)):
            signatures[i].append(v)
    groups: dict[tuple, list[int]] = {}
    for i, sig in enumerate(signatures):
        groups.setdefault(tuple(sig), []).append(i)
    blocks = sorted(groups.values(), key=lambda g: g[0])
    block_of = {i: b for b, g in enumerate(blocks) for i in g}

    separating = Derivation(
        1, tuple(Poly.variable(k, i).scale(block_of[i]) for i in range(k))
    ) if len(blocks) > 1 else d1.basis[0]

    form_blocks: list[list[int]] = [[] for _ in blocks]
    for pos, f in enumerate(na.forms):
        support = {i for i, c in enumerate(f) if c != 0}
        owners = {block_of[i] for i in support}
        if len(owners) != 1:
            diagnostics.append(f"form {perm[pos]} meets several parts {sorted(owners)}")
            continue
        form_blocks[owners.pop()].append(perm[pos])

    inv = {p: q for q, p in enumerate(perm)}
    parts = []
    for b, coords in enumerate(blocks):
        idx = tuple(sorted(form_blocks[b]))
        pts = [a.forms[j] for j in idx]
        red, piv = rref(Matrix(pts))
        sub = Matrix([red.row(r) for r in range(len(piv))], cols=k)
        local = tuple(tuple(na.forms[inv[j]][i] for i in coords) for j in idx)
        parts.append(
            Part(
                eigenvalue=Fraction(b),
                indices=idx,
                coordinates=tuple(coords),
                subspace=sub,
                arrangement=Arrangement(local, tuple(na.names[i] for i in coords) if len(na.names) == k else ()),
            )
        )

    total = sum(p.subspace.rows for p in parts)
    stacked = [r for p in parts for r in p.subspace.entries]
    if total != k or rank_of(stacked, k) != k:
        diagnostics.append("part subspaces are not complementary")
    if len(parts) != d1.dim:
        diagnostics.append(f"found {len(parts)} parts but dim D_1 = {d1.dim}")
    return Decomposition(tuple(parts), separating, t, tuple(perm), d1.dim, tuple(diagnostics))


@dataclass(frozen=True)
class EdgeIdealWitness:
    eigenvalues: tuple[Fraction, ...]
    generators: tuple[Poly, ...]
    edges: tuple[tuple[int, int], ...]
    partition: tuple[tuple[int, ...], ...]

    def minimal_vertex_covers(self) -> list[tuple[int, ...]]:
        """Complements of the parts (complete multipartite graph)."""
        k = len(self.eigenvalues)
        if len(self.partition) < 2:
            return [()]
        return [tuple(v for v in range(k) if v not in part) for part in self.partition]


def edge_ideal_witness(a: Arrangement, theta: Derivation) -> EdgeIdealWitness:
    """Edge-ideal data for a diagonal linear derivation in the normalized frame."""
    if not a.is_normalized():
        raise NotNormalizedError("first k forms must be the coordinate hyperplanes")
    vals = diagonal_values(theta)
    k = a.k
    gens, edges = [], []
    for i, j in combinations(range(k), 2):
        if vals[i] != vals[j]:
            gens.append((Poly.variable(k, i) * Poly.variable(k, j)).scale(vals[i] - vals[j]))
            edges.append((i, j))
    levels: dict[Fraction, list[int]] = {}
    for i, v in enumerate(vals):
        levels.setdefault(v, []).append(i)
    partition = tuple(tuple(g) for g in sorted(levels.values(), key=lambda g: g[0]))
    w = EdgeIdealWitness(vals, tuple(gens), tuple(edges), partition)
    for p in a.dual_points():
        if any(g.evaluate(p) != 0 for g in w.generators):
            raise ValueError(f"dual point {p} is off the edge-ideal variety; theta is not logarithmic")
    return w
