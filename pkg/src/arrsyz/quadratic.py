"""Quadratic derivations in a normalized frame: the b-matrix and ideals I_{u,v}.

Indices are 1-based in every public name that mirrors the b_{u,i} notation
(``BMatrix.b(u, i)``, ``build_ideal_uv(b, u, v)``); storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import NotDivisibleError, Poly, rank_of, rational_str
from .arrangement import Arrangement
from .logderiv import Derivation, QuadraticReport, euler_derivation


class NotNormalizedError(ValueError):
    pass


class CommonDivisorError(ValueError):
    """The chosen representative has a common linear factor in its components."""

    def __init__(self, divisor: Poly):
        self.divisor = divisor
        super().__init__(f"components share the factor {divisor}")


@dataclass(frozen=True)
class BMatrix:
    """``entries[u][i]`` (0-based) is the coefficient of x_u in L_i, where Q_i = x_i L_i."""

    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def k(self) -> int:
        return len(self.entries)

    def b(self, u: int, i: int) -> Fraction:
        """1-based accessor b_{u,i}."""
        return self.entries[u - 1][i - 1]

    def L(self, i: int) -> Poly:
        """The linear form L_i (1-based)."""
        return Poly.linear([self.entries[u][i - 1] for u in range(self.k)])

    def reconstruct(self) -> tuple[Poly, ...]:
        k = self.k
        return tuple(Poly.variable(k, i) * self.L(i + 1) for i in range(k))

    def perturbed(self, u: int, i: int, delta) -> BMatrix:
        rows = [list(r) for r in self.entries]
        rows[u - 1][i - 1] += Fraction(delta)
        return BMatrix(tuple(tuple(r) for r in rows))

    def to_json(self) -> list[list[str]]:
        return [[rational_str(v) for v in r] for r in self.entries]


def common_linear_divisor(components: Sequence[Poly]) -> Poly | None:
    """A non-constant linear form dividing every component, or None.

    Components here factor as x_i * L_i, so any common divisor is one of the
    two linear factors of the first nonzero component.
    """
    nonzero = [c for c in components if c]
    if not nonzero:
        return None
    first_idx = next(i for i, c in enumerate(components) if c)
    first = components[first_idx]
    k = first.k
    candidates = [Poly.variable(k, first_idx)]
    try:
        candidates.append(first.divide_exact(candidates[0]))
    except NotDivisibleError:
        return None
    for cand in candidates:
        if cand.degree != 1:
            continue
        if all(cand.divides(c) for c in nonzero):
            return cand
    return None


def extract_b(theta: Derivation, a: Arrangement, require_coprime: bool = True) -> BMatrix:
    """Write each component as Q_i = x_i * L_i and collect the coefficients of L_i."""
    if not a.is_normalized():
        raise NotNormalizedError("first k forms must be the coordinate hyperplanes")
    if theta.degree != 2:
        raise ValueError("extract_b needs a quadratic derivation")
    k = a.k
    if require_coprime:
        g = common_linear_divisor(theta.components)
        if g is not None:
            raise CommonDivisorError(g)
    cols = []
    for i, q in enumerate(theta.components):
        try:
            L = q.divide_exact(Poly.variable(k, i))
        except NotDivisibleError:
            raise NotDivisibleError(f"component {i + 1} is not divisible by x_{i + 1}") from None
        cols.append(L.to_vector(1) if L else (Fraction(0),) * k)
    return BMatrix(tuple(tuple(cols[i][u] for i in range(k)) for u in range(k)))


@dataclass(frozen=True)
class IdealUV:
    """Generators of I_{u,v}: one linear form and k-2 quadrics (zeros kept)."""

    u: int
    v: int
    linear_gen: Poly
    quadratic_gens: tuple[Poly, ...]
    others: tuple[int, ...]  # the w index of each quadratic generator, 1-based

    @property
    def generators(self) -> tuple[Poly, ...]:
        return (self.linear_gen,) + self.quadratic_gens

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def vanishes_at(self, point: Sequence[Fraction]) -> bool:
        return all(g.evaluate(point) == 0 for g in self.generators)


def build_ideal_uv(b: BMatrix, u: int, v: int) -> IdealUV:
    if not 1 <= u < v <= b.k:
        raise ValueError("need 1 <= u < v <= k")
    k = b.k
    X = [None] + [Poly.variable(k, i) for i in range(k)]
    lin = X[u] * (b.b(v, u) - b.b(v, v)) + X[v] * (b.b(u, v) - b.b(u, u))
    quads = []
    others = tuple(w for w in range(1, k + 1) if w not in (u, v))
    for w in others:
        q = (
            (X[u] * X[v]) * (b.b(w, u) - b.b(w, v))
            + (X[v] * X[w]) * (b.b(u, w) - b.b(u, u))
            - (X[u] * X[w]) * (b.b(v, w) - b.b(v, v))
        )
        quads.append(q)
    return IdealUV(u, v, lin, tuple(quads), others)


@dataclass
class MembershipReport:
    """Evaluations of the I_{u,v} generators at the dual points."""

    entries: list[dict] = field(default_factory=list)
    corollary: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e["pass"] for e in self.entries)

    @property
    def corollary_passed(self) -> bool:
        return all(c["pass"] for c in self.corollary)

    @property
    def failures(self) -> list[dict]:
        return [e for e in self.entries if not e["pass"]]

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "corollary_pass": self.corollary_passed,
            "entries": self.entries,
            "corollary": self.corollary,
        }


def check_membership(a: Arrangement, b: BMatrix) -> MembershipReport:
    """Evaluate I_{u,v} at every dual point with nonzero coordinates u and v.

    Also records, per point, whether it lies on at least one V(I_{u,v}).  A
    coordinate point is exempt from that second check when k < 3, since then
    no pair avoids its own index.
    """
    if not a.is_normalized():
        raise NotNormalizedError("first k forms must be the coordinate hyperplanes")
    k = a.k
    ideals = {(u, v): build_ideal_uv(b, u, v) for u, v in combinations(range(1, k + 1), 2)}
    report = MembershipReport()
    for j, p in enumerate(a.dual_points()):
        on_some = False
        for (u, v), ideal in ideals.items():
            values = [g.evaluate(p) for g in ideal.generators]
            zero = all(val == 0 for val in values)
            on_some = on_some or zero
            if p[u - 1] != 0 and p[v - 1] != 0:
                report.entries.append(
                    {
                        "form": j,
                        "point": [rational_str(c) for c in p],
                        "pair": [u, v],
                        "values": [rational_str(val) for val in values],
                        "pass": zero,
                    }
                )
        support = sum(1 for c in p if c != 0)
        exempt = support == 1 and k < 3
        report.corollary.append({"form": j, "pass": on_some or exempt})
    return report


@dataclass(frozen=True)
class PlaneIdealTriple:
    a1: Fraction
    b1: Fraction
    a2: Fraction
    c2: Fraction
    b3: Fraction
    c3: Fraction
    I_xy: IdealUV
    I_xz: IdealUV
    I_yz: IdealUV

    @property
    def zero_flags(self) -> dict[str, bool]:
        return {"I_xy": self.I_xy.is_zero, "I_xz": self.I_xz.is_zero, "I_yz": self.I_yz.is_zero}

    @property
    def any_zero(self) -> bool:
        return any(self.zero_flags.values())

    def scalars(self) -> dict[str, Fraction]:
        return {"a1": self.a1, "b1": self.b1, "a2": self.a2, "c2": self.c2, "b3": self.b3, "c3": self.c3}

    def simplified_generators(self) -> dict[str, tuple[Poly, Poly]]:
        """The three ideals written through the six scalars."""
        x, y, z = (Poly.variable(3, i) for i in range(3))
        a1, b1, a2, c2, b3, c3 = self.a1, self.b1, self.a2, self.c2, self.b3, self.c3
        return {
            "I_xy": (x * a1 + y * b1, y * (x * a2 + z * c2) - x * (y * b3 + z * c3)),
            "I_xz": (x * a2 + z * c2, z * (x * a1 + y * b1) - x * (y * b3 + z * c3)),
            "I_yz": (y * b3 + z * c3, z * (x * a1 + y * b1) - y * (x * a2 + z * c2)),
        }


def plane_triple(b: BMatrix) -> PlaneIdealTriple:
    if b.k != 3:
        raise ValueError("plane_triple needs k = 3")
    B = b.b
    return PlaneIdealTriple(
        a1=B(2, 1) - B(2, 2),
        b1=B(1, 2) - B(1, 1),
        a2=B(3, 1) - B(3, 3),
        c2=B(1, 3) - B(1, 1),
        b3=B(3, 2) - B(3, 3),
        c3=B(2, 3) - B(2, 2),
        I_xy=build_ideal_uv(b, 1, 2),
        I_xz=build_ideal_uv(b, 1, 3),
        I_yz=build_ideal_uv(b, 2, 3),
    )


def representatives(report: QuadraticReport, k: int) -> list[Derivation]:
    """Candidate quadratic derivations outside the product span, in a fixed order.

    The minimal representative first, then it shifted by x_j * theta_E, then the
    remaining degree-2 basis vectors outside the span.
    """
    if report.theta is None:
        return []
    theta = report.theta
    euler = euler_derivation(k)
    out = [theta] + [theta + euler.times(Poly.variable(k, j)) for j in range(k)]
    span = [th.times(Poly.variable(k, j)).to_vector() for th in report.d1.basis for j in range(k)]
    ncols = len(theta.to_vector())
    base = rank_of(span, ncols)
    for cand in report.d2.basis:
        if cand is not theta and rank_of(span + [cand.to_vector()], ncols) > base:
            out.append(cand)
    return out


def coprime_representative(report: QuadraticReport, k: int) -> tuple[Derivation, bool]:
    """First representative whose components share no linear factor.

    Returns ``(theta, True)`` on success and ``(report.theta, False)`` when every
    candidate has a common factor.
    """
    cands = representatives(report, k)
    for cand in cands:
        if common_linear_divisor(cand.components) is None:
            return cand, True
    return cands[0], False
