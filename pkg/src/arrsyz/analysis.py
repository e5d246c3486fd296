"""One-shot analysis of an arrangement, shared by the CLI and the search harness."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Poly
from .arrangement import Arrangement, normalize_coordinates
from .classify3 import Classification, Tag, classify
from .cubic import CubicReport, cubic_through_singular_locus
from .decompose import Decomposition, decompose
from .logderiv import (
    Derivation,
    EulerMultipleError,
    QuadraticReport,
    derivation_to_syzygy,
    euler_derivation,
    minimal_quadratic,
    syzygy_residual,
)
from .quadratic import (
    BMatrix,
    MembershipReport,
    PlaneIdealTriple,
    check_membership,
    coprime_representative,
    extract_b,
    plane_triple,
)


@dataclass
class QuadraticCheck:
    """Membership checks for a quadratic derivation, run in the normalized frame."""

    theta: Derivation
    coprime: bool
    b: BMatrix
    memberships: list[MembershipReport]
    triple: PlaneIdealTriple | None

    @property
    def membership_pass(self) -> bool:
        return all(m.passed for m in self.memberships)

    @property
    def corollary_pass(self) -> bool:
        return all(m.corollary_passed for m in self.memberships)

    @property
    def no_zero_ideal(self) -> bool | None:
        return None if self.triple is None else not self.triple.any_zero


def quadratic_checks(a: Arrangement) -> QuadraticCheck | None:
    """Extract B from a minimal quadratic derivation and test I_{u,v} membership.

    Three representatives are checked: theta, theta + x*theta_E and
    theta + y*theta_E.
    """
    na, _, _ = normalize_coordinates(a)
    report = minimal_quadratic(na)
    if not report.exists:
        return None
    k = na.k
    theta, coprime = coprime_representative(report, k)
    euler = euler_derivation(k)
    shifts = [theta] + [theta + euler.times(Poly.variable(k, j)) for j in range(min(2, k))]
    b = extract_b(theta, na, require_coprime=coprime)
    memberships = [check_membership(na, extract_b(t, na, require_coprime=False)) for t in shifts]
    triple = plane_triple(b) if k == 3 else None
    return QuadraticCheck(theta, coprime, b, memberships, triple)


@dataclass
class Analysis:
    arrangement: Arrangement
    rank: int
    essential: bool
    quadratic: QuadraticReport | None = None
    decomposition: Decomposition | None = None
    classification: Classification | None = None
    checks: QuadraticCheck | None = None
    syzygy_ok: bool | None = None
    cubic: CubicReport | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        """False when any internal-consistency check failed."""
        if self.classification is not None and self.classification.tag is Tag.THEOREM_VIOLATION:
            return False
        if self.checks is not None and not self.checks.membership_pass:
            return False
        if self.syzygy_ok is False:
            return False
        if self.decomposition is not None and self.decomposition.diagnostics:
            return False
        if self.classification is not None and self.classification.in_family:
            if self.checks is not None and self.checks.no_zero_ideal is False:
                return False
            if self.cubic is not None and not self.cubic.cubic_exists:
                return False
        return True

    def to_json(self) -> dict:
        a = self.arrangement
        out = {
            "arrangement": a.to_json(),
            "n": a.n,
            "k": a.k,
            "rank": self.rank,
            "essential": self.essential,
        }
        if self.quadratic is not None:
            q = self.quadratic
            out["dims"] = {"D1": q.dim_d1, "D2": q.dim_d2, "T": q.dim_t}
            out["minimal_quadratic"] = q.theta.to_json(a.names) if q.theta else None
        out["syzygy_ok"] = self.syzygy_ok
        out["decomposition"] = self.decomposition.to_json() if self.decomposition else None
        out["classification"] = self.classification.to_json() if self.classification else None
        if self.checks is not None:
            c = self.checks
            out["membership"] = {
                "pass": c.membership_pass,
                "corollary_pass": c.corollary_pass,
                "coprime_representative": c.coprime,
                "b": c.b.to_json(),
                "reports": [m.to_json() for m in c.memberships],
            }
            if c.triple is not None:
                out["plane_triple"] = {
                    "scalars": {k: str(v) for k, v in c.triple.scalars().items()},
                    "zero": c.triple.zero_flags,
                }
        else:
            out["membership"] = None
        out["cubic"] = self.cubic.to_json() if self.cubic else None
        out["consistent"] = self.consistent
        out["notes"] = self.notes
        return out


def analyze(a: Arrangement, with_decomposition: bool = True) -> Analysis:
    rank = a.rank()
    res = Analysis(a, rank, rank == a.k)
    if not res.essential:
        res.notes.append("arrangement is not essential; derivation analysis skipped")
        if a.k == 3:
            res.classification = classify(a)
        return res
    q = minimal_quadratic(a)
    res.quadratic = q
    if with_decomposition and q.dim_d1 > 1:
        res.decomposition = decompose(a)
    if q.theta is not None:
        try:
            syz, _ = derivation_to_syzygy(q.theta, a)
            res.syzygy_ok = syzygy_residual(syz, a).is_zero()
        except EulerMultipleError:
            res.syzygy_ok = False
        res.checks = quadratic_checks(a)
    if a.k == 3:
        res.classification = classify(a, q)
        res.cubic = cubic_through_singular_locus(a)
    return res


def render_text(res: Analysis) -> str:
    a = res.arrangement
    lines = [
        f"arrangement: {a}",
        f"n = {a.n}, k = {a.k}, rank = {res.rank}, essential = {res.essential}",
    ]
    if res.quadratic is not None:
        q = res.quadratic
        lines.append(f"dim D1 = {q.dim_d1}, dim D2 = {q.dim_d2}, dim T = {q.dim_t}")
        if q.theta is not None:
            lines.append(f"minimal quadratic derivation: {q.theta.format(a.names)}")
            lines.append(f"syzygy identity holds: {res.syzygy_ok}")
        else:
            lines.append("minimal quadratic derivation: none")
    if res.decomposition is not None:
        d = res.decomposition
        lines.append(f"decomposition: e1 = {d.e1}")
        for p in d.parts:
            lines.append(f"  eigenvalue {p.eigenvalue}: forms {[a.form_str(i) for i in p.indices]}")
        for msg in d.diagnostics:
            lines.append(f"  DIAGNOSTIC: {msg}")
    if res.checks is not None:
        c = res.checks
        lines.append(f"membership (3 representatives): {'pass' if c.membership_pass else 'FAIL'}")
        if c.triple is not None:
            zeros = [k for k, v in c.triple.zero_flags.items() if v]
            lines.append(f"zero ideals among I_xy, I_xz, I_yz: {zeros or 'none'}")
    if res.classification is not None:
        c = res.classification
        line = f"classification: {c.tag}"
        if c.in_family and c.tag is not Tag.TYPE3:
            line += " t = {" + ", ".join(str(t) for t in c.params) + "}"
        if c.reason:
            line += f" ({c.reason})"
        lines.append(line)
        if c.transform is not None:
            lines.append(f"  transform: {c.transform.matrix}")
    if res.cubic is not None:
        lines.append(
            f"cubic through singular locus: {res.cubic.cubic_exists} "
            f"({res.cubic.point_count} points, rank {res.cubic.rank})"
        )
    lines.extend(f"note: {n}" for n in res.notes)
    return "\n".join(lines)
