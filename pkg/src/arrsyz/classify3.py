"""Line arrangements in P^2 with a minimal quadratic syzygy and no linear one.

Such an arrangement is, after a change of coordinates, one of

* Type1: ``xyz(x+y) prod (y + t_j z)``
* Type2: ``xyz(x+y+z) prod (y + t_j z)``
* Type3: ``xyz(x+y+z)(x+z)(y+z)``

with all ``t_j`` nonzero.  ``classify`` does not replay a case analysis; it
enumerates the finitely many ways of sending distinguished lines to canonical
ones, builds the induced projective transform, and accepts a candidate only
if every input line lands on the canonical list.

Families have residual symmetry, so the t-values are reported in a canonical
form.  Type1 pencils are parametrized by ``u = 1/t`` (z sits at u = 0) and
are determined up to affine maps of the u-line; Type2 pencils are
determined up to Moebius maps of the t-line fixing t = 1.  Among the
representatives that send two members to the fixed reference positions we
report the one with the fewest negative entries, then the lexicographically
smallest sorted tuple.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterator, Sequence

from .algebra import Matrix, Poly, cross, dot, normalize_projective, product, proportional, rational_str, solve
from .arrangement import Arrangement, ProjectiveTransform
from .logderiv import QuadraticReport, minimal_quadratic


class Tag(str, enum.Enum):
    TYPE1 = "Type1"
    TYPE2 = "Type2"
    TYPE3 = "Type3"
    NO_QUADRATIC = "NoQuadratic"
    HAS_LINEAR = "HasLinear"
    NOT_RANK3 = "NotRank3"
    THEOREM_VIOLATION = "TheoremViolation"

    def __str__(self) -> str:
        return self.value


FAMILY_TAGS = (Tag.TYPE1, Tag.TYPE2, Tag.TYPE3)


# ---------------------------------------------------------------------------
# Intersection points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiplePoint:
    point: tuple[Fraction, ...]
    lines: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.lines)


def multiple_points(a: Arrangement) -> list[MultiplePoint]:
    """All points where at least two lines meet, with the lines through each."""
    if a.k != 3:
        raise ValueError("multiple_points needs k = 3")
    seen: dict[tuple, None] = {}
    for f, g in combinations(a.forms, 2):
        seen.setdefault(normalize_projective(cross(f, g)), None)
    out = []
    for p in sorted(seen):
        lines = tuple(i for i, f in enumerate(a.forms) if dot(f, p) == 0)
        out.append(MultiplePoint(p, lines))
    return out


# ---------------------------------------------------------------------------
# Canonical forms
# ---------------------------------------------------------------------------

_X, _Y, _Z = (Fraction(1), Fraction(0), Fraction(0)), (Fraction(0), Fraction(1), Fraction(0)), (Fraction(0), Fraction(0), Fraction(1))


def _pencil(t) -> tuple:
    return (Fraction(0), Fraction(1), Fraction(t))


def canonical_forms(tag: Tag, params: Sequence = ()) -> list[tuple]:
    tag = Tag(tag)
    ts = [Fraction(t) for t in params]
    if any(t == 0 for t in ts):
        raise ValueError("t-values must be nonzero")
    if len(set(ts)) != len(ts):
        raise ValueError("t-values must be distinct")
    if tag is Tag.TYPE1:
        return [_X, _Y, _Z, (1, 1, 0)] + [_pencil(t) for t in ts]
    if tag is Tag.TYPE2:
        return [_X, _Y, _Z, (1, 1, 1)] + [_pencil(t) for t in ts]
    if tag is Tag.TYPE3:
        if ts:
            raise ValueError("Type3 takes no parameters")
        return [_X, _Y, _Z, (1, 1, 1), (1, 0, 1), (0, 1, 1)]
    raise ValueError(f"{tag} is not a family tag")


def canonical_arrangement(tag: Tag, params: Sequence = ()) -> Arrangement:
    return Arrangement(tuple(tuple(Fraction(c) for c in f) for f in canonical_forms(tag, params)), ("x", "y", "z"))


def canonical_polynomial(tag: Tag, params: Sequence = ()) -> Poly:
    return product((Poly.linear(f) for f in canonical_forms(tag, params)), 3)


def _key(ts: Sequence[Fraction]) -> tuple:
    srt = tuple(sorted(ts))
    return (sum(1 for t in srt if t < 0), srt)


def canonicalize_t(tag: Tag, params: Sequence) -> tuple[Fraction, ...]:
    """Canonical representative of a t-multiset under the family's symmetries."""
    tag = Tag(tag)
    ts = [Fraction(t) for t in params]
    if tag is Tag.TYPE3 or (tag is Tag.TYPE1 and not ts):
        return ()
    if tag is Tag.TYPE1:
        us = [Fraction(0)] + [1 / t for t in ts]
        best = None
        for p, q in permutations(us, 2):
            images = [(u - p) / (q - p) for u in us if u != p]
            cand = tuple(sorted(1 / v for v in images))
            if best is None or _key(cand) < _key(best):
                best = cand
        return best
    if tag is Tag.TYPE2:
        points: list[Fraction | None] = [Fraction(0), None] + ts  # None is t = infinity
        one = Fraction(1)

        def g(t, p, q):
            if t is None:
                return (one - q) / (one - p)
            if q is None:
                return (t - p) / (one - p)
            if p is None:
                return (one - q) / (t - q)
            return ((t - p) * (one - q)) / ((t - q) * (one - p))

        best = None
        for ip, iq in permutations(range(len(points)), 2):
            p, q = points[ip], points[iq]
            if p == one or q == one:
                continue
            cand = tuple(sorted(g(t, p, q) for i, t in enumerate(points) if i not in (ip, iq)))
            if best is None or _key(cand) < _key(best):
                best = cand
        return best if best is not None else ()
    raise ValueError(f"{tag} is not a family tag")


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    tag: Tag
    params: tuple[Fraction, ...] = ()
    transform: ProjectiveTransform | None = None
    permutation: tuple[int, ...] = ()  # input form i lands on canonical form permutation[i]
    dims: tuple[int, int, int] | None = None
    reason: str = ""
    candidates_tried: int = 0

    @property
    def in_family(self) -> bool:
        return self.tag in FAMILY_TAGS

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "t": [rational_str(t) for t in self.params],
            "transform": self.transform.to_json() if self.transform else None,
            "permutation": list(self.permutation),
            "dims": list(self.dims) if self.dims else None,
            "reason": self.reason,
        }


def match_forms(forms: Sequence[Sequence[Fraction]], targets: Sequence[Sequence[Fraction]]) -> tuple[int, ...] | None:
    """Bijection from ``forms`` onto ``targets`` up to scalars, or None."""
    if len(forms) != len(targets):
        return None
    index = {normalize_projective(t): j for j, t in enumerate(targets)}
    perm = []
    for f in forms:
        j = index.get(normalize_projective(f))
        if j is None:
            return None
        perm.append(j)
    if len(set(perm)) != len(perm):
        return None
    return tuple(perm)


def verify_fit(a: Arrangement, tag: Tag, params: Sequence, transform: ProjectiveTransform) -> tuple[int, ...] | None:
    """Permutation if ``transform`` sends every input form onto the canonical list."""
    moved = [transform.apply_form(f) for f in a.forms]
    return match_forms(moved, canonical_forms(tag, params))


def _combo(target: Sequence[Fraction], basis: Sequence[Sequence[Fraction]]) -> tuple | None:
    """Coefficients writing ``target`` in terms of ``basis`` (exact), or None."""
    m = Matrix([[b[r] for b in basis] for r in range(len(target))], cols=len(basis))
    return solve(m, target)


def _transform_from_images(rows: Sequence[Sequence[Fraction]]) -> ProjectiveTransform | None:
    """T with ``rows[i] T = e_i``; None if the rows are dependent."""
    s = Matrix(rows)
    if s.det() == 0:
        return None
    return ProjectiveTransform(s.inverse())


@dataclass(frozen=True)
class _Fit:
    tag: Tag
    ts: tuple[Fraction, ...]
    transform: ProjectiveTransform
    permutation: tuple[int, ...]


def _read_t(moved: tuple) -> Fraction | None:
    if moved[0] != 0 or moved[1] == 0:
        return None
    return moved[2] / moved[1]


def _pencil_fits(a: Arrangement, tag: Tag) -> Iterator[_Fit]:
    """Candidate Type1 / Type2 fits: an (n-2)-fold point plus two residual lines."""
    n = a.n
    forms = a.forms
    for mp in multiple_points(a):
        if mp.multiplicity != n - 2:
            continue
        members = list(mp.lines)
        residual = [i for i in range(n) if i not in members]
        if len(residual) != 2:
            continue
        q = cross(forms[residual[0]], forms[residual[1]])
        aq_line = cross(mp.point, q)
        aq_member = next((i for i in members if proportional(forms[i], aq_line)), None)
        for r1, r2 in (residual, residual[::-1]):
            if tag is Tag.TYPE1:
                if aq_member is None:
                    continue
                yin = forms[aq_member]
                others = [i for i in members if i != aq_member]
                pairs = list(permutations(others, 2)) if len(others) > 1 else [(i, None) for i in others]
                for zi, ui in pairs:
                    zin = forms[zi]
                    mu = _combo(forms[r2], [forms[r1], yin])
                    if mu is None or mu[0] == 0 or mu[1] == 0:
                        continue
                    if ui is None:
                        lam = (mu[0], mu[1], Fraction(1))
                    else:
                        nu = _combo(forms[ui], [yin, zin])
                        if nu is None or nu[0] == 0 or nu[1] == 0:
                            continue
                        lam = (mu[0] * nu[0], mu[1] * nu[0], nu[1] * mu[1])
                    fit = _finish(a, tag, [forms[r1], yin, zin], lam, members)
                    if fit:
                        yield fit
            else:
                cands = [i for i in members if i != aq_member]
                for yi, zi in permutations(cands, 2):
                    mu = _combo(forms[r2], [forms[r1], forms[yi], forms[zi]])
                    if mu is None or any(c == 0 for c in mu):
                        continue
                    fit = _finish(a, tag, [forms[r1], forms[yi], forms[zi]], mu, members)
                    if fit:
                        yield fit


def _finish(a: Arrangement, tag: Tag, frame, lam, members) -> _Fit | None:
    rows = [tuple(l * c for c in f) for l, f in zip(lam, frame)]
    t = _transform_from_images(rows)
    if t is None:
        return None
    ts = []
    for i in members:
        v = _read_t(t.apply_form(a.forms[i]))
        if v is not None and v != 0:
            ts.append(v)
    ts = tuple(sorted(ts))
    try:
        perm = verify_fit(a, tag, ts, t)
    except ValueError:
        return None
    if perm is None:
        return None
    return _Fit(tag, ts, t, perm)


def _type3_fits(a: Arrangement) -> Iterator[_Fit]:
    if a.n != 6:
        return
    profile = sorted(mp.multiplicity for mp in multiple_points(a))
    if profile != [2, 2, 2, 3, 3, 3, 3]:
        return
    forms = a.forms
    for i1, i2, i3, i4 in permutations(range(6), 4):
        lam = _combo(forms[i4], [forms[i1], forms[i2], forms[i3]])
        if lam is None or any(c == 0 for c in lam):
            continue
        t = _transform_from_images([tuple(l * c for c in forms[i]) for l, i in zip(lam, (i1, i2, i3))])
        if t is None:
            continue
        perm = verify_fit(a, Tag.TYPE3, (), t)
        if perm is not None:
            yield _Fit(Tag.TYPE3, (), t, perm)
            return


def fit_family(a: Arrangement) -> Classification | None:
    """Canonical-form fitting only (no gates).  None if nothing fits."""
    tried = 0
    for fit in _type3_fits(a):
        return Classification(Tag.TYPE3, (), fit.transform, fit.permutation, candidates_tried=1)
    for tag in (Tag.TYPE1, Tag.TYPE2):
        best: _Fit | None = None
        for fit in _pencil_fits(a, tag):
            tried += 1
            if best is None or _key(fit.ts) < _key(best.ts):
                best = fit
        if best is not None:
            return Classification(tag, best.ts, best.transform, best.permutation, candidates_tried=tried)
    return None


def classify(a: Arrangement, report: QuadraticReport | None = None) -> Classification:
    """Gate on rank / linear syzygy / quadratic syzygy, then fit a canonical type."""
    if a.k != 3 or a.rank() != 3:
        return Classification(Tag.NOT_RANK3, reason=f"k = {a.k}, rank = {a.rank()}")
    report = report or minimal_quadratic(a)
    dims = report.dims
    if report.dim_d1 > 1:
        return Classification(Tag.HAS_LINEAR, dims=dims, reason=f"dim D_1 = {report.dim_d1}")
    if not report.exists:
        return Classification(Tag.NO_QUADRATIC, dims=dims, reason="dim D_2 = dim R_1 D_1")
    fit = fit_family(a)
    if fit is None:
        return Classification(
            Tag.THEOREM_VIOLATION,
            dims=dims,
            reason="gates passed but no canonical form fits",
        )
    return Classification(fit.tag, fit.params, fit.transform, fit.permutation, dims=dims,
                          candidates_tried=fit.candidates_tried)


def verify_classification(a: Arrangement, c: Classification) -> bool:
    """Independent re-check: forms match and F pulls back to a multiple of the canonical F."""
    if not c.in_family or c.transform is None:
        return False
    if verify_fit(a, c.tag, c.params, c.transform) is None:
        return False
    pulled = c.transform.pull_back(a.defining_polynomial())
    target = canonical_polynomial(c.tag, c.params)
    m, coef = target.leading()
    if m not in pulled.terms:
        return False
    return pulled == target.scale(pulled.terms[m] / coef)
