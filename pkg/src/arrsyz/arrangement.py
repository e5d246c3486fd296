"""Central hyperplane arrangements over Q: parsing, F, Jacobian, coordinates."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import (
    Matrix,
    Poly,
    default_names,
    normalize_projective,
    product,
    proportional,
    rank_of,
    rational_str,
    to_rational,
)


class ArrangementError(ValueError):
    """Invalid arrangement input (parse or validation failure)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class NotEssentialError(ArrangementError):
    pass


@dataclass(frozen=True)
class ProjectiveTransform:
    """Invertible k x k matrix T acting on linear forms by ``c -> c T``.

    A form ``l(x) = c . x`` pulled back along ``x -> T x`` has coefficient row
    ``c T``; the transformed arrangement is ``a o T``.
    """

    matrix: Matrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("transform must be square")
        if self.matrix.det() == 0:
            raise ValueError("transform must be invertible")

    @property
    def k(self) -> int:
        return self.matrix.rows

    def apply_form(self, coeffs: Sequence[Fraction]) -> tuple:
        m = self.matrix
        return tuple(sum((coeffs[i] * m[i, j] for i in range(m.rows)), Fraction(0)) for j in range(m.cols))

    def inverse(self) -> ProjectiveTransform:
        return ProjectiveTransform(self.matrix.inverse())

    def compose(self, other: ProjectiveTransform) -> ProjectiveTransform:
        """``self`` followed by ``other`` on forms: ``c -> (c T1) T2``."""
        return ProjectiveTransform(self.matrix @ other.matrix)

    def pull_back(self, p: Poly) -> Poly:
        """The polynomial ``p(T x)``."""
        k = self.k
        images = [Poly.linear(self.matrix.row(i)) for i in range(k)]
        return p.substitute_linear(images)

    def to_json(self) -> list[list[str]]:
        return [[rational_str(v) for v in row] for row in self.matrix.entries]


@dataclass(frozen=True)
class Arrangement:
    """A simple central arrangement: n pairwise non-proportional forms in k variables."""

    forms: tuple[tuple[Fraction, ...], ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        forms = tuple(tuple(to_rational(c) for c in f) for f in self.forms)
        if not forms:
            raise ArrangementError("an arrangement needs at least one form")
        k = len(forms[0])
        names = tuple(self.names) or default_names(k)
        if len(names) != k:
            raise ArrangementError("variable count does not match form length")
        for i, f in enumerate(forms):
            if len(f) != k:
                raise ArrangementError(f"form {i + 1} has {len(f)} coefficients, expected {k}")
            if not any(f):
                raise ArrangementError(f"form {i + 1} is zero")
        seen: dict[tuple, int] = {}
        for i, f in enumerate(forms):
            key = normalize_projective(f)
            if key in seen:
                raise ArrangementError(f"form {i + 1} duplicates form {seen[key] + 1} (proportional)")
            seen[key] = i
        object.__setattr__(self, "forms", forms)
        object.__setattr__(self, "names", names)

    @property
    def k(self) -> int:
        return len(self.forms[0])

    @property
    def n(self) -> int:
        return len(self.forms)

    def rank(self) -> int:
        return rank_of(self.forms, self.k)

    def is_essential(self) -> bool:
        return self.rank() == self.k

    def require_essential(self) -> None:
        if not self.is_essential():
            raise NotEssentialError(f"arrangement has rank {self.rank()} < k = {self.k}")

    def linear_forms(self) -> list[Poly]:
        return [Poly.linear(f) for f in self.forms]

    def defining_polynomial(self) -> Poly:
        return product(self.linear_forms(), self.k)

    def jacobian_generators(self) -> list[Poly]:
        F = self.defining_polynomial()
        return [F.diff(i) for i in range(self.k)]

    def dual_points(self) -> list[tuple]:
        return [normalize_projective(f) for f in self.forms]

    def transformed(self, t: ProjectiveTransform) -> Arrangement:
        return Arrangement(tuple(t.apply_form(f) for f in self.forms), self.names)

    def permuted(self, perm: Sequence[int]) -> Arrangement:
        return Arrangement(tuple(self.forms[i] for i in perm), self.names)

    def rescaled(self, scalars: Sequence[Fraction]) -> Arrangement:
        return Arrangement(tuple(tuple(s * c for c in f) for s, f in zip(scalars, self.forms)), self.names)

    def is_normalized(self) -> bool:
        """True when forms 0..k-1 are (multiples of) the coordinate forms x_1..x_k."""
        k = self.k
        if self.n < k:
            return False
        for i in range(k):
            f = self.forms[i]
            if f[i] == 0 or any(c != 0 for j, c in enumerate(f) if j != i):
                return False
        return True

    def form_str(self, i: int) -> str:
        return Poly.linear(self.forms[i]).format(self.names)

    def to_text(self) -> str:
        lines = ["vars: " + ",".join(self.names)]
        lines += [self.form_str(i).replace("*", "").replace(" ", "") for i in range(self.n)]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"vars": list(self.names), "forms": [[rational_str(c) for c in f] for f in self.forms]}

    def __str__(self) -> str:
        return " * ".join(f"({self.form_str(i)})" for i in range(self.n))


def normalize_coordinates(a: Arrangement) -> tuple[Arrangement, ProjectiveTransform, list[int]]:
    """Move k independent forms to the front and map them to x_1..x_k.

    Forms are scanned in order and kept greedily while they raise the rank.
    Returns ``(a', T, perm)`` with ``a'.forms[i] = a.forms[perm[i]] T`` and
    ``a'.forms[i] = e_i`` for ``i < k``.
    """
    a.require_essential()
    k = a.k
    chosen: list[int] = []
    for i, f in enumerate(a.forms):
        if rank_of([a.forms[j] for j in chosen] + [f], k) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    perm = chosen + [i for i in range(a.n) if i not in chosen]
    t = ProjectiveTransform(Matrix([a.forms[i] for i in chosen]).inverse())
    moved = tuple(t.apply_form(a.forms[i]) for i in perm)
    return Arrangement(moved, a.names), t, perm


# ---------------------------------------------------------------------------
# Input formats
# ---------------------------------------------------------------------------

_NUMBER = r"\d+(?:/\d+)?"


def parse_linear_form(text: str, names: Sequence[str], line: int | None = None) -> tuple:
    """Parse e.g. ``2x - 1/3y + z`` or ``3*x + y/2`` into a coefficient tuple."""
    var_alt = "|".join(re.escape(n) for n in sorted(names, key=len, reverse=True))
    term = re.compile(
        rf"\s*([+-])?\s*({_NUMBER})?\s*\*?\s*({var_alt})(?:\s*/\s*(\d+))?\s*"
    )
    coeffs = [Fraction(0)] * len(names)
    pos = 0
    s = text.strip()
    if not s:
        raise ArrangementError("empty form", line)
    first = True
    while pos < len(s):
        m = term.match(s, pos)
        if not m or m.end() == pos:
            raise ArrangementError(f"cannot parse {s[pos:]!r}", line)
        sign, num, var, den = m.groups()
        if sign is None and not first:
            raise ArrangementError(f"missing operator before {s[m.start():m.end()].strip()!r}", line)
        c = Fraction(num) if num else Fraction(1)
        if den:
            if int(den) == 0:
                raise ArrangementError("division by zero", line)
            c /= int(den)
        if sign == "-":
            c = -c
        coeffs[names.index(var)] += c
        pos = m.end()
        first = False
    return tuple(coeffs)


def parse_arrangement(text: str) -> Arrangement:
    """Parse the text format (``vars:`` header + one form per line) or JSON."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return arrangement_from_json(json.loads(stripped))
    names: tuple[str, ...] | None = None
    forms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if names is None:
            if not line.lower().startswith("vars:"):
                raise ArrangementError("first line must be 'vars: <names>'", lineno)
            names = tuple(v.strip() for v in line[5:].split(",") if v.strip())
            if not names:
                raise ArrangementError("no variables declared", lineno)
            bad = [v for v in names if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v)]
            if bad or len(set(names)) != len(names):
                raise ArrangementError(f"invalid variable list {line[5:].strip()!r}", lineno)
            continue
        f = parse_linear_form(line, names, lineno)
        if not any(f):
            raise ArrangementError("zero form", lineno)
        for j, g in enumerate(forms):
            if proportional(f, g):
                raise ArrangementError(f"duplicate form (proportional to form {j + 1})", lineno)
        forms.append(f)
    if names is None:
        raise ArrangementError("missing 'vars:' header")
    if not forms:
        raise ArrangementError("no forms given")
    return Arrangement(tuple(forms), names)


def arrangement_from_json(obj: dict) -> Arrangement:
    try:
        forms = obj["forms"]
    except (KeyError, TypeError):
        raise ArrangementError("JSON arrangement needs a 'forms' list") from None
    rows = []
    for i, row in enumerate(forms, start=1):
        try:
            rows.append(tuple(to_rational(v) for v in row))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ArrangementError(f"form {i}: {exc}") from None
    names = tuple(obj.get("vars") or ())
    if rows and names and any(len(r) != len(names) for r in rows):
        raise ArrangementError("inconsistent variable count")
    if rows and len({len(r) for r in rows}) > 1:
        raise ArrangementError("inconsistent variable count")
    return Arrangement(tuple(rows), names)


def load_arrangement(path: str) -> Arrangement:
    with open(path, encoding="utf-8") as fh:
        return parse_arrangement(fh.read())


def from_strings(forms: Sequence[str], names: Sequence[str] = ("x", "y", "z")) -> Arrangement:
    """Convenience constructor: ``from_strings(["x", "y", "x+y"])``."""
    return Arrangement(tuple(parse_linear_form(f, names) for f in forms), tuple(names))
