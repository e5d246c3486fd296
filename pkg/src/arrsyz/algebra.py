"""Exact rational linear algebra and sparse homogeneous polynomials.

Scalars are :class:`fractions.Fraction` throughout; nothing here ever touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction
Vector = tuple  # tuple of Fraction


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions and strings like ``"3/7"`` to a Fraction.

    Floats are rejected: they would smuggle rounding into exact code.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = [tuple(to_rational(v) for v in row) for row in data]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> Matrix:
        return Matrix([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.cols == other.cols and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(rational_str(v) for v in r) for r in self.entries)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            cols = [other.column(j) for j in range(other.cols)]
            return Matrix(
                [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.entries],
                cols=other.cols,
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.entries)

    def rref(self) -> tuple[Matrix, list[int]]:
        return rref(self)

    def rank(self) -> int:
        return len(rref(self)[1])

    def nullspace(self) -> list[tuple]:
        return nullspace(self)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.entries]
        n = self.rows
        sign = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                sign = -sign
            for r in range(c + 1, n):
                if m[r][c] != 0:
                    f = m[r][c] / m[c][c]
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        out = sign
        for i in range(n):
            out *= m[i][i]
        return out

    def inverse(self) -> Matrix:
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self.entries)])
        red, piv = rref(aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix([red.row(i)[n:] for i in range(n)], cols=n)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pivot_row = rows[r]
        inv = 1 / pivot_row[c]
        if inv != 1:
            pivot_row = rows[r] = [v * inv for v in pivot_row]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != 0:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns (rank = number of pivots)."""
    rows = [list(r) for r in m.entries]
    pivots = _rref_rows(rows, m.cols)
    return Matrix(rows, cols=m.cols), pivots


def nullspace_rows(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple]:
    """Right nullspace basis of a list of rows, free-variable convention.

    One basis vector per non-pivot column, with that free variable set to 1
    and the other free variables 0.
    """
    work = [list(r) for r in rows]
    pivots = _rref_rows(work, ncols)
    pivot_set = set(pivots)
    basis = []
    zero = Fraction(0)
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [zero] * ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -work[i][free]
        basis.append(tuple(v))
    return basis


def nullspace(m: Matrix) -> list[tuple]:
    return nullspace_rows(m.entries, m.cols)


def rank_of(vectors: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    vectors = list(vectors)
    if not vectors:
        return 0
    ncols = len(vectors[0]) if ncols is None else ncols
    work = [list(v) for v in vectors]
    return len(_rref_rows(work, ncols))


def solve(m: Matrix, rhs: Sequence) -> tuple | None:
    """One solution of ``m x = rhs`` (free variables set to 0), or None."""
    aug = Matrix([list(r) + [to_rational(b)] for r, b in zip(m.entries, rhs)], cols=m.cols + 1)
    red, piv = rref(aug)
    if piv and piv[-1] == m.cols:
        return None
    x = [Fraction(0)] * m.cols
    for i, pc in enumerate(piv):
        x[pc] = red[i, m.cols]
    return tuple(x)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def normalize_projective(v: Sequence[Fraction]) -> tuple:
    """Scale so the first nonzero coordinate is 1."""
    lead = next((c for c in v if c != 0), None)
    if lead is None:
        raise ValueError("zero vector has no projective point")
    return tuple(Fraction(c) / lead for c in v)


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    return rank_of([list(u), list(v)]) < 2


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

DEFAULT_NAMES = ("x", "y", "z", "w")


def default_names(k: int) -> tuple[str, ...]:
    if k <= len(DEFAULT_NAMES):
        return DEFAULT_NAMES[:k]
    return tuple(f"x{i + 1}" for i in range(k))


def monomials(k: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of degree ``d`` in ``k`` variables, grlex-descending."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(k), d):
        e = [0] * k
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


class NotDivisibleError(ArithmeticError):
    """Raised by :meth:`Poly.divide_exact` when the remainder is nonzero."""


class Poly:
    """Sparse homogeneous polynomial over Q in ``k`` variables.

    ``terms`` maps exponent tuples to nonzero Fractions.  The zero polynomial
    has no terms and ``degree`` None.
    """

    __slots__ = ("k", "terms", "degree")

    def __init__(self, k: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.k = k
        clean: dict[tuple[int, ...], Fraction] = {}
        degree = None
        for mono, c in (terms or {}).items():
            c = to_rational(c)
            if c == 0:
                continue
            mono = tuple(mono)
            if len(mono) != k or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent vector {mono} for k={k}")
            d = sum(mono)
            if degree is None:
                degree = d
            elif d != degree:
                raise ValueError("polynomial is not homogeneous")
            clean[mono] = clean.get(mono, Fraction(0)) + c
        self.terms = {m: c for m, c in clean.items() if c != 0}
        self.degree = degree if self.terms else None

    @classmethod
    def _raw(cls, k: int, terms: dict, degree) -> Poly:
        p = cls.__new__(cls)
        p.k = k
        p.terms = terms
        p.degree = degree if terms else None
        return p

    @classmethod
    def zero(cls, k: int) -> Poly:
        return cls._raw(k, {}, None)

    @classmethod
    def constant(cls, k: int, c) -> Poly:
        return cls(k, {(0,) * k: c})

    @classmethod
    def variable(cls, k: int, i: int) -> Poly:
        e = [0] * k
        e[i] = 1
        return cls(k, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence) -> Poly:
        k = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        return cls(k, terms)

    @classmethod
    def from_vector(cls, k: int, d: int, coeffs: Sequence, basis: Sequence[tuple[int, ...]] | None = None) -> Poly:
        basis = monomials(k, d) if basis is None else basis
        return cls(k, dict(zip(basis, coeffs)))

    def to_vector(self, d: int, basis: Sequence[tuple[int, ...]] | None = None) -> tuple:
        basis = monomials(self.k, d) if basis is None else basis
        if self.degree is not None and self.degree != d:
            raise ValueError(f"polynomial has degree {self.degree}, not {d}")
        return tuple(self.terms.get(m, Fraction(0)) for m in basis)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.k == other.k and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.terms
            return self.terms == {(0,) * self.k: Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.k, frozenset(self.terms.items())))

    def _check(self, other: Poly) -> None:
        if self.k != other.k:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self + Poly.constant(self.k, other)
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValueError("sum of homogeneous polynomials of different degrees")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(self.k, out, self.degree)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.k, {m: -c for m, c in self.terms.items()}, self.degree)

    def __sub__(self, other) -> Poly:
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def scale(self, c) -> Poly:
        c = to_rational(c)
        if c == 0:
            return Poly.zero(self.k)
        return Poly._raw(self.k, {m: v * c for m, v in self.terms.items()}, self.degree)

    def __mul__(self, other) -> Poly:
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.k)
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw(self.k, {m: c for m, c in out.items() if c}, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        out = Poly.constant(self.k, 1)
        for _ in range(e):
            out = out * self
        return out

    def diff(self, var: int) -> Poly:
        """Partial derivative with respect to variable ``var`` (0-based)."""
        out = {}
        for m, c in self.terms.items():
            e = m[var]
            if e:
                nm = m[:var] + (e - 1,) + m[var + 1:]
                out[nm] = c * e
        return Poly._raw(self.k, out, None if self.degree is None else self.degree - 1)

    partial_derivative = diff

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        m = max(self.terms)
        return m, self.terms[m]

    def divide_exact(self, q: Poly) -> Poly:
        """Exact quotient ``self / q``; raises NotDivisibleError otherwise."""
        self._check(q)
        if not q.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.terms:
            return Poly.zero(self.k)
        if self.degree < q.degree:
            raise NotDivisibleError("divisor has larger degree")
        qm, qc = q.leading()
        rem = dict(self.terms)
        quot: dict[tuple[int, ...], Fraction] = {}
        while rem:
            m = max(rem)
            if any(a < b for a, b in zip(m, qm)):
                raise NotDivisibleError("nonzero remainder")
            t = tuple(a - b for a, b in zip(m, qm))
            c = rem[m] / qc
            quot[t] = c
            for m2, c2 in q.terms.items():
                mm = tuple(a + b for a, b in zip(t, m2))
                v = rem.get(mm, 0) - c * c2
                if v:
                    rem[mm] = v
                else:
                    rem.pop(mm, None)
        return Poly._raw(self.k, quot, self.degree - q.degree)

    def divides(self, p: Poly) -> bool:
        try:
            p.divide_exact(self)
        except NotDivisibleError:
            return False
        return True

    def evaluate(self, point: Sequence) -> Fraction:
        pt = [to_rational(v) for v in point]
        if len(pt) != self.k:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(pt, m):
                if e:
                    t *= v**e
            total += t
        return total

    def substitute_linear(self, images: Sequence[Poly]) -> Poly:
        """Replace variable ``i`` by the linear form ``images[i]``."""
        if len(images) != self.k:
            raise ValueError("need one image per variable")
        k2 = images[0].k
        out = Poly.zero(k2)
        powers: dict[tuple[int, int], Poly] = {}

        def pw(i: int, e: int) -> Poly:
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e
            return powers[key]

        for m, c in self.terms.items():
            t = Poly.constant(k2, c)
            for i, e in enumerate(m):
                if e:
                    t = t * pw(i, e)
            out = out + t
        return out

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in graded lex order, x_1 > x_2 > ... > x_k."""
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), mc[0]), reverse=True)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = default_names(self.k) if names is None else names
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            mag = abs(c)
            if not mono:
                body = rational_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rational_str(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Poly({self.format()})"

    def to_json(self, names: Sequence[str] | None = None) -> dict[str, str]:
        names = default_names(self.k) if names is None else names
        out = {}
        for m, c in self.sorted_terms():
            key = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e) or "1"
            out[key] = rational_str(c)
        return out


def product(polys: Iterable[Poly], k: int) -> Poly:
    out = Poly.constant(k, 1)
    for p in polys:
        out = out * p
    return out


def iter_nonzero(v: Sequence[Fraction]) -> Iterator[tuple[int, Fraction]]:
    return ((i, c) for i, c in enumerate(v) if c != 0)
