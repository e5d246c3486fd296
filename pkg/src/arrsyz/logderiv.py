"""Graded pieces of the module of logarithmic derivations.

A derivation ``theta = sum P_i d/dx_i`` is logarithmic for an arrangement when
``theta(l)`` is divisible by ``l`` for every defining form ``l``.  In degree d
this is a finite linear system in the coefficients of the P_i, solved here
exactly over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import NotDivisibleError, Poly, default_names, monomials, nullspace_rows, rank_of
from .arrangement import Arrangement


class NotLogarithmicError(ArithmeticError):
    pass


class EulerMultipleError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Derivation:
    """``sum components[i] * d/dx_i`` with all components homogeneous of one degree."""

    degree: int
    components: tuple[Poly, ...]

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("derivation needs k >= 1 components")
        if all(c.is_zero() for c in comps):
            raise ValueError("the zero derivation is not allowed")
        for c in comps:
            if c.k != len(comps):
                raise ValueError("component ring does not match number of components")
            if not c.is_zero() and c.degree != self.degree:
                raise ValueError(f"component of degree {c.degree} in a degree-{self.degree} derivation")
        object.__setattr__(self, "components", comps)

    @property
    def k(self) -> int:
        return len(self.components)

    @classmethod
    def from_vector(cls, k: int, d: int, vec: Sequence[Fraction]) -> Derivation:
        basis = monomials(k, d)
        m = len(basis)
        return cls(d, tuple(Poly.from_vector(k, d, vec[i * m:(i + 1) * m], basis) for i in range(k)))

    def to_vector(self) -> tuple:
        basis = monomials(self.k, self.degree)
        out: list[Fraction] = []
        for c in self.components:
            out.extend(c.to_vector(self.degree, basis))
        return tuple(out)

    def apply(self, p: Poly) -> Poly:
        """theta(p) = sum P_i * dp/dx_i."""
        out = Poly.zero(self.k)
        for c, i in zip(self.components, range(self.k)):
            if c:
                out = out + c * p.diff(i)
        return out

    def __add__(self, other: Derivation) -> Derivation:
        return Derivation(self.degree, tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> Derivation:
        return Derivation(self.degree, tuple(p.scale(c) for p in self.components))

    def times(self, p: Poly) -> Derivation:
        """Multiply every component by the homogeneous polynomial ``p``."""
        return Derivation(self.degree + p.degree, tuple(c * p for c in self.components))

    def format(self, names: Sequence[str] | None = None) -> str:
        names = default_names(self.k) if names is None else names
        return " + ".join(f"({c.format(names)})*d{n}" for c, n in zip(self.components, names) if c) or "0"

    def __str__(self) -> str:
        return self.format()

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {"degree": self.degree, "components": [c.format(names) for c in self.components]}


@dataclass(frozen=True)
class DerivationSpace:
    degree: int
    basis: tuple[Derivation, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def euler_derivation(k: int) -> Derivation:
    if k < 1:
        raise ValueError("k must be positive")
    return Derivation(1, tuple(Poly.variable(k, i) for i in range(k)))


@lru_cache(maxsize=None)
def _reduction_images(form: tuple, d: int) -> tuple[int, tuple, dict]:
    """Images of the degree-d monomials modulo ``form``.

    The pivot variable (first nonzero coefficient) is replaced by the
    expression it takes on the hyperplane; the images live in the remaining
    variables.  Returns ``(pivot, target_monomials, {monomial: {target: coeff}})``.
    """
    k = len(form)
    pivot = next(i for i, c in enumerate(form) if c != 0)
    sub = [Poly.variable(k, i) for i in range(k)]
    lead = form[pivot]
    sub[pivot] = Poly.linear([Fraction(0) if i == pivot else -c / lead for i, c in enumerate(form)])
    images = {}
    targets: set = set()
    for m in monomials(k, d):
        img = Poly.constant(k, 1)
        for i, e in enumerate(m):
            if e:
                img = img * sub[i] ** e
        images[m] = dict(img.terms)
        targets.update(img.terms)
    return pivot, tuple(sorted(targets, reverse=True)), images


def constraint_rows(a: Arrangement, d: int) -> list[list[Fraction]]:
    """Linear conditions on the unknown coefficients of (P_1..P_k) in degree d.

    Unknown ``i * M + s`` is the coefficient of the s-th degree-d monomial
    (grlex order) in P_i.  For each form the residue of theta(l) modulo l
    must vanish.
    """
    k = a.k
    basis = monomials(k, d)
    m_count = len(basis)
    rows: list[list[Fraction]] = []
    zero = Fraction(0)
    for form in a.forms:
        _, targets, images = _reduction_images(form, d)
        index = {t: r for r, t in enumerate(targets)}
        block = [[zero] * (k * m_count) for _ in targets]
        for i, c in enumerate(form):
            if c == 0:
                continue
            for s, mono in enumerate(basis):
                col = i * m_count + s
                for t, v in images[mono].items():
                    block[index[t]][col] += c * v
        rows.extend(r for r in block if any(r))
    return rows


def derivation_space(a: Arrangement, d: int) -> DerivationSpace:
    """Basis of the degree-d logarithmic derivations of ``a``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    k = a.k
    ncols = k * len(monomials(k, d))
    null = nullspace_rows(constraint_rows(a, d), ncols)
    return DerivationSpace(d, tuple(Derivation.from_vector(k, d, v) for v in null))


def is_logarithmic(theta: Derivation, a: Arrangement) -> bool:
    for f in a.linear_forms():
        try:
            theta.apply(f).divide_exact(f)
        except NotDivisibleError:
            return False
    return True


@dataclass(frozen=True)
class QuadraticReport:
    dim_d1: int
    dim_d2: int
    dim_t: int
    theta: Derivation | None
    d1: DerivationSpace
    d2: DerivationSpace

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.dim_d1, self.dim_d2, self.dim_t)

    @property
    def exists(self) -> bool:
        return self.theta is not None


def products_span(d1: DerivationSpace, k: int) -> list[tuple]:
    """Coefficient vectors of x_j * theta for theta in the degree-1 basis."""
    return [th.times(Poly.variable(k, j)).to_vector() for th in d1.basis for j in range(k)]


def minimal_quadratic(a: Arrangement) -> QuadraticReport:
    """Find a quadratic logarithmic derivation outside R_1 * D_1, if any.

    The representative is the first degree-2 basis vector that raises the
    rank of the product span.
    """
    a.require_essential()
    d1 = derivation_space(a, 1)
    d2 = derivation_space(a, 2)
    span = products_span(d1, a.k)
    ncols = a.k * len(monomials(a.k, 2))
    dim_t = rank_of(span, ncols)
    theta = None
    if d2.dim > dim_t:
        for cand in d2.basis:
            if rank_of(span + [cand.to_vector()], ncols) > dim_t:
                theta = cand
                break
    return QuadraticReport(d1.dim, d2.dim, dim_t, theta, d1, d2)


def derivation_to_syzygy(theta: Derivation, a: Arrangement) -> tuple[tuple[Poly, ...], Poly]:
    """Turn a logarithmic derivation into a syzygy on the Jacobian ideal.

    With ``p = theta(F) / F`` the derivation ``n*theta - p*theta_E`` kills F,
    so its components annihilate (F_x1, ..., F_xk).  Returns the syzygy and p.
    """
    F = a.defining_polynomial()
    try:
        p = theta.apply(F).divide_exact(F)
    except NotDivisibleError:
        raise NotLogarithmicError("theta(F) is not divisible by F") from None
    k = a.k
    comps = tuple(c.scale(a.n) - p * Poly.variable(k, i) for i, c in enumerate(theta.components))
    if all(c.is_zero() for c in comps):
        raise EulerMultipleError("derivation is a multiple of the Euler derivation")
    return comps, p


def syzygy_residual(syzygy: Sequence[Poly], a: Arrangement) -> Poly:
    """sum S_i * dF/dx_i; zero exactly when ``syzygy`` is a syzygy."""
    out = Poly.zero(a.k)
    for s, g in zip(syzygy, a.jacobian_generators()):
        out = out + s * g
    return out
