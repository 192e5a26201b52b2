"""Normal-ordered polynomial algebra on two canonical pairs.

The four phase variables are x_A, p_A (commutator ``i*kappa``) and x_B, p_B
(commutator ``i*hbar``); cross-pair variables commute.  A :class:`WeylPoly`
is a finite sum of normal-ordered monomials ``x_A^a p_A^b x_B^c p_B^d`` with
:class:`~qrfalg.scalar.Scalar` coefficients and total degree at most four
(enough for quadratic expressions in quadratic generators).

Slot 0 is the kappa pair (the reference-frame carrier), slot 1 the hbar pair
(the observed system).  Frame labels are metadata handled elsewhere; the
algebra itself is frame-agnostic.
"""

from __future__ import annotations

from math import comb, factorial

from . import scalar
from .scalar import ONE, ZERO, I, Scalar

__all__ = [
    "WeylPoly",
    "WeylError",
    "DegreeOverflow",
    "MAX_DEGREE",
    "VAR_NAMES",
    "x_A",
    "p_A",
    "x_B",
    "p_B",
    "one",
    "zero",
    "variable",
    "kinetic",
    "dilation_generator",
    "boost_charge",
    "pair_translation",
    "pair_boost",
    "momentum_product",
    "merged_dilation",
    "central_dilation",
]

MAX_DEGREE = 4
VAR_NAMES = ("x_A", "p_A", "x_B", "p_B")

# commutator scales per slot: [x, p] = i * PAIR_CONSTANT[slot]
PAIR_CONSTANT = (scalar.KAPPA, scalar.HBAR)


class WeylError(Exception):
    pass


class DegreeOverflow(WeylError):
    pass


def _coerce_scalar(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, int):
        return scalar.integer(v)
    return None


class WeylPoly:
    """Sum of normal-ordered monomials with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero() -> "WeylPoly":
        return WeylPoly({})

    @staticmethod
    def from_scalar(c) -> "WeylPoly":
        c = _coerce_scalar(c)
        return WeylPoly({(0, 0, 0, 0): c})

    @staticmethod
    def variable(idx: int) -> "WeylPoly":
        mono = [0, 0, 0, 0]
        mono[idx] = 1
        return WeylPoly({tuple(mono): ONE})

    # -- basics ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def coefficient(self, mono) -> Scalar:
        return self.terms.get(tuple(mono), ZERO)

    def scalar_part(self) -> Scalar:
        return self.terms.get((0, 0, 0, 0), ZERO)

    def is_scalar(self) -> bool:
        return all(m == (0, 0, 0, 0) for m in self.terms)

    def __eq__(self, other):
        if isinstance(other, WeylPoly):
            return self.terms == other.terms
        c = _coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self == WeylPoly.from_scalar(c)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    # -- linear structure -----------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return WeylPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _lift(other) - self

    def scale(self, c) -> "WeylPoly":
        c = _coerce_scalar(c)
        if c is None:
            raise WeylError(f"cannot scale by {c!r}")
        return WeylPoly({m: v * c for m, v in self.terms.items()})

    # -- multiplication -------------------------------------------------------

    def __mul__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            return self.scale(c)
        if isinstance(other, WeylPoly):
            return multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        c = _coerce_scalar(other)
        if c is not None:
            return self.scale(c)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = one()
        for _ in range(n):
            out = multiply(out, self)
        return out

    def substitute(self, bindings: dict) -> "WeylPoly":
        return WeylPoly({m: c.substitute(bindings) for m, c in self.terms.items()})

    def derivative(self, name: str = "t") -> "WeylPoly":
        return WeylPoly({m: c.derivative(name) for m, c in self.terms.items()})

    def __str__(self):
        from .expressions import format_operator

        return format_operator(self)

    def __repr__(self):
        return f"<WeylPoly {self}>"


def _lift(v):
    if isinstance(v, WeylPoly):
        return v
    c = _coerce_scalar(v)
    if c is None:
        return NotImplemented
    return WeylPoly.from_scalar(c)


def _reorder(m: int, n: int, const: Scalar):
    """Expand p^m x^n within one pair: list of (dx, dp, coefficient).

    Uses p^m x^n = sum_k C(m,k) C(n,k) k! (-i c)^k x^(n-k) p^(m-k) for
    [x, p] = i c.
    """
    out = []
    base = -(I * const)
    for k in range(min(m, n) + 1):
        coeff = scalar.integer(comb(m, k) * comb(n, k) * factorial(k)) * base**k
        out.append((n - k, m - k, coeff))
    return out


def _mono_mul(m1, m2, c):
    """Normal-ordered product of two monomials, yielding (mono, coeff) pairs."""
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    for xa, pa, fa in _reorder(b1, a2, PAIR_CONSTANT[0]):
        for xb, pb, fb in _reorder(d1, c2, PAIR_CONSTANT[1]):
            yield (a1 + xa, pa + b2, c1 + xb, pb + d2), c * fa * fb


def _mul_raw(p: WeylPoly, q: WeylPoly) -> WeylPoly:
    out: dict = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            for m, c in _mono_mul(m1, m2, c1 * c2):
                s = out.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
    return WeylPoly(out)


def multiply(p: WeylPoly, q: WeylPoly) -> WeylPoly:
    """Normal-ordered product; degree of the result must stay <= MAX_DEGREE."""
    if p.degree() + q.degree() > MAX_DEGREE:
        raise DegreeOverflow(
            f"product degree {p.degree()}+{q.degree()} exceeds {MAX_DEGREE}"
        )
    return _mul_raw(p, q)


def commutator(p: WeylPoly, q: WeylPoly) -> WeylPoly:
    """[p, q] in normal-ordered form; top-degree terms cancel exactly."""
    if p.degree() + q.degree() > MAX_DEGREE + 1:
        raise DegreeOverflow(
            f"commutator arguments of degrees {p.degree()}, {q.degree()} unsupported"
        )
    out = _mul_raw(p, q) - _mul_raw(q, p)
    if out.degree() > MAX_DEGREE:  # pragma: no cover - cannot happen algebraically
        raise DegreeOverflow("commutator left the degree-capped space")
    return out


def dagger(p: WeylPoly) -> WeylPoly:
    """Hermitian conjugate: reverse factor order, conjugate coefficients."""
    out = WeylPoly.zero()
    for (a, b, c, d), coeff in p.terms.items():
        term: dict = {}
        for xa, pa, fa in _reorder(b, a, PAIR_CONSTANT[0]):
            for xb, pb, fb in _reorder(d, c, PAIR_CONSTANT[1]):
                m = (xa, pa, xb, pb)
                s = term.get(m, ZERO) + coeff.conjugate() * fa * fb
                term[m] = s
        out = out + WeylPoly(term)
    return out


def is_hermitian(p: WeylPoly) -> bool:
    return dagger(p) == p


# ---------------------------------------------------------------------------
# variables and named quadratic generators

def variable(idx: int) -> WeylPoly:
    return WeylPoly.variable(idx)


def x_A() -> WeylPoly:
    return WeylPoly.variable(0)


def p_A() -> WeylPoly:
    return WeylPoly.variable(1)


def x_B() -> WeylPoly:
    return WeylPoly.variable(2)


def p_B() -> WeylPoly:
    return WeylPoly.variable(3)


def one() -> WeylPoly:
    return WeylPoly.from_scalar(ONE)


def zero() -> WeylPoly:
    return WeylPoly.zero()


def _pair_vars(slot: int):
    return WeylPoly.variable(2 * slot), WeylPoly.variable(2 * slot + 1)


def kinetic(slot: int, mass: Scalar) -> WeylPoly:
    """Free-particle Hamiltonian p^2 / (2 m) on one slot."""
    _, p = _pair_vars(slot)
    return (p * p).scale(ONE / (scalar.integer(2) * mass))


def dilation_generator(slot: int) -> WeylPoly:
    """Symmetrized dilation (x p + p x) / 2 on one slot."""
    x, p = _pair_vars(slot)
    return (x * p + p * x).scale(scalar.rational(1, 2))


def boost_charge(slot: int, mass: Scalar, time: Scalar) -> WeylPoly:
    """Galilean boost charge p t - m x on one slot."""
    x, p = _pair_vars(slot)
    return p.scale(time) - x.scale(mass)


def pair_translation() -> WeylPoly:
    """x_A (x) p_B: translation of B by the operator-valued parameter x_A."""
    return x_A() * p_B()


def pair_boost(mass_a: Scalar, mass_b: Scalar, time: Scalar) -> WeylPoly:
    """(p_A / m_A) (x) (p_B t - m_B x_B): boost of B controlled by p_A."""
    return (p_A() * boost_charge(1, mass_b, time)).scale(ONE / mass_a)


def momentum_product() -> WeylPoly:
    """p_A (x) p_B, the extra generator closing the time-dependent algebra."""
    return p_A() * p_B()


def merged_dilation() -> WeylPoly:
    """(m_B/m_A) (kappa D_B - hbar D_A), the single dilation generator."""
    ratio = scalar.M_B / scalar.M_A
    return (
        dilation_generator(1).scale(scalar.KAPPA)
        - dilation_generator(0).scale(scalar.HBAR)
    ).scale(ratio)


def central_dilation() -> WeylPoly:
    """(m_B/m_A) (kappa D_B + hbar D_A); commutes with the su(1,1) triple."""
    ratio = scalar.M_B / scalar.M_A
    return (
        dilation_generator(1).scale(scalar.KAPPA)
        + dilation_generator(0).scale(scalar.HBAR)
    ).scale(ratio)
