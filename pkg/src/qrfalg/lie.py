"""Lie-algebra layer: bases, structure constants, closure, change of basis.

Structure constants are always computed from the Weyl-algebra commutator and
exact linear decomposition; the known bracket tables live in
:mod:`qrfalg.tables` purely as expected-value fixtures.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg, scalar, weyl
from .scalar import Scalar, ZERO
from .weyl import WeylPoly

__all__ = [
    "LieError",
    "NotInSpan",
    "ClosureFailure",
    "SingularChangeOfBasis",
    "LieBasis",
    "StructureConstants",
    "decompose",
    "structure_constants",
    "change_of_basis",
    "casimir_eval",
    "relational_r4",
    "su11_with_dilation",
    "dynamical_d7",
    "six_dim_t0",
    "galilei_rep",
    "heisenberg_pair",
]


class LieError(Exception):
    pass


class NotInSpan(LieError):
    def __init__(self, residual: WeylPoly):
        super().__init__(f"element outside the span; residual {residual}")
        self.residual = residual


class ClosureFailure(LieError):
    def __init__(self, pair, residual: WeylPoly):
        super().__init__(f"bracket [{pair[0]}, {pair[1]}] leaves the span; residual {residual}")
        self.pair = pair
        self.residual = residual


class SingularChangeOfBasis(LieError):
    pass


@dataclass(frozen=True)
class LieBasis:
    """Ordered named operator basis, linearly independent over Scalar."""

    names: tuple
    elements: tuple

    def __post_init__(self):
        if len(self.names) != len(self.elements):
            raise LieError("names and elements differ in length")
        if len(set(self.names)) != len(self.names):
            raise LieError("duplicate generator names")
        rows = _coefficient_rows(self.elements)
        if linalg.matrix_rank(rows) != len(self.elements):
            raise LieError("basis elements are linearly dependent")

    def __len__(self):
        return len(self.elements)

    def element(self, name: str) -> WeylPoly:
        return self.elements[self.names.index(name)]

    def substitute(self, bindings: dict) -> "LieBasis":
        return LieBasis(
            self.names, tuple(e.substitute(bindings) for e in self.elements)
        )


def _coefficient_rows(elements):
    """Rows indexed by Weyl monomials, columns by basis elements."""
    monomials = sorted({m for e in elements for m in e.terms})
    return tuple(
        tuple(e.terms.get(m, ZERO) for e in elements) for m in monomials
    )


def decompose(p: WeylPoly, basis: LieBasis):
    """Exact coefficients of p over the basis, or NotInSpan(residual)."""
    monomials = sorted({m for e in basis.elements for m in e.terms} | set(p.terms))
    rows = tuple(
        tuple(e.terms.get(m, ZERO) for e in basis.elements) for m in monomials
    )
    rhs = tuple(p.terms.get(m, ZERO) for m in monomials)
    x, consistent = linalg.rref_solve(rows, rhs)
    if not consistent:
        combo = weyl.zero()
        for c, e in zip(x, basis.elements):
            combo = combo + e.scale(c)
        raise NotInSpan(p - combo)
    return tuple(x)


class StructureConstants:
    """Bracket table [b_i, b_j] = sum_k c_ij^k b_k over a LieBasis.

    Both orders of every pair are computed independently, so antisymmetry is
    verified rather than assumed.
    """

    def __init__(self, basis: LieBasis, coeffs: dict):
        self.basis = basis
        self.coeffs = coeffs

    def coeff(self, i: int, j: int) -> tuple:
        return self.coeffs[(i, j)]

    def antisymmetry_holds(self) -> bool:
        n = len(self.basis)
        return all(
            all((a + b).is_zero() for a, b in zip(self.coeffs[(i, j)], self.coeffs[(j, i)]))
            for i in range(n)
            for j in range(n)
            if i != j
        )

    def jacobi_holds(self) -> bool:
        """Jacobi identity as an exact Scalar identity on the table."""
        n = len(self.basis)

        def c(i, j, k):
            if i == j:
                return ZERO
            return self.coeffs[(i, j)][k]

        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    for l in range(n):
                        total = ZERO
                        for m in range(n):
                            total = (
                                total
                                + c(i, j, m) * c(m, k, l)
                                + c(j, k, m) * c(m, i, l)
                                + c(k, i, m) * c(m, j, l)
                            )
                        if not total.is_zero():
                            return False
        return True

    def table(self) -> dict:
        """Upper-triangle bracket table keyed by names, zero entries dropped."""
        names = self.basis.names
        out = {}
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                entry = {
                    names[k]: c
                    for k, c in enumerate(self.coeffs[(i, j)])
                    if not c.is_zero()
                }
                out[(names[i], names[j])] = entry
        return out


def structure_constants(basis: LieBasis) -> StructureConstants:
    """Pairwise brackets decomposed over the basis; ClosureFailure otherwise."""
    n = len(basis)
    coeffs = {}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            bracket = weyl.commutator(basis.elements[i], basis.elements[j])
            try:
                coeffs[(i, j)] = decompose(bracket, basis)
            except NotInSpan as exc:
                raise ClosureFailure(
                    (basis.names[i], basis.names[j]), exc.residual
                ) from exc
    return StructureConstants(basis, coeffs)


def change_of_basis(basis: LieBasis, matrix, names) -> LieBasis:
    """New basis with rows of `matrix` giving coefficients over the old one."""
    try:
        linalg.mat_inv(tuple(tuple(row) for row in matrix))
    except linalg.SingularMatrix as exc:
        raise SingularChangeOfBasis(str(exc)) from exc
    elements = []
    for row in matrix:
        e = weyl.zero()
        for c, old in zip(row, basis.elements):
            e = e + old.scale(c)
        elements.append(e)
    return LieBasis(tuple(names), tuple(elements))


def casimir_eval(terms, basis: LieBasis) -> WeylPoly:
    """Evaluate a degree<=2 polynomial in basis names in the representation.

    `terms` is an iterable of (coefficient, name_tuple) with name tuples of
    length 0, 1 or 2; products are taken in the written order.
    """
    out = weyl.zero()
    for coeff, names in terms:
        factor = weyl.one()
        for name in names:
            factor = weyl.multiply(factor, basis.element(name))
        out = out + factor.scale(coeff)
    return out


# ---------------------------------------------------------------------------
# named bases

def relational_r4() -> LieBasis:
    """Time-frozen translation/boost pair plus the two dilations."""
    t0 = scalar.ZERO
    return LieBasis(
        ("P_AB", "K_AB", "D_A", "D_B"),
        (
            weyl.pair_translation(),
            weyl.pair_boost(scalar.M_A, scalar.M_B, t0),
            weyl.dilation_generator(0),
            weyl.dilation_generator(1),
        ),
    )


def su11_with_dilation() -> LieBasis:
    """{P_AB, K_AB, D} at frozen time, D the merged dilation generator."""
    t0 = scalar.ZERO
    return LieBasis(
        ("P_AB", "K_AB", "D"),
        (
            weyl.pair_translation(),
            weyl.pair_boost(scalar.M_A, scalar.M_B, t0),
            weyl.merged_dilation(),
        ),
    )


def dynamical_d7(time: Scalar = scalar.T) -> LieBasis:
    """The seven-generator algebra; `time` symbolic by default."""
    return LieBasis(
        ("P_AB", "K_AB", "D_A", "D_B", "Q_A", "Q_B", "T"),
        (
            weyl.pair_translation(),
            weyl.pair_boost(scalar.M_A, scalar.M_B, time),
            weyl.dilation_generator(0),
            weyl.dilation_generator(1),
            weyl.kinetic(0, scalar.M_A),
            weyl.kinetic(1, scalar.M_B),
            weyl.momentum_product(),
        ),
    )


def six_dim_t0() -> LieBasis:
    """Six-dimensional frozen-time subalgebra with the merged dilation."""
    t0 = scalar.ZERO
    return LieBasis(
        ("P_AB", "K_AB", "D", "Q_A", "Q_B", "T"),
        (
            weyl.pair_translation(),
            weyl.pair_boost(scalar.M_A, scalar.M_B, t0),
            weyl.merged_dilation(),
            weyl.kinetic(0, scalar.M_A),
            weyl.kinetic(1, scalar.M_B),
            weyl.momentum_product(),
        ),
    )


def galilei_rep(time: Scalar = scalar.T) -> LieBasis:
    """One-particle representation of the centrally extended Galilei algebra."""
    return LieBasis(
        ("G", "P0", "P", "M"),
        (
            weyl.boost_charge(1, scalar.M_B, time),
            weyl.kinetic(1, scalar.M_B),
            -weyl.p_B(),
            weyl.one().scale(scalar.M_B),
        ),
    )


def heisenberg_pair() -> LieBasis:
    """{x_A, p_A, 1}: the frame-carrier Heisenberg-Weyl triple."""
    return LieBasis(("x_A", "p_A", "one"), (weyl.x_A(), weyl.p_A(), weyl.one()))
