"""Frozen-time six-generator subalgebra and its (2+1) Poincare isomorphism."""

from __future__ import annotations

from dataclasses import dataclass

from . import lie, linalg, scalar, tables, weyl
from .scalar import HBAR, I, KAPPA, M_A, M_B, ONE, RT, Scalar, ZERO
from .weyl import WeylPoly

__all__ = [
    "build_sixD_t0",
    "to_poincare",
    "poincare_rep_explicit",
    "PoincareVerification",
    "verify_poincare",
    "casimirs",
    "casimirs_vanish",
    "light_speed_rescaled_rows",
]

POINCARE_NAMES = ("J", "K1", "K2", "P0", "P1", "P2")


def build_sixD_t0() -> lie.LieBasis:
    """{P_AB, K_AB, D, Q_A, Q_B, T} at frozen time; closure is verified."""
    basis = lie.six_dim_t0()
    lie.structure_constants(basis)  # raises ClosureFailure if it does not close
    return basis


def to_poincare(basis: lie.LieBasis = None) -> lie.LieBasis:
    """Apply the rotation/boost/translation change of basis."""
    basis = basis or build_sixD_t0()
    return lie.change_of_basis(basis, tables.poincare_change_of_basis(), POINCARE_NAMES)


def poincare_rep_explicit() -> lie.LieBasis:
    """The six generators written out directly on the two-pair phase space."""
    half_rt = ONE / (2 * RT)
    j = (weyl.x_A() * weyl.p_B() - weyl.p_A() * weyl.x_B()).scale(half_rt)
    k1 = (weyl.x_A() * weyl.p_B() + weyl.p_A() * weyl.x_B()).scale(half_rt)
    k2 = weyl.dilation_generator(1).scale(ONE / (2 * HBAR)) - weyl.dilation_generator(
        0
    ).scale(ONE / (2 * KAPPA))
    p0 = (weyl.p_A() ** 2).scale(HBAR / 2) + (weyl.p_B() ** 2).scale(KAPPA / 2)
    p1 = (weyl.p_A() * weyl.p_B()).scale(RT)
    p2 = -(weyl.p_A() ** 2).scale(HBAR / 2) + (weyl.p_B() ** 2).scale(KAPPA / 2)
    return lie.LieBasis(POINCARE_NAMES, (j, k1, k2, p0, p1, p2))


@dataclass(frozen=True)
class PoincareVerification:
    table_matches: bool
    round_trip_matches: bool
    rep_matches: bool
    hermitian: bool

    @property
    def passed(self) -> bool:
        return (
            self.table_matches
            and self.round_trip_matches
            and self.rep_matches
            and self.hermitian
        )


def verify_poincare() -> PoincareVerification:
    """Derived brackets versus the fixture table, plus the inverse map."""
    six = build_sixD_t0()
    poinc = to_poincare(six)
    table_matches = lie.structure_constants(poinc).table() == tables.poincare_table()
    back = lie.change_of_basis(
        poinc, tables.poincare_inverse_change_of_basis(), six.names
    )
    round_trip_matches = back.elements == six.elements
    forward = tables.poincare_change_of_basis()
    inverse = tables.poincare_inverse_change_of_basis()
    product = linalg.mat_mul(inverse, forward)
    round_trip_matches = round_trip_matches and product == linalg.identity(6)
    rep_matches = poinc.elements == poincare_rep_explicit().elements
    hermitian = all(weyl.is_hermitian(e) for e in poinc.elements)
    return PoincareVerification(table_matches, round_trip_matches, rep_matches, hermitian)


def casimirs(basis: lie.LieBasis = None, shift_p0: Scalar = None):
    """Quadratic Casimirs C = P0^2 - P1^2 - P2^2 and W = -J P0 + K1 P2 - K2 P1.

    shift_p0 adds a multiple of the identity to P0 first (negative control).
    """
    basis = basis or to_poincare()
    if shift_p0 is not None:
        elements = list(basis.elements)
        idx = basis.names.index("P0")
        elements[idx] = elements[idx] + weyl.one().scale(shift_p0)
        basis = lie.LieBasis(basis.names, tuple(elements))
    c = lie.casimir_eval(
        (
            (ONE, ("P0", "P0")),
            (-ONE, ("P1", "P1")),
            (-ONE, ("P2", "P2")),
        ),
        basis,
    )
    w = lie.casimir_eval(
        (
            (-ONE, ("J", "P0")),
            (ONE, ("K1", "P2")),
            (-ONE, ("K2", "P1")),
        ),
        basis,
    )
    return c, w


def casimirs_vanish() -> bool:
    c, w = casimirs()
    return c.is_zero() and w.is_zero()


def light_speed_rescaled_rows(c_name: str = "c_light"):
    """Rows of the substitution P_i -> P_i / c, K_i -> K_i / c for inspection.

    The rescaling is documented only: the generators of the six-dimensional
    algebra are inhomogeneous combinations of the rescaled basis, so no large-c
    limit is claimed or taken.
    """
    c = scalar.symbol(c_name)
    rows = []
    for i, name in enumerate(POINCARE_NAMES):
        scale = ONE / c if name in ("K1", "K2", "P1", "P2") else ONE
        rows.append(tuple(scale if i == j else ZERO for j in range(6)))
    return tuple(rows)
